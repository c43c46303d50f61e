#pragma once
// Registry of closed-form oracles replayed by `crlab verify`.

#include <functional>
#include <string>
#include <vector>

namespace crlab {

struct Oracle {
  std::string name;
  std::string source;  // where the closed form comes from
  double expected;
  double tol;
  bool relative;
  std::function<double()> compute;
};

struct OracleResult {
  std::string name, source;
  double value = 0, expected = 0, error = 0, tol = 0;
  bool relative = false;
  bool pass = false;
  std::string failure;  // exception text when compute threw
  double seconds = 0;
};

const std::vector<Oracle>& oracles();
// The oracle named `filter`, else those whose name contains it (all when empty).
std::vector<OracleResult> run_oracles(const std::string& filter = "");

}  // namespace crlab
