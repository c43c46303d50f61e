// crlab: command-line front end.  Results go to stdout as JSON or CSV,
// diagnostics to stderr as one JSON object per line.
//
// Exit status: 0 success, 1 input error, 2 numerical failure (including
// nonconvergence under --strict and failed verify oracles).

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "crlab/errors.hpp"
#include "crlab/surface_io.hpp"
#include "crlab/varcheck.hpp"
#include "crlab/verify.hpp"
#include "crlab/yamabe.hpp"

using nlohmann::json;
using namespace crlab;

namespace {

std::string num17(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// json::dump with every floating-point number printed to 17 digits.
void emit(std::ostream& os, const json& j, int indent, int level = 0) {
  const std::string pad(indent * (level + 1), ' '), end_pad(indent * level, ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{" << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << "," << nl;
        first = false;
        os << pad << json(it.key()).dump() << (indent > 0 ? ": " : ":");
        emit(os, it.value(), indent, level + 1);
      }
      os << nl << end_pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[" << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << "," << nl;
        os << pad;
        emit(os, j[i], indent, level + 1);
      }
      os << nl << end_pad << "]";
      return;
    }
    case json::value_t::number_float: os << num17(j.get<double>()); return;
    default: os << j.dump(); return;
  }
}

void print_json(const json& j) {
  emit(std::cout, j, 2);
  std::cout << "\n";
}

void diagnostic(const json& j) {
  emit(std::cerr, j, 0);
  std::cerr << "\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void csv_row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i)
    std::cout << (i ? "," : "") << csv_field(fields[i]);
  std::cout << "\r\n";
}

json report_json(const EnergyReport& r) {
  return {{"value", r.value},       {"est_error", r.est_error}, {"cutoff_radius", r.cutoff_radius},
          {"converged", r.converged}, {"levels", r.levels}};
}

json jet_json(const InvariantJet& j) {
  json o = {{"params", j.params},
            {"point", j.point},
            {"depth", j.depth},
            {"area_density", j.area_density},
            {"alpha", j.alpha},
            {"H", j.H},
            {"W", j.W},
            {"e1_alpha", j.e1_alpha},
            {"V_alpha", j.V_alpha},
            {"Hcr", j.hcr}};
  if (j.depth >= 2) {
    o["e1_H"] = j.e1_H;
    o["V_H"] = j.V_H;
    o["e1e1_alpha"] = j.e1e1_alpha;
    o["e1_Hcr"] = j.e1_Hcr;
    o["V_Hcr"] = j.V_Hcr;
    o["h111"] = j.h111;
    o["h110"] = j.h110;
    o["h100"] = j.h100;
    o["frak_f"] = j.frak_f;
    o["ode_residual"] = ode_residual(j);
  }
  if (j.depth >= 3) {
    o["e1e1_H"] = j.e1e1_H;
    o["e1V_H"] = j.e1V_H;
    o["e1e1_Hcr"] = j.e1e1_Hcr;
  }
  return o;
}

struct Quad {
  int n = 64;
  int levels = 1;
  double cutoff = 0.0;
  bool no_richardson = false;
  void add(CLI::App* c) {
    c->add_option("--n", n, "base grid points per chart direction")->capture_default_str();
    c->add_option("--levels", levels, "grid doublings (1-3)")->capture_default_str();
    c->add_option("--cutoff", cutoff, "excision radius around singular points")
        ->capture_default_str();
    c->add_flag("--no-richardson", no_richardson, "plain rule on the finest grid");
  }
  QuadratureSpec spec() const {
    QuadratureSpec q{n, n, cutoff, levels};
    q.richardson = !no_richardson;
    return q;
  }
};

int strict_status(bool strict, const EnergyReport& r, const std::string& what) {
  if (r.converged) return 0;
  diagnostic({{"warning", "nonconvergence"}, {"quantity", what}, {"est_error", r.est_error}});
  return strict ? 2 : 0;
}

json fit_json(const RenormFit& f) {
  return {{"c0_fit", f.c0_fit},
          {"c1_fit", f.c1_fit},
          {"c2_fit", f.c2_fit},
          {"L_fit", f.L_fit},
          {"V0_fit", f.V0_fit},
          {"residual_norm", f.residual_norm},
          {"within_tol", f.within_tol},
          {"condition", f.condition},
          {"remainder_terms", f.remainder_terms},
          {"eps_range", {f.eps_range.first, f.eps_range.second}}};
}

std::vector<double> default_eps() {
  std::vector<double> eps;
  for (int i = 0; i < 12; ++i) eps.push_back(2e-2 * std::pow(3e-4 / 2e-2, i / 11.0));
  return eps;
}

TestFunction test_function(const std::vector<double>& v, const char* what) {
  if (v.empty()) return zero_function();
  if (v.size() != 5)
    throw InputError(std::string(what) + " takes cu,cv,wu,wv,amp");
  return bump({v[0], v[1]}, v[2], v[3], v[4]);
}

SurfaceGenerator family_generator(const std::string& fam, double rho0) {
  if (fam == "dilation_cone") return [](double c) { return make_dilation_cone(c); };
  if (fam == "dilation_cone_c2")
    return [](double s) { return make_dilation_cone(std::sqrt(s)); };
  if (fam == "shifted_sphere")
    return [rho0](double l) { return make_shifted_sphere(rho0, l * rho0 * rho0); };
  if (fam == "torus_s3") return [](double r) { return std::make_shared<TorusS3>(r); };
  throw InputError("unknown family '" + fam + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CR-invariant surface energies, residuals and Yamabe expansions"};
  app.require_subcommand(1);
  bool strict = false;
  app.add_flag("--strict", strict, "treat nonconvergence as failure (exit 2)");

  std::string surface;
  std::vector<double> at;
  std::string which = "e2", output = "json";
  int depth = 3;
  Quad quad;

  auto* inv = app.add_subcommand("invariants", "invariant jet and densities at a point");
  inv->add_option("surface", surface, "surface JSON (inline or path)")->required();
  inv->add_option("--at", at, "chart parameters u,v")->delimiter(',')->expected(2)->required();
  inv->add_option("--depth", depth, "jet depth 1-3")->capture_default_str();

  auto* en = app.add_subcommand("energy", "integrate dA1, dA2 or the area");
  en->add_option("surface", surface)->required();
  en->add_option("--which", which)->check(CLI::IsMember({"e1", "e2", "area"}))
      ->capture_default_str();
  quad.add(en);

  auto* res = app.add_subcommand("residual", "Euler-Lagrange residual at a point");
  res->add_option("surface", surface)->required();
  res->add_option("--which", which)->check(CLI::IsMember({"e1", "e2"}))->capture_default_str();
  res->add_option("--at", at)->delimiter(',')->expected(2)->required();

  std::vector<int> grid{8, 8};
  bool with_fit = false;
  auto* ya = app.add_subcommand("yamabe", "formal-solution coefficient table");
  ya->add_option("surface", surface)->required();
  ya->add_option("--grid", grid, "table points n1,n2")->delimiter(',')->expected(2);
  ya->add_option("--output", output, "csv table (default) or json summary")
      ->check(CLI::IsMember({"csv", "json"}));
  ya->add_flag("--fit", with_fit, "include the direct volume fit in the summary");
  quad.add(ya);

  std::vector<double> eps;
  double rho_max = 0.05;
  int remainder = -1;
  auto* rn = app.add_subcommand("renorm", "renormalized-volume coefficients and volume fit");
  rn->add_option("surface", surface)->required();
  rn->add_option("--eps-list", eps, "decreasing eps values")->delimiter(',');
  rn->add_option("--rho-max", rho_max)->capture_default_str();
  rn->add_option("--remainder-terms", remainder, "0-3; default min(3, #eps - 6)");
  quad.add(rn);

  std::string family, target = "residual_e2";
  std::vector<double> range;
  std::vector<double> probe{0.37, 0.5};
  double rho0 = 1.0, tol = 1e-10;
  auto* sc = app.add_subcommand("scan", "scan a one-parameter family for critical parameters");
  sc->add_option("--family", family,
                 "dilation_cone | dilation_cone_c2 | shifted_sphere (lambda / rho0^2) | torus_s3")
      ->required();
  sc->add_option("--target", target, "e1 | e2 | residual_e1 | residual_e2 | hcr | sup_hcr")
      ->capture_default_str();
  sc->add_option("--grid", range, "lo,hi,count")->delimiter(',')->expected(3)->required();
  sc->add_option("--probe", probe, "fractional chart position")->delimiter(',')->expected(2);
  sc->add_option("--rho0", rho0)->capture_default_str();
  sc->add_option("--tol", tol)->capture_default_str();
  sc->add_option("--output", output)->check(CLI::IsMember({"csv", "json"}));
  quad.add(sc);

  std::vector<double> fv, gv, steps{1e-3};
  double tol_var = 1e-3;
  auto* vc = app.add_subcommand("variation-check", "finite-difference first variation");
  vc->add_option("surface", surface)->required();
  vc->add_option("--target", which)->check(CLI::IsMember({"e1", "e2", "L"}));
  vc->add_option("--f", fv, "bump cu,cv,wu,wv,amp for the e2 component")->delimiter(',');
  vc->add_option("--g", gv, "bump cu,cv,wu,wv,amp for the T component")->delimiter(',');
  vc->add_option("--steps", steps)->delimiter(',');
  vc->add_option("--tol-var", tol_var)->capture_default_str();
  quad.add(vc);

  std::string filter;
  auto* ve = app.add_subcommand("verify", "replay the closed-form oracles");
  ve->add_option("--filter", filter, "substring of oracle names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    diagnostic({{"error", "usage"}, {"message", e.what()}});
    std::cerr << app.help();
    return 1;
  }

  try {
    if (*inv) {
      const SurfacePtr s = load_surface(surface);
      if (depth < 1 || depth > 3) throw InputError("--depth must be 1, 2 or 3");
      const InvariantJet j = jet_at(*s, {at[0], at[1]}, depth);
      json o = jet_json(j);
      o["family"] = s->family();
      o["da1"] = da1_density(j);
      o["da2"] = da2_density(j);
      const HCoefficients h = h_coefficients(j);
      o["h11"] = h.h11;
      o["h10"] = h.h10;
      o["h00"] = h.h00;
      if (depth == 3) {
        const ELResiduals r = el_residuals(j);
        o["epsilon2"] = r.epsilon2;
        o["epsilon1"] = r.epsilon1_defined ? json(r.epsilon1) : json(nullptr);
        o["epsilon1_alt"] = r.epsilon1_defined ? json(r.epsilon1_alt) : json(nullptr);
      }
      print_json(o);
      return 0;
    }
    if (*en) {
      const SurfacePtr s = load_surface(surface);
      const QuadratureSpec q = quad.spec();
      const EnergyReport r = which == "e1"   ? energy_e1(*s, q)
                             : which == "e2" ? energy_e2(*s, q)
                                             : area(*s, q);
      json o = report_json(r);
      o["which"] = which;
      o["family"] = s->family();
      print_json(o);
      return strict_status(strict, r, which);
    }
    if (*res) {
      const SurfacePtr s = load_surface(surface);
      const InvariantJet j = jet_at(*s, {at[0], at[1]}, 3);
      json o = {{"which", which}, {"params", j.params}, {"Hcr", j.hcr}};
      if (which == "e2") {
        o["residual"] = el_residual_e2(j);
      } else {
        o["residual"] = el_residual_e1(j);
        o["residual_alt"] = el_residual_e1_alt(j);
      }
      print_json(o);
      return 0;
    }
    if (*ya) {
      const SurfacePtr s = load_surface(surface);
      if (ya->count("--output") == 0 || output == "csv") {
        csv_row({"u", "v", "v_coef", "w", "z", "l", "v1", "v2", "v3"});
        for (const auto& r : coefficient_table(*s, grid[0], grid[1], quad.cutoff))
          csv_row({num17(r.params[0]), num17(r.params[1]), num17(r.coeffs.v), num17(r.coeffs.w),
                   num17(r.coeffs.z), num17(r.coeffs.l), num17(r.dens.v1), num17(r.dens.v2),
                   num17(r.dens.v3)});
        return 0;
      }
      const QuadratureSpec q = quad.spec();
      const RenormCoefficients rc = renorm_coefficients(*s, q);
      const EnergyReport e2 = integrate(*s, da2_density, q, 1);
      json o = {{"family", s->family()}, {"c0", rc.c0}, {"c1", rc.c1}, {"c2", rc.c2},
                {"L", rc.L},             {"E2", e2.value}, {"est_error", rc.est_error}};
      o["fit"] = with_fit ? fit_json(direct_volume_fit(*s, default_eps())) : json(nullptr);
      print_json(o);
      return strict_status(strict, e2, "E2");
    }
    if (*rn) {
      const SurfacePtr s = load_surface(surface);
      FitSpec fs;
      fs.rho_max = rho_max;
      fs.remainder_terms = remainder;
      const RenormCoefficients rc = renorm_coefficients(*s, quad.spec());
      const RenormFit f = direct_volume_fit(*s, eps.empty() ? default_eps() : eps, fs);
      json o = {{"family", s->family()},
                {"closed_form", {{"c0", rc.c0}, {"c1", rc.c1}, {"c2", rc.c2}, {"L", rc.L}}},
                {"fit", fit_json(f)}};
      json rel;
      const double cf[4] = {rc.c0, rc.c1, rc.c2, rc.L};
      const double ft[4] = {f.c0_fit, f.c1_fit, f.c2_fit, f.L_fit};
      const char* names[4] = {"c0", "c1", "c2", "L"};
      for (int k = 0; k < 4; ++k)
        rel[names[k]] = cf[k] != 0.0 ? json(std::abs(ft[k] / cf[k] - 1.0)) : json(nullptr);
      o["relative_error"] = rel;
      print_json(o);
      return 0;
    }
    if (*sc) {
      if (!(range[2] >= 2) || range[2] != std::floor(range[2]))
        throw InputError("--grid count must be an integer >= 2");
      const int n = static_cast<int>(range[2]);
      std::vector<double> params;
      for (int i = 0; i < n; ++i) params.push_back(range[0] + (range[1] - range[0]) * i / (n - 1));
      ScanSpec sp;
      sp.target = parse_scan_target(target);
      sp.quadrature = quad.spec();
      sp.cutoff = quad.cutoff;
      sp.probe = {probe[0], probe[1]};
      sp.tol = tol;
      const FamilyScan r = scan_family(family_generator(family, rho0), params, sp);
      for (std::size_t i = 0; i < r.errors.size(); ++i)
        if (!r.errors[i].empty())
          diagnostic({{"warning", "evaluation_failed"}, {"param", r.params[i]},
                      {"message", r.errors[i]}});
      if (output == "csv") {
        csv_row({"param", "value"});
        for (std::size_t i = 0; i < r.params.size(); ++i)
          csv_row({num17(r.params[i]), num17(r.values[i])});
        return 0;
      }
      json crit = json::array();
      for (const auto& c : r.critical)
        crit.push_back({{"param", c.param}, {"value", c.value}, {"kind", c.kind},
                        {"bracket", {c.bracket_lo, c.bracket_hi}}});
      print_json({{"family", family}, {"target", to_string(sp.target)}, {"params", r.params},
                  {"values", r.values}, {"critical", crit}});
      return 0;
    }
    if (*vc) {
      const SurfacePtr s = load_surface(surface);
      VariationSpec vs;
      vs.target = parse_variation_target(vc->count("--target") ? which : "e2");
      vs.steps = steps;
      vs.quadrature = quad.spec();
      vs.tol_var = tol_var;
      const VariationCheck r =
          first_variation_check(*s, test_function(fv, "--f"), test_function(gv, "--g"), vs);
      print_json({{"fd_derivative", r.fd_derivative},
                  {"formula_derivative", r.formula_derivative},
                  {"step", r.step},
                  {"steps", r.steps},
                  {"fd", r.fd},
                  {"mismatch", r.mismatch},
                  {"ratios", r.ratios},
                  {"order_ok", r.order_ok},
                  {"passed", r.passed}});
      return r.passed ? 0 : 2;
    }
    if (*ve) {
      const auto results = run_oracles(filter);
      if (results.empty()) throw InputError("no oracle matches '" + filter + "'");
      json arr = json::array();
      bool all = true;
      for (const auto& r : results) {
        all = all && r.pass;
        json o = {{"name", r.name},   {"source", r.source}, {"value", r.value},
                  {"expected", r.expected}, {"error", r.error}, {"tol", r.tol},
                  {"relative", r.relative}, {"status", r.pass ? "PASS" : "FAIL"}};
        if (!r.failure.empty()) o["failure"] = r.failure;
        arr.push_back(o);
      }
      print_json({{"oracles", arr}, {"all_pass", all}});
      return all ? 0 : 2;
    }
  } catch (const InputError& e) {
    diagnostic({{"error", "input"}, {"message", e.what()}});
    return 1;
  } catch (const std::invalid_argument& e) {
    diagnostic({{"error", "input"}, {"message", e.what()}});
    return 1;
  } catch (const std::exception& e) {
    diagnostic({{"error", "numerical"}, {"message", e.what()}});
    return 2;
  }
  return 1;
}
