#include "crlab/surface_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "crlab/errors.hpp"

namespace crlab {
namespace {

using nlohmann::json;

class Reader {
 public:
  Reader(const json& doc, std::set<std::string> allowed) : doc_(doc) {
    allowed.insert({"schema", "variant"});
    for (auto it = doc.begin(); it != doc.end(); ++it)
      if (!allowed.count(it.key())) throw InputError("unknown key '" + it.key() + "'");
  }
  bool has(const char* k) const { return doc_.contains(k); }
  double num(const char* k) const {
    if (!has(k)) throw InputError(std::string("missing key '") + k + "'");
    const json& v = doc_.at(k);
    if (!v.is_number()) throw InputError(std::string("'") + k + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw InputError(std::string("'") + k + "' must be finite");
    return x;
  }
  double num(const char* k, double fallback) const { return has(k) ? num(k) : fallback; }
  const json& at(const char* k) const {
    if (!has(k)) throw InputError(std::string("missing key '") + k + "'");
    return doc_.at(k);
  }

 private:
  const json& doc_;
};

std::array<double, 2> pair_of(const json& v, const char* what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw InputError(std::string(what) + " must be a pair of numbers");
  return {v[0].get<double>(), v[1].get<double>()};
}

ParamDomain domain_of(const json& v) {
  if (!v.is_object()) throw InputError("domain must be an object");
  for (auto it = v.begin(); it != v.end(); ++it)
    if (it.key() != "lo" && it.key() != "hi")
      throw InputError("unknown domain key '" + it.key() + "'");
  if (!v.contains("lo") || !v.contains("hi")) throw InputError("domain needs lo and hi");
  ParamDomain d;
  d.lo = pair_of(v["lo"], "domain.lo");
  d.hi = pair_of(v["hi"], "domain.hi");
  if (!(d.hi[0] > d.lo[0] && d.hi[1] > d.lo[1])) throw InputError("domain needs lo < hi");
  return d;
}

SurfacePtr build(const std::string& variant, const json& doc) {
  if (variant == "shifted_sphere") {
    Reader r(doc, {"rho0", "lambda"});
    const double rho0 = r.num("rho0", 1.0);
    return make_shifted_sphere(rho0, r.num("lambda", 0.5 * std::sqrt(3.0) * rho0 * rho0));
  }
  if (variant == "heis_sphere") {
    Reader r(doc, {"rho0"});
    return make_heis_sphere(r.num("rho0", 1.0));
  }
  if (variant == "dilation_cone") {
    Reader r(doc, {"c", "r_lo", "r_hi"});
    return make_dilation_cone(r.num("c"), r.num("r_lo", 0.5), r.num("r_hi", 2.0));
  }
  if (variant == "cylinder") {
    Reader r(doc, {"radius", "period"});
    return std::make_shared<Cylinder>(r.num("radius", 1.0), r.num("period", 1.0));
  }
  if (variant == "vertical_plane") {
    Reader r(doc, {"a", "b", "c", "half_width"});
    return std::make_shared<VerticalPlane>(r.num("a"), r.num("b"), r.num("c", 0.0),
                                           r.num("half_width", 1.0));
  }
  if (variant == "foliated_graph") {
    Reader r(doc, {"sign", "c", "domain"});
    const json& s = r.at("sign");
    if (!s.is_number_integer()) throw InputError("'sign' must be 1 or -1");
    return std::make_shared<FoliatedGraph>(s.get<int>(), r.num("c", 0.0),
                                           domain_of(r.at("domain")));
  }
  if (variant == "polynomial_graph") {
    Reader r(doc, {"terms", "domain"});
    const json& t = r.at("terms");
    if (!t.is_array() || t.empty()) throw InputError("'terms' must be a nonempty array");
    std::vector<Monomial> terms;
    for (const auto& m : t) {
      if (!m.is_array() || m.size() != 3 || !m[0].is_number_integer() ||
          !m[1].is_number_integer() || !m[2].is_number())
        throw InputError("each term is [i, j, coeff] with integer powers");
      const int i = m[0].get<int>(), j = m[1].get<int>();
      if (i < 0 || j < 0) throw InputError("monomial powers must be >= 0");
      terms.push_back({i, j, m[2].get<double>()});
    }
    return make_polynomial_graph(std::move(terms), domain_of(r.at("domain")));
  }
  if (variant == "torus_s3") {
    Reader r(doc, {"rho1", "rho1_squared"});
    if (r.has("rho1") == r.has("rho1_squared"))
      throw InputError("torus_s3 needs exactly one of rho1, rho1_squared");
    const double rho1 = r.has("rho1") ? r.num("rho1") : std::sqrt(r.num("rho1_squared"));
    return std::make_shared<TorusS3>(rho1);
  }
  throw InputError("unknown variant '" + variant + "'");
}

}  // namespace

SurfacePtr surface_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("surface document must be a JSON object");
  if (!doc.contains("schema")) throw InputError("missing key 'schema'");
  if (!doc["schema"].is_number_integer() || doc["schema"].get<int>() != 1)
    throw InputError("unsupported schema (expected 1)");
  if (!doc.contains("variant") || !doc["variant"].is_string())
    throw InputError("missing string key 'variant'");
  try {
    return build(doc["variant"].get<std::string>(), doc);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  } catch (const ChartDomainError& e) {
    throw InputError(e.what());
  }
}

json read_json_arg(const std::string& arg) {
  std::string text = arg;
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || arg[first] != '{') {
    std::ifstream in(arg);
    if (!in) throw InputError("cannot open '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

SurfacePtr load_surface(const std::string& arg) { return surface_from_json(read_json_arg(arg)); }

}  // namespace crlab
