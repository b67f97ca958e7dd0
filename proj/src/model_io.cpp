#include "eqmorse/model_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace eqmorse {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ModelError(path + ": " + what);
}

long long require_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

Character parse_term_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list of [weight, multiplicity] pairs");
  std::vector<std::pair<Weight, Rational>> terms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string epath = path + "[" + std::to_string(i) + "]";
    const auto& e = j[i];
    if (!e.is_array() || e.size() != 2) fail(epath, "expected a [weight, multiplicity] pair");
    const long long w = require_integer(e[0], epath + "[0]");
    const long long mult = require_integer(e[1], epath + "[1]");
    if (mult < 0) fail(epath, "negative multiplicity");
    terms.emplace_back(w, Rational(static_cast<long>(mult)));
  }
  return Character::from_terms(terms);
}

}  // namespace

ParsedModel parse_model_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ModelError("top level: expected an object");
  if (!j.contains("dim")) throw ModelError("missing field 'dim'");
  if (!j.contains("fixed_points")) throw ModelError("missing field 'fixed_points'");

  ParsedModel out;
  const long long dim = require_integer(j["dim"], "dim");
  if (dim < 0) throw ModelError("dim: must be nonnegative");
  out.model.dim = static_cast<int>(dim);

  const auto& fps = j["fixed_points"];
  if (!fps.is_array() || fps.empty()) throw ModelError("fixed_points: expected a nonempty list");
  for (std::size_t i = 0; i < fps.size(); ++i) {
    const std::string path = "fixed_points[" + std::to_string(i) + "]";
    const auto& f = fps[i];
    if (!f.is_object()) fail(path, "expected an object");
    FixedPoint p;
    if (!f.contains("name") || !f["name"].is_string()) fail(path, "missing string field 'name'");
    p.name = f["name"].get<std::string>();
    for (const auto& other : out.model.points)
      if (other.name == p.name) fail(path + ".name", "duplicate fixed-point name '" + p.name + "'");
    if (!f.contains("weights") || !f["weights"].is_array())
      fail(path, "missing list field 'weights'");
    const auto& ws = f["weights"];
    if (static_cast<long long>(ws.size()) != dim)
      fail(path + ".weights", "expected exactly " + std::to_string(dim) + " weights");
    for (std::size_t k = 0; k < ws.size(); ++k) {
      const std::string wpath = path + ".weights[" + std::to_string(k) + "]";
      const long long w = require_integer(ws[k], wpath);
      if (w == 0) fail(wpath, "zero isotropy weight");
      if (w < -1000000 || w > 1000000) fail(wpath, "weight out of range");
      p.weights.push_back(static_cast<int>(w));
    }
    if (!f.contains("fiber")) fail(path, "missing list field 'fiber'");
    p.fiber = parse_term_list(f["fiber"], path + ".fiber");
    out.model.points.push_back(std::move(p));
  }

  if (j.contains("cohomology")) {
    const auto& coh = j["cohomology"];
    if (!coh.is_object()) throw ModelError("cohomology: expected an object keyed by degree");
    CohomologyData data;
    data.by_degree.assign(static_cast<std::size_t>(dim) + 1, Character::zero());
    for (const auto& [key, value] : coh.items()) {
      const std::string path = "cohomology[\"" + key + "\"]";
      std::size_t pos = 0;
      long long degree = -1;
      try {
        degree = std::stoll(key, &pos);
      } catch (...) {
        fail(path, "degree key must be an integer");
      }
      if (pos != key.size()) fail(path, "degree key must be an integer");
      if (degree < 0 || degree > dim) fail(path, "degree out of range 0.." + std::to_string(dim));
      data.by_degree[static_cast<std::size_t>(degree)] = parse_term_list(value, path);
    }
    out.cohomology = std::move(data);
  }

  out.model.validate();
  return out;
}

ParsedModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_text(buf.str());
}

namespace {

ordered_json term_list_json(const Character& c) {
  ordered_json list = ordered_json::array();
  if (c.support_empty()) return list;
  for (Weight m = c.support_lo(); m <= c.support_hi(); ++m) {
    const Rational v = c.at(m);
    if (sgn(v) == 0) continue;
    list.push_back({m, v.get_num().get_si()});
  }
  return list;
}

}  // namespace

std::string serialize_model(const ManifoldModel& m, const CohomologyData* coh) {
  ordered_json j;
  j["dim"] = m.dim;
  j["fixed_points"] = ordered_json::array();
  for (const auto& p : m.points) {
    ordered_json f;
    f["name"] = p.name;
    f["weights"] = p.weights;
    f["fiber"] = term_list_json(p.fiber);
    j["fixed_points"].push_back(std::move(f));
  }
  if (coh != nullptr) {
    ordered_json c;
    for (std::size_t k = 0; k < coh->by_degree.size(); ++k)
      c[std::to_string(k)] = term_list_json(coh->by_degree[k]);
    j["cohomology"] = std::move(c);
  }
  return j.dump(2) + "\n";
}

std::string rational_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string float_string(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

namespace {

template <class Coeff>
std::string window_string_impl(const CharacterT<Coeff>& c) {
  std::string lo, hi;
  if (c.window_empty()) return "[empty]";
  if (c.window_lo() == kWeightNegInf)
    lo = c.support_empty() ? "-inf" : std::to_string(c.support_lo());
  else
    lo = std::to_string(c.window_lo());
  if (c.window_hi() == kWeightPosInf)
    hi = c.support_empty() ? "inf" : std::to_string(c.support_hi());
  else
    hi = std::to_string(c.window_hi());
  return "[" + lo + ", " + hi + "]";
}

std::string coeff_string(const Rational& r) { return rational_string(r); }
std::string coeff_string(double v) { return float_string(v); }

template <class Coeff>
void print_character_impl(std::ostream& os, const CharacterT<Coeff>& c,
                          const std::string& indent) {
  if (c.support_empty()) {
    os << indent << "(all zero)\n";
    return;
  }
  for (Weight m = c.support_lo(); m <= c.support_hi(); ++m) {
    const Coeff v = c.at(m);
    if (coeff_is_zero(v)) continue;
    os << indent << "(" << m << ", " << coeff_string(v) << ")\n";
  }
}

template <class Coeff>
void print_tpoly_impl(std::ostream& os, const TPolyT<Coeff>& p, const std::string& indent) {
  for (int k = 0; k <= p.degree_bound(); ++k) {
    os << "t^" << k << "  window " << window_string_impl(p[k]) << "\n";
    print_character_impl(os, p[k], indent);
  }
}

}  // namespace

std::string window_string(const Character& c) { return window_string_impl(c); }
std::string window_string(const FloatCharacter& c) { return window_string_impl(c); }

void print_character(std::ostream& os, const Character& c, const std::string& indent) {
  print_character_impl(os, c, indent);
}
void print_character(std::ostream& os, const FloatCharacter& c, const std::string& indent) {
  print_character_impl(os, c, indent);
}

void print_tpoly(std::ostream& os, const TPoly& p, const std::string& indent) {
  print_tpoly_impl(os, p, indent);
}
void print_tpoly(std::ostream& os, const FloatTPoly& p, const std::string& indent) {
  print_tpoly_impl(os, p, indent);
}

}  // namespace eqmorse
