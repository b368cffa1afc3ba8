#include "cilab/family_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

#include <json.hpp>

#include "cilab/errors.hpp"

namespace cilab {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) { throw ParseError(where, what); }

// Runs `fn` and rewrites any domain or usage failure as a parse error at `where`.
template <class Fn>
auto at(const std::string& where, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw;
  } catch (const Error& e) {
    throw ParseError(where, e.what());
  } catch (const json::exception& e) {
    throw ParseError(where, e.what());
  }
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(where, "missing field '" + key + "'");
  return *it;
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  if (!obj.is_object()) schema(where, "expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) schema(where, "unknown field '" + it.key() + "'");
}

std::optional<Rational> small_fraction(double v, std::int64_t max_den, double tol = 0.0) {
  for (std::int64_t d = 1; d <= max_den; ++d) {
    double n = std::round(v * static_cast<double>(d));
    if (std::abs(n) > 1e12) return std::nullopt;
    Rational r(static_cast<std::int64_t>(n), d);
    if (std::abs(r.to_double() - v) <= tol * std::max(1.0, std::abs(v))) return r;
  }
  return std::nullopt;
}

Exponent parse_exponent_json(const json& j, const std::string& where) {
  return at(where, [&] {
    if (j.is_string()) return Exponent::parse(j.get<std::string>());
    if (j.is_number()) return Exponent::finite(j.get<double>());
    schema(where, "exponent must be a string or a number");
  });
}

RealVector parse_reals(const json& j, const std::string& where) {
  if (!j.is_array()) schema(where, "expected an array of numbers");
  RealVector out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) schema(where + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

json space_json(const SpaceSpec& s) {
  json j;
  j["p"] = format_exponent(s.p);
  if (s.weight) j["weight"] = s.weight->entries();
  return j;
}

SpaceSpec parse_space(const json& j, const std::string& where) {
  only_keys(j, {"p", "weight"}, where);
  SpaceSpec s = SpaceSpec::lp(parse_exponent_json(field(j, "p", where), where + ".p"));
  if (j.contains("weight")) s.weight = at(where + ".weight", [&] { return Weight(parse_reals(j["weight"], where + ".weight")); });
  return s;
}

json cuts_json(const ArcPartition& p) {
  json j = json::array();
  for (double c : p.cuts()) {
    std::string s = format_angle(c);
    if (s == "0" || s.find("pi") != std::string::npos) j.push_back(s);
    else j.push_back(c);
  }
  return j;
}

ArcPartition parse_cuts(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) schema(where, "expected a nonempty array of cut angles");
  std::vector<double> cuts;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string w = where + "[" + std::to_string(i) + "]";
    if (j[i].is_string()) cuts.push_back(at(w, [&] { return parse_angle(j[i].get<std::string>()); }));
    else if (j[i].is_number()) cuts.push_back(j[i].get<double>());
    else schema(w, "cut angle must be a string or a number");
  }
  return at(where, [&] { return ArcPartition(cuts); });
}

json quad_json(const QuadratureConfig& q) {
  return json{{"nodes_per_arc", q.nodes_per_arc},
              {"scheme", q.scheme == QuadratureScheme::GaussLegendre ? "gauss-legendre" : "trapezoid"}};
}

QuadratureConfig parse_quad(const json& obj, const std::string& where) {
  QuadratureConfig q;
  if (!obj.contains("quadrature")) return q;
  const json& j = obj["quadrature"];
  std::string w = where + ".quadrature";
  only_keys(j, {"nodes_per_arc", "scheme"}, w);
  if (j.contains("nodes_per_arc")) {
    if (!j["nodes_per_arc"].is_number_integer()) schema(w + ".nodes_per_arc", "expected an integer");
    q.nodes_per_arc = j["nodes_per_arc"].get<int>();
  }
  if (j.contains("scheme")) {
    std::string s = j["scheme"].is_string() ? j["scheme"].get<std::string>() : "";
    if (s == "gauss-legendre") q.scheme = QuadratureScheme::GaussLegendre;
    else if (s == "trapezoid") q.scheme = QuadratureScheme::Trapezoid;
    else schema(w + ".scheme", "expected \"gauss-legendre\" or \"trapezoid\"");
  }
  at(w, [&] { q.validate(); });
  return q;
}

json poly_json(const Polynomial& p) {
  json j = json::array();
  for (const auto& c : p.coeffs()) j.push_back(c.to_string());
  if (p.is_zero()) j.push_back("0");
  return j;
}

Polynomial parse_poly(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) schema(where, "expected a nonempty array of rational coefficients");
  std::vector<Rational> c;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string w = where + "[" + std::to_string(i) + "]";
    if (j[i].is_string()) c.push_back(at(w, [&] { return Rational::parse(j[i].get<std::string>()); }));
    else if (j[i].is_number_integer()) c.push_back(Rational(j[i].get<std::int64_t>()));
    else schema(w, "coefficient must be a rational string or an integer");
  }
  return Polynomial(std::move(c));
}

json diag_json(const DiagonalRule& d) {
  switch (d.kind) {
    case DiagonalRule::Kind::Log1p: return "log1p";
    case DiagonalRule::Kind::Linear: return "linear";
    case DiagonalRule::Kind::Constant: return json{{"constant", d.constant}};
    case DiagonalRule::Kind::Explicit: return d.explicit_entries;
  }
  return nullptr;
}

DiagonalRule parse_diag(const json& j, const std::string& where) {
  DiagonalRule d;
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "log1p") d.kind = DiagonalRule::Kind::Log1p;
    else if (s == "linear") d.kind = DiagonalRule::Kind::Linear;
    else schema(where, "unknown diagonal rule '" + s + "'");
  } else if (j.is_object()) {
    only_keys(j, {"constant"}, where);
    const json& c = field(j, "constant", where);
    if (!c.is_number()) schema(where + ".constant", "expected a number");
    d.kind = DiagonalRule::Kind::Constant;
    d.constant = c.get<double>();
  } else {
    d.kind = DiagonalRule::Kind::Explicit;
    d.explicit_entries = parse_reals(j, where);
  }
  return d;
}

}  // namespace

double parse_angle(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (c != ' ') s.push_back(c);
  auto pi = s.find("pi");
  if (pi == std::string::npos) {
    Rational r = Rational::parse(s);
    return r.to_double();
  }
  std::string coef = s.substr(0, pi), rest = s.substr(pi + 2);
  if (coef.empty() || coef == "+") coef = "1";
  else if (coef == "-") coef = "-1";
  else if (coef.back() == '*') coef.pop_back();
  Rational r = Rational::parse(coef);
  if (!rest.empty()) {
    if (rest[0] != '/') throw ParseError("angle", "malformed angle '" + raw + "'");
    r = r / Rational::parse(rest.substr(1));
  }
  return r.to_double() * kPi;
}

std::string format_angle(double t) {
  if (t == 0.0) return "0";
  // A few ulps of slack so that e.g. 2*pi/3 computed in floating point still prints exactly.
  if (auto r = small_fraction(t / kPi, 360, 4e-16); r && std::abs(r->to_double() * kPi - t) <= 8e-16 * std::abs(t)) {
    std::string num = r->num() == 1 ? "" : r->num() == -1 ? "-" : std::to_string(r->num());
    std::string out = num + "pi";
    if (r->den() != 1) out += "/" + std::to_string(r->den());
    return out;
  }
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, t);
    if (std::strtod(buf, nullptr) == t) break;
  }
  return buf;
}

std::string format_exponent(Exponent p) {
  if (p.is_infinite()) return "inf";
  if (auto r = small_fraction(p.value(), 64); r && r->den() != 1) return r->to_string();
  return p.to_string();
}

std::string serialize_family(const FamilySpec& family) {
  json j;
  j["kind"] = family.kind_name();
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, family::ArcsWeighted>) {
          j["base"] = space_json(f.base);
          j["partition"] = cuts_json(f.partition);
          json w = json::array();
          for (const auto& wt : f.weights) w.push_back(wt.entries());
          j["weights"] = w;
          j["quadrature"] = quad_json(family.quadrature());
        } else if constexpr (std::is_same_v<T, family::ArcsLp>) {
          j["partition"] = cuts_json(f.partition);
          json e = json::array();
          for (const auto& p : f.exponents) e.push_back(format_exponent(p));
          j["exponents"] = e;
          j["quadrature"] = quad_json(family.quadrature());
        } else if constexpr (std::is_same_v<T, family::VariableExponent>) {
          j["alpha"] = json{{"numerator", poly_json(f.alpha.numerator())},
                            {"denominator", poly_json(f.alpha.denominator())}};
          j["imag_shift"] = f.imag_shift;
          if (f.p_max) j["p_max"] = *f.p_max;
        } else if constexpr (std::is_same_v<T, family::FlatDiagonal>) {
          j["power"] = f.power;
          j["diag"] = diag_json(f.diag);
        } else {
          j["pair"] = json{{"x0", space_json(f.pair.x0)}, {"x1", space_json(f.pair.x1)}, {"dim", f.pair.dim}};
          j["boundary_alpha"] = json{{"partition", cuts_json(f.boundary_alpha.partition)},
                                     {"values", f.boundary_alpha.values}};
          j["quadrature"] = quad_json(family.quadrature());
        }
      },
      family.kind());
  return j.dump(2) + "\n";
}

FamilySpec parse_family(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("family", std::string("malformed JSON: ") + e.what());
  }
  const std::string w = "family";
  if (!j.is_object()) schema(w, "expected an object");
  const json& kind_j = field(j, "kind", w);
  if (!kind_j.is_string()) schema(w + ".kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();

  if (kind == "arcs-weighted") {
    only_keys(j, {"kind", "base", "partition", "weights", "quadrature"}, w);
    SpaceSpec base = parse_space(field(j, "base", w), w + ".base");
    ArcPartition part = parse_cuts(field(j, "partition", w), w + ".partition");
    const json& wj = field(j, "weights", w);
    if (!wj.is_array()) schema(w + ".weights", "expected an array of weight vectors");
    std::vector<Weight> weights;
    for (std::size_t i = 0; i < wj.size(); ++i) {
      std::string wi = w + ".weights[" + std::to_string(i) + "]";
      weights.push_back(at(wi, [&] { return Weight(parse_reals(wj[i], wi)); }));
    }
    QuadratureConfig q = parse_quad(j, w);
    return at(w, [&] { return FamilySpec::arcs_weighted(base, part, weights, q); });
  }
  if (kind == "arcs-lp") {
    only_keys(j, {"kind", "partition", "exponents", "quadrature"}, w);
    ArcPartition part = parse_cuts(field(j, "partition", w), w + ".partition");
    const json& ej = field(j, "exponents", w);
    if (!ej.is_array()) schema(w + ".exponents", "expected an array of exponents");
    std::vector<Exponent> ex;
    for (std::size_t i = 0; i < ej.size(); ++i)
      ex.push_back(parse_exponent_json(ej[i], w + ".exponents[" + std::to_string(i) + "]"));
    QuadratureConfig q = parse_quad(j, w);
    return at(w, [&] { return FamilySpec::arcs_lp(part, ex, q); });
  }
  if (kind == "variable-exponent") {
    only_keys(j, {"kind", "alpha", "imag_shift", "p_max"}, w);
    const json& aj = field(j, "alpha", w);
    RationalFunction alpha = [&] {
      if (aj.is_string()) return at(w + ".alpha", [&] { return RationalFunction::parse(aj.get<std::string>()); });
      only_keys(aj, {"numerator", "denominator"}, w + ".alpha");
      Polynomial num = parse_poly(field(aj, "numerator", w + ".alpha"), w + ".alpha.numerator");
      Polynomial den = aj.contains("denominator") ? parse_poly(aj["denominator"], w + ".alpha.denominator")
                                                   : Polynomial({Rational(1)});
      return at(w + ".alpha", [&] { return RationalFunction(num, den); });
    }();
    double shift = 0.0;
    if (j.contains("imag_shift")) {
      if (!j["imag_shift"].is_number()) schema(w + ".imag_shift", "expected a number");
      shift = j["imag_shift"].get<double>();
    }
    std::optional<double> p_max;
    if (j.contains("p_max")) {
      Exponent pm = parse_exponent_json(j["p_max"], w + ".p_max");
      if (!pm.is_infinite()) p_max = pm.value();
    }
    return at(w, [&] { return FamilySpec::variable_exponent(alpha, p_max, shift); });
  }
  if (kind == "flat-diagonal") {
    only_keys(j, {"kind", "power", "diag"}, w);
    const json& pj = field(j, "power", w);
    if (!pj.is_number_integer()) schema(w + ".power", "expected a positive integer");
    DiagonalRule d = parse_diag(field(j, "diag", w), w + ".diag");
    return at(w, [&] { return FamilySpec::flat_diagonal(pj.get<int>(), d); });
  }
  if (kind == "reiterated-pair") {
    only_keys(j, {"kind", "pair", "boundary_alpha", "quadrature"}, w);
    const json& pj = field(j, "pair", w);
    only_keys(pj, {"x0", "x1", "dim"}, w + ".pair");
    SpaceSpec x0 = parse_space(field(pj, "x0", w + ".pair"), w + ".pair.x0");
    SpaceSpec x1 = parse_space(field(pj, "x1", w + ".pair"), w + ".pair.x1");
    const json& dj = field(pj, "dim", w + ".pair");
    if (!dj.is_number_unsigned()) schema(w + ".pair.dim", "expected a positive integer");
    PairScale pair = at(w + ".pair", [&] { return PairScale(x0, x1, dj.get<std::size_t>()); });
    const json& bj = field(j, "boundary_alpha", w);
    only_keys(bj, {"partition", "values"}, w + ".boundary_alpha");
    ArcPartition part = parse_cuts(field(bj, "partition", w + ".boundary_alpha"), w + ".boundary_alpha.partition");
    RealVector vals = parse_reals(field(bj, "values", w + ".boundary_alpha"), w + ".boundary_alpha.values");
    PiecewiseConstant pc = at(w + ".boundary_alpha", [&] { return PiecewiseConstant(part, vals); });
    QuadratureConfig q = parse_quad(j, w);
    return at(w, [&] { return FamilySpec::reiterated_pair(pair, pc, q); });
  }
  schema(w + ".kind", "unknown family kind '" + kind + "'");
}

}  // namespace cilab
