#include "bethepop/json_io.hpp"

#include "bethepop/error.hpp"

namespace bp {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::InvalidInput, msg); }

const json& require_array(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  return j;
}

FamilyKind family_from_string(const std::string& s) {
  if (s == "trig") return FamilyKind::Trig;
  if (s == "exp") return FamilyKind::Exp;
  if (s == "xxx") return FamilyKind::Xxx;
  bad("unknown family '" + s + "'");
}

std::vector<Rational> rational_list(const json& j, const char* what) {
  std::vector<Rational> out;
  for (const auto& e : require_array(j, what)) out.push_back(rational_from_json(e));
  return out;
}

}  // namespace

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  bad("expected a rational as a \"p/q\" string or an integer");
}

json to_json(const Rational& q) { return to_string(q); }

json to_json(const Poly& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_json(c));
  return out;
}

json to_json(const PolyTuple& t) {
  json out = json::array();
  for (const auto& y : t.ys) out.push_back(to_json(y));
  return out;
}

json to_json(const Weight& w) {
  json out = json::array();
  for (const auto& c : coords(w)) out.push_back(to_json(c));
  return out;
}

json to_json(const WeylWord& w) {
  json out = json::array();
  for (int l : w.letters) out.push_back(l + 1);
  return out;
}

json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

json to_json(const BetheConfig& c) {
  json out = json::array();
  for (const auto& col : c.colors) {
    json a = json::array();
    for (const auto& t : col) a.push_back(to_json(t));
    out.push_back(std::move(a));
  }
  return out;
}

json to_json(const Report& r) {
  json out = json::array();
  for (const auto& it : r.items) {
    json e = {{"name", it.name}, {"pass", it.pass}};
    if (!it.detail.empty()) e["detail"] = it.detail;
    out.push_back(std::move(e));
  }
  return out;
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0};
  if (j.is_string()) return {parse_rational(j.get<std::string>()).get_d(), 0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  bad("expected a number, a \"p/q\" string or [re, im]");
}

std::vector<int> int_list(const json& j) {
  std::vector<int> out;
  if (j.is_number_integer()) return {j.get<int>()};
  for (const auto& e : require_array(j, "integer list")) {
    const Rational q = rational_from_json(e);
    if (!is_integer(q)) bad("expected integers");
    out.push_back(static_cast<int>(to_long(q)));
  }
  return out;
}

Problem problem_from_json(const json& j) {
  if (!j.is_object()) bad("request must be a JSON object");
  RootSystem rs = [&] {
    if (j.contains("cartan")) {
      std::vector<std::vector<int>> a;
      for (const auto& row : require_array(j["cartan"], "cartan")) a.push_back(int_list(row));
      return RootSystem::from_cartan(a);
    }
    if (!j.contains("type")) bad("missing 'type' or 'cartan'");
    if (!j["type"].is_string()) bad("'type' must be a string");
    return RootSystem::parse(j["type"].get<std::string>());
  }();
  BetheFamily fam;
  if (j.contains("family")) {
    if (!j["family"].is_string()) bad("'family' must be a string");
    fam.kind = family_from_string(j["family"].get<std::string>());
  }
  if (fam.kind == FamilyKind::Xxx) fam.h = j.contains("h") ? rational_from_json(j["h"]) : Rational(1);

  std::vector<WeightVec> Lambda;
  std::vector<Rational> z;
  if (j.contains("Lambda")) {
    for (const auto& L : require_array(j["Lambda"], "Lambda")) {
      // sl2 shorthand: a bare integer per point
      if (L.is_number_integer() || L.is_string()) Lambda.push_back(WeightVec{{rational_from_json(L)}});
      else Lambda.push_back(WeightVec{rational_list(L, "Lambda entry")});
    }
    if (!j.contains("z")) bad("'Lambda' given without 'z'");
    z = rational_list(j["z"], "z");
  } else {
    WeightVec w{std::vector<Rational>(rs.rank(), 0)};
    w.m[0] = 1;
    Lambda.push_back(w);
    z = j.contains("z") ? rational_list(j["z"], "z") : std::vector<Rational>{1};
  }
  Problem p{rs, Lambda, z, fam};
  p.validate();
  return p;
}

json problem_to_json(const Problem& p) {
  json out;
  if (p.rs.is_finite()) {
    out["type"] = p.rs.name();
  } else {
    out["cartan"] = p.rs.cartan();
  }
  out["family"] = family_name(p.family.kind);
  if (p.family.kind == FamilyKind::Xxx) out["h"] = to_json(p.family.h);
  json L = json::array();
  for (const auto& w : p.Lambda) L.push_back(to_json(Weight(w)));
  out["Lambda"] = L;
  json z = json::array();
  for (const auto& q : p.z) z.push_back(to_json(q));
  out["z"] = z;
  return out;
}

Weight weight_from_json(const json& j, const Problem& p) {
  const int r = p.rs.rank();
  if (p.family.kind == FamilyKind::Xxx) {
    if (j.contains("weight")) bad("the difference family takes 'kappa', not 'weight'");
    MultWeight k;
    if (j.contains("kappa")) {
      k.kappa = rational_list(j["kappa"], "kappa");
    } else {
      for (int i = 0; i < r; ++i) k.kappa.push_back(i + 2);
    }
    if (static_cast<int>(k.kappa.size()) != r) bad("'kappa' has wrong length");
    for (const auto& c : k.kappa)
      if (c == 0) bad("kappa entries must be nonzero");
    return k;
  }
  if (j.contains("kappa")) bad("'kappa' is only meaningful for the difference family");
  WeightVec w;
  if (j.contains("weight")) {
    w.m = rational_list(j["weight"], "weight");
  } else {
    for (int i = 0; i < r; ++i) w.m.push_back(Rational(1, 2 * (i + 1) + 3));
  }
  if (static_cast<int>(w.m.size()) != r) bad("'weight' has wrong length");
  return w;
}

PolyTuple tuple_from_json_value(const json& t, const Problem& p) {
  PolyTuple out;
  for (const auto& y : require_array(t, "tuple")) out.ys.emplace_back(rational_list(y, "tuple entry"));
  if (static_cast<int>(out.ys.size()) != p.rs.rank()) bad("tuple length differs from rank");
  for (const auto& y : out.ys)
    if (y.is_zero()) bad("tuple contains the zero polynomial");
  return out;
}

PolyTuple tuple_from_json(const json& j, const Problem& p) {
  if (!j.contains("tuple")) return PolyTuple::trivial(p.rs.rank());
  return tuple_from_json_value(j["tuple"], p);
}

json population_to_json(const Population& pop) {
  json nodes = json::array();
  for (const auto& n : pop.nodes) {
    nodes.push_back({{"word", to_json(n.word)},
                     {"weight", to_json(n.weight)},
                     {"tuple", to_json(n.tuple)},
                     {"degrees", n.tuple.degrees()}});
  }
  return nodes;
}

}  // namespace bp
