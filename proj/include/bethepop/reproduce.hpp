#pragma once

#include <string>
#include <variant>
#include <vector>

#include "bethepop/exactmath.hpp"
#include "bethepop/rootdata.hpp"

namespace bp {

enum class FamilyKind { Trig, Exp, Xxx };

struct BetheFamily {
  FamilyKind kind = FamilyKind::Trig;
  Rational h = 0;  // Xxx only
};

const char* family_name(FamilyKind k);

struct Problem {
  RootSystem rs;
  std::vector<WeightVec> Lambda;
  std::vector<Rational> z;
  BetheFamily family;

  // throws InvalidInput
  void validate() const;
  // <Lambda_s, alpha_i^vee>
  int pairing(size_t s, int i) const;
  // (Lambda_s, alpha_i)
  int form_pairing(size_t s, int i) const { return rs.d(i) * pairing(s, i); }
};

struct PolyTuple {
  std::vector<Poly> ys;

  static PolyTuple trivial(int r);
  std::vector<int> degrees() const;
  bool is_monic() const;
  bool operator==(const PolyTuple& o) const { return ys == o.ys; }
};

// additive for Trig/Exp, multiplicative for Xxx
using Weight = std::variant<WeightVec, MultWeight>;
const std::vector<Rational>& coords(const Weight& w);
// shifted action for Trig, plain for Exp, multiplicative for Xxx
Weight reflect(const Problem& p, int i, const Weight& w);
Weight apply_word(const Problem& p, const WeylWord& word, Weight w);

Poly build_T(const Problem& p, int i);
Poly build_T_h(const Problem& p, int i);
// T_i for Trig/Exp, T_i^{(h)} for Xxx
Poly family_T(const Problem& p, int i);
Poly rhs_g(const Problem& p, const PolyTuple& t, int i);

// unnormalized descendant polynomial; the defining identity is re-verified
Poly reproduce_raw(const Problem& p, const PolyTuple& t, const Weight& w, int i);
PolyTuple reproduce_trig(const Problem& p, const PolyTuple& t, const WeightVec& w, int i);
PolyTuple reproduce_exp(const Problem& p, const PolyTuple& t, const WeightVec& w, int i);
PolyTuple reproduce_xxx(const Problem& p, const PolyTuple& t, const MultWeight& k, int i);
PolyTuple reproduce(const Problem& p, const PolyTuple& t, const Weight& w, int i);

bool is_off_diagonal(const Problem& p, const PolyTuple& t);

enum class Verdict { Pass, Fail, Indeterminate };
const char* verdict_name(Verdict v);

Verdict is_fertile(const Problem& p, const PolyTuple& t, const Weight& w);
Verdict verify_critical_point(const Problem& p, const PolyTuple& t, const Weight& w, const std::vector<int>& l);

}  // namespace bp
