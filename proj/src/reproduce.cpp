#include "bethepop/reproduce.hpp"

#include <algorithm>

namespace bp {

const char* family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Trig: return "trig";
    case FamilyKind::Exp: return "exp";
    case FamilyKind::Xxx: return "xxx";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

void Problem::validate() const {
  const int r = rs.rank();
  if (Lambda.size() != z.size()) throw Error(ErrorCode::InvalidInput, "Lambda and z have different lengths");
  for (const auto& L : Lambda) {
    if (static_cast<int>(L.m.size()) != r) throw Error(ErrorCode::InvalidInput, "highest weight has wrong rank");
    for (const auto& c : L.m)
      if (!is_integer(c) || c < 0) throw Error(ErrorCode::InvalidInput, "highest weight is not dominant integral");
  }
  for (size_t a = 0; a < z.size(); ++a)
    for (size_t b = a + 1; b < z.size(); ++b)
      if (z[a] == z[b]) throw Error(ErrorCode::InvalidInput, "points z must be distinct");
  if (family.kind == FamilyKind::Trig)
    for (const auto& zs : z)
      if (zs == 0) throw Error(ErrorCode::InvalidInput, "trigonometric points must be nonzero");
  if (family.kind == FamilyKind::Xxx) {
    if (family.h == 0) throw Error(ErrorCode::ZeroStep, "h must be nonzero");
    for (size_t a = 0; a < z.size(); ++a)
      for (size_t b = a + 1; b < z.size(); ++b)
        if (is_integer(Rational((z[a] - z[b]) / family.h)))
          throw Error(ErrorCode::InvalidInput, "z_a - z_b lies in h*Z");
  }
}

int Problem::pairing(size_t s, int i) const { return static_cast<int>(to_long(Lambda[s].m[i])); }

PolyTuple PolyTuple::trivial(int r) { return {std::vector<Poly>(r, Poly::constant(1))}; }

std::vector<int> PolyTuple::degrees() const {
  std::vector<int> d;
  for (const auto& y : ys) d.push_back(y.degree());
  return d;
}

bool PolyTuple::is_monic() const {
  return std::all_of(ys.begin(), ys.end(), [](const Poly& y) { return !y.is_zero() && y.leading() == 1; });
}

const std::vector<Rational>& coords(const Weight& w) {
  if (const auto* a = std::get_if<WeightVec>(&w)) return a->m;
  return std::get<MultWeight>(w).kappa;
}

Weight reflect(const Problem& p, int i, const Weight& w) {
  switch (p.family.kind) {
    case FamilyKind::Trig: return reflect_shifted(p.rs, i, std::get<WeightVec>(w));
    case FamilyKind::Exp: return reflect_plain(p.rs, i, std::get<WeightVec>(w));
    case FamilyKind::Xxx: return reflect_mult(p.rs, i, std::get<MultWeight>(w));
  }
  return w;
}

Weight apply_word(const Problem& p, const WeylWord& word, Weight w) {
  for (int i : word.letters) w = reflect(p, i, w);
  return w;
}

Poly build_T(const Problem& p, int i) {
  Poly t = Poly::constant(1);
  for (size_t s = 0; s < p.z.size(); ++s) t *= pow(Poly::linear_root(p.z[s]), p.pairing(s, i));
  return t;
}

Poly build_T_h(const Problem& p, int i) {
  const Rational& h = p.family.h;
  Poly t = Poly::constant(1);
  for (size_t s = 0; s < p.z.size(); ++s) {
    const int b = p.form_pairing(s, i);
    for (int j = 1; j <= b; ++j) t *= Poly::linear_root(p.z[s] + b * h / 2 - j * h);
  }
  return t;
}

Poly family_T(const Problem& p, int i) { return p.family.kind == FamilyKind::Xxx ? build_T_h(p, i) : build_T(p, i); }

Poly rhs_g(const Problem& p, const PolyTuple& t, int i) {
  const bool xxx = p.family.kind == FamilyKind::Xxx;
  Poly g = family_T(p, i);
  for (int j = 0; j < p.rs.rank(); ++j) {
    if (j == i || p.rs.a(i, j) == 0) continue;
    const Poly& yj = t.ys[j];
    g *= pow(xxx ? shift(yj, p.family.h / 2) : yj, -p.rs.a(i, j));
  }
  return g;
}

namespace {

// image of x^k under the linear map whose solution is the descendant
Poly apply_map(const Problem& p, const Poly& y, const Rational& c, int k) {
  Poly xk = Poly::monomial(k);
  switch (p.family.kind) {
    case FamilyKind::Trig: return y * xk * c + Poly::monomial(1) * (y * xk.derivative() - y.derivative() * xk);
    case FamilyKind::Exp: return y * xk * c + (y * xk.derivative() - y.derivative() * xk);
    case FamilyKind::Xxx: return y * shift(xk, p.family.h) * c - shift(y, p.family.h) * xk;
  }
  return {};
}

bool identity_holds(const Problem& p, const Poly& y, const Poly& yt, const Rational& c, const Poly& g) {
  switch (p.family.kind) {
    case FamilyKind::Trig:
      return qwronskian({QPoly::make(0, y), QPoly::make(c, yt)}) == QPoly::make(c - 1, g);
    case FamilyKind::Exp:
      return ewronskian({ExpPoly{0, y}, ExpPoly{c, yt}}) == ExpPoly{c, g};
    case FamilyKind::Xxx:
      return discrete_wronskian({DiscreteExpPoly{1, y}, DiscreteExpPoly{c, yt}}, p.family.h) == DiscreteExpPoly{c, g};
  }
  return false;
}

}  // namespace

Poly reproduce_raw(const Problem& p, const PolyTuple& t, const Weight& w, int i) {
  const Poly& y = t.ys[i];
  Rational c;
  switch (p.family.kind) {
    case FamilyKind::Trig:
      c = std::get<WeightVec>(w).m[i] + 1;
      break;
    case FamilyKind::Exp:
      c = std::get<WeightVec>(w).m[i];
      if (c == 0) throw Error(ErrorCode::Infertile, "exponential reproduction on a wall (pairing 0)");
      break;
    case FamilyKind::Xxx:
      c = std::get<MultWeight>(w).kappa[i];
      if (c == 1) throw Error(ErrorCode::Infertile, "difference reproduction with kappa_i = 1");
      break;
  }
  Poly g = rhs_g(p, t, i);
  const int q = g.degree() - y.degree();
  if (q < 0) throw Error(ErrorCode::Infertile, "target degree is negative");
  std::vector<Poly> cols;
  int rows = g.degree() + 1;
  for (int k = 0; k <= q; ++k) {
    cols.push_back(apply_map(p, y, c, k));
    rows = std::max(rows, cols.back().degree() + 1);
  }
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(q + 1));
  std::vector<Rational> b(rows);
  for (int n = 0; n < rows; ++n) {
    for (int k = 0; k <= q; ++k) a[n][k] = cols[k].coeff(n);
    b[n] = g.coeff(n);
  }
  Poly yt(solve_linear(std::move(a), std::move(b)));
  if (!identity_holds(p, y, yt, c, g))
    throw Error(ErrorCode::IdentityViolation, "descendant fails the defining Wronskian identity");
  return yt;
}

PolyTuple reproduce(const Problem& p, const PolyTuple& t, const Weight& w, int i) {
  PolyTuple out = t;
  out.ys[i] = monicize(reproduce_raw(p, t, w, i));
  return out;
}

PolyTuple reproduce_trig(const Problem& p, const PolyTuple& t, const WeightVec& w, int i) {
  if (p.family.kind != FamilyKind::Trig) throw Error(ErrorCode::InvalidInput, "problem is not trigonometric");
  return reproduce(p, t, w, i);
}

PolyTuple reproduce_exp(const Problem& p, const PolyTuple& t, const WeightVec& w, int i) {
  if (p.family.kind != FamilyKind::Exp) throw Error(ErrorCode::InvalidInput, "problem is not exponential");
  return reproduce(p, t, w, i);
}

PolyTuple reproduce_xxx(const Problem& p, const PolyTuple& t, const MultWeight& k, int i) {
  if (p.family.kind != FamilyKind::Xxx) throw Error(ErrorCode::InvalidInput, "problem is not of difference type");
  return reproduce(p, t, k, i);
}

bool is_off_diagonal(const Problem& p, const PolyTuple& t) {
  const int r = p.rs.rank();
  auto coprime = [](const Poly& a, const Poly& b) { return gcd(a, b).degree() == 0; };
  for (int i = 0; i < r; ++i) {
    const Poly& yi = t.ys[i];
    if (!is_squarefree(yi)) return false;
    switch (p.family.kind) {
      case FamilyKind::Trig:
        if (yi.eval(0) == 0) return false;
        [[fallthrough]];
      case FamilyKind::Exp:
        if (!coprime(yi, build_T(p, i))) return false;
        for (int j = 0; j < r; ++j)
          if (j != i && p.rs.a(i, j) != 0 && !coprime(yi, t.ys[j])) return false;
        break;
      case FamilyKind::Xxx:
        if (!coprime(yi, build_T_h(p, i))) return false;
        if (!coprime(yi, shift(yi, p.family.h))) return false;
        for (int m = 0; m < r; ++m)
          if (m != i && p.rs.a(i, m) != 0 && !coprime(yi, shift(t.ys[m], p.family.h / 2))) return false;
        break;
    }
  }
  return true;
}

Verdict is_fertile(const Problem& p, const PolyTuple& t, const Weight& w) {
  bool ambiguous = false;
  for (int i = 0; i < p.rs.rank(); ++i) {
    try {
      reproduce_raw(p, t, w, i);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::AmbiguousSolution) ambiguous = true;
      else if (e.code() == ErrorCode::Infertile) return Verdict::Fail;
      else throw;
    }
  }
  return ambiguous ? Verdict::Indeterminate : Verdict::Pass;
}

Verdict verify_critical_point(const Problem& p, const PolyTuple& t, const Weight& w, const std::vector<int>& l) {
  if (static_cast<int>(t.ys.size()) != p.rs.rank() || !t.is_monic()) return Verdict::Fail;
  if (t.degrees() != l) return Verdict::Fail;
  if (!is_off_diagonal(p, t)) return Verdict::Fail;
  return is_fertile(p, t, w);
}

}  // namespace bp
