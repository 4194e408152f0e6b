#include <doctest.h>

#include <functional>

#include "bethepop/error.hpp"
#include "bethepop/population.hpp"
#include "bethepop/reproduce.hpp"

using namespace bp;

namespace {

const Poly x = Poly::monomial(1);

Poly lin(const Rational& a) { return Poly::linear_root(a); }

Problem make_problem(const std::string& type, std::vector<WeightVec> Lambda, std::vector<Rational> z,
                     FamilyKind kind = FamilyKind::Trig, Rational h = 0) {
  Problem p{RootSystem::parse(type), std::move(Lambda), std::move(z), BetheFamily{kind, h}};
  p.validate();
  return p;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidInput;
}

// the defining identity written out coefficientwise, independent of the Wronskian helpers
bool identity_by_hand(const Problem& p, const Poly& y, const Poly& yt, const Rational& c, const Poly& g) {
  Poly lhs;
  switch (p.family.kind) {
    case FamilyKind::Trig: lhs = y * yt * c + x * (y * yt.derivative() - y.derivative() * yt); break;
    case FamilyKind::Exp: lhs = y * yt * c + y * yt.derivative() - y.derivative() * yt; break;
    case FamilyKind::Xxx: lhs = y * shift(yt, p.family.h) * c - shift(y, p.family.h) * yt; break;
  }
  return !lhs.is_zero() && proportionality(lhs, g).has_value();
}

Rational param(const Problem& p, const Weight& w, int i) {
  switch (p.family.kind) {
    case FamilyKind::Trig: return std::get<WeightVec>(w).m[i] + 1;
    case FamilyKind::Exp: return std::get<WeightVec>(w).m[i];
    case FamilyKind::Xxx: return std::get<MultWeight>(w).kappa[i];
  }
  return 0;
}

}  // namespace

TEST_CASE("T polynomials") {
  const auto p = make_problem("A2", {WeightVec{{1, 2}}, WeightVec{{0, 1}}}, {3, 5});
  CHECK(build_T(p, 0) == lin(3));
  CHECK(build_T(p, 1) == pow(lin(3), 2) * lin(5));

  const auto b2 = make_problem("B2", {WeightVec{{1, 0}}}, {0}, FamilyKind::Xxx, 1);
  // (Lambda, alpha_1) = 2 for the long root
  CHECK(build_T_h(b2, 0) == x * lin(-1));
  CHECK(build_T_h(b2, 1) == Poly::constant(1));
  const auto a1 = make_problem("A1", {WeightVec{{1}}}, {Rational(1, 2)}, FamilyKind::Xxx, 1);
  CHECK(build_T_h(a1, 0) == x);
  CHECK(family_T(a1, 0) == x);
}

TEST_CASE("right-hand sides") {
  const Poly y1 = lin(2), y2 = lin(7);
  const auto a2 = make_problem("A2", {WeightVec{{1, 0}}}, {3});
  CHECK(rhs_g(a2, {{y1, y2}}, 0) == lin(3) * y2);
  CHECK(rhs_g(a2, {{y1, y2}}, 1) == y1);
  const auto b2 = make_problem("B2", {WeightVec{{1, 1}}}, {3});
  CHECK(rhs_g(b2, {{y1, y2}}, 0) == lin(3) * y2);
  CHECK(rhs_g(b2, {{y1, y2}}, 1) == lin(3) * y1 * y1);
  const auto g2 = make_problem("G2", {WeightVec{{0, 0}}}, {3});
  CHECK(rhs_g(g2, {{y1, y2}}, 0) == pow(y2, 3));
  CHECK(rhs_g(g2, {{y1, y2}}, 1) == y1);
  const auto xxx = make_problem("A2", {WeightVec{{0, 0}}}, {Rational(1, 3)}, FamilyKind::Xxx, 2);
  CHECK(rhs_g(xxx, {{y1, y2}}, 0) == shift(y2, 1));
}

TEST_CASE("trigonometric reproduction examples") {
  const auto p = make_problem("A1", {WeightVec{{1}}}, {1});
  const WeightVec w{{Rational(5, 3)}};
  // one point: the new root is z (c+1)/c with c = m + 1
  CHECK(reproduce_trig(p, PolyTuple::trivial(1), w, 0).ys[0] == lin(Rational(11, 8)));
  const WeightVec sw = std::get<WeightVec>(reflect(p, 0, w));
  CHECK(sw.m[0] == Rational(-11, 3));
  // the seed: t = lambda/(lambda+1) solves the one-root Bethe equation
  const PolyTuple seed{{lin(Rational(5, 8))}};
  CHECK(reproduce_trig(p, seed, w, 0) == PolyTuple::trivial(1));
  CHECK(reproduce_trig(p, PolyTuple::trivial(1), sw, 0) == seed);
  CHECK(code_of([&] { reproduce_exp(p, PolyTuple::trivial(1), w, 0); }) == ErrorCode::InvalidInput);
}

TEST_CASE("exponential and difference reproduction examples") {
  const auto e = make_problem("A1", {WeightVec{{1}}}, {0}, FamilyKind::Exp);
  CHECK(reproduce_exp(e, PolyTuple::trivial(1), WeightVec{{1}}, 0).ys[0] == lin(1));
  CHECK(code_of([&] { reproduce_exp(e, PolyTuple::trivial(1), WeightVec{{0}}, 0); }) == ErrorCode::Infertile);

  const auto d = make_problem("A1", {WeightVec{{1}}}, {Rational(1, 2)}, FamilyKind::Xxx, 1);
  // 2 y(x+1) - y(x) = x
  CHECK(reproduce_xxx(d, PolyTuple::trivial(1), MultWeight{{2}}, 0).ys[0] == lin(2));
  CHECK(code_of([&] { reproduce_xxx(d, PolyTuple::trivial(1), MultWeight{{1}}, 0); }) == ErrorCode::Infertile);
}

TEST_CASE("reproduction satisfies the identity and is an involution") {
  struct Case {
    std::string type;
    std::vector<WeightVec> Lambda;
    std::vector<Rational> z;
    FamilyKind kind;
    Rational h;
  };
  const std::vector<Case> cases{
      {"A2", {WeightVec{{1, 0}}, WeightVec{{0, 1}}}, {1, 3}, FamilyKind::Trig, 0},
      {"B2", {WeightVec{{1, 1}}}, {2}, FamilyKind::Trig, 0},
      {"G2", {WeightVec{{1, 0}}}, {2}, FamilyKind::Trig, 0},
      {"A2", {WeightVec{{1, 1}}}, {Rational(1, 2)}, FamilyKind::Exp, 0},
      {"B2", {WeightVec{{0, 1}}, WeightVec{{1, 0}}}, {0, 1}, FamilyKind::Exp, 0},
      {"A2", {WeightVec{{1, 0}}, WeightVec{{0, 1}}}, {0, Rational(1, 3)}, FamilyKind::Xxx, 1},
      {"B2", {WeightVec{{1, 0}}}, {Rational(1, 5)}, FamilyKind::Xxx, Rational(1, 2)},
  };
  for (const auto& c : cases) {
    CAPTURE(c.type);
    CAPTURE(family_name(c.kind));
    const auto p = make_problem(c.type, c.Lambda, c.z, c.kind, c.h);
    const int r = p.rs.rank();
    Weight w;
    if (c.kind == FamilyKind::Xxx) {
      MultWeight k;
      for (int i = 0; i < r; ++i) k.kappa.push_back(Rational(i + 2) / (i + 5) + 3);
      w = k;
    } else {
      WeightVec m;
      for (int i = 0; i < r; ++i) m.m.push_back(Rational(1, 2 * (i + 1) + 3));
      w = m;
    }
    // walk two steps from the trivial tuple in every direction
    std::vector<std::pair<PolyTuple, Weight>> nodes{{PolyTuple::trivial(r), w}};
    for (int i = 0; i < r; ++i) nodes.push_back({reproduce(p, PolyTuple::trivial(r), w, i), reflect(p, i, w)});
    for (const auto& [t, wt] : nodes)
      for (int i = 0; i < r; ++i) {
        const PolyTuple d = reproduce(p, t, wt, i);
        CHECK(d.is_monic());
        CHECK(identity_by_hand(p, t.ys[i], d.ys[i], param(p, wt, i), rhs_g(p, t, i)));
        for (int j = 0; j < r; ++j)
          if (j != i) CHECK(d.ys[j] == t.ys[j]);
        // degree law
        int expect = family_T(p, i).degree() - t.ys[i].degree();
        for (int j = 0; j < r; ++j)
          if (j != i) expect += -p.rs.a(i, j) * t.ys[j].degree();
        CHECK(d.ys[i].degree() == expect);
        CHECK(reproduce(p, d, reflect(p, i, wt), i) == t);
      }
  }
}

TEST_CASE("off-diagonal conditions") {
  const auto p = make_problem("A2", {WeightVec{{1, 0}}}, {3});
  CHECK(is_off_diagonal(p, {{lin(1), lin(2)}}));
  CHECK(!is_off_diagonal(p, {{lin(1) * lin(1), lin(2)}}));
  CHECK(!is_off_diagonal(p, {{lin(3), lin(2)}}));
  CHECK(!is_off_diagonal(p, {{lin(2), lin(2)}}));
  CHECK(!is_off_diagonal(p, {{x, lin(2)}}));
  const auto e = make_problem("A2", {WeightVec{{1, 0}}}, {3}, FamilyKind::Exp);
  CHECK(is_off_diagonal(e, {{x, lin(2)}}));
  const auto d = make_problem("A1", {WeightVec{{1}}}, {Rational(1, 3)}, FamilyKind::Xxx, 1);
  CHECK(is_off_diagonal(d, {{lin(5) * lin(Rational(11, 2))}}));
  CHECK(!is_off_diagonal(d, {{lin(5) * lin(6)}}));
  // T^(h) has its root at z - h/2
  CHECK(!is_off_diagonal(d, {{lin(Rational(-1, 6))}}));
}

TEST_CASE("fertility verdicts") {
  const auto p = make_problem("A1", {WeightVec{{1}}}, {1});
  const WeightVec w{{Rational(5, 3)}};
  CHECK(is_fertile(p, PolyTuple::trivial(1), w) == Verdict::Pass);
  CHECK(verify_critical_point(p, PolyTuple::trivial(1), w, {0}) == Verdict::Pass);
  CHECK(verify_critical_point(p, PolyTuple::trivial(1), w, {1}) == Verdict::Fail);
  CHECK(verify_critical_point(p, PolyTuple{{lin(Rational(5, 8))}}, w, {1}) == Verdict::Pass);
  CHECK(is_off_diagonal(p, PolyTuple{{lin(Rational(5, 8))}}));
  // a root off the Bethe solution
  CHECK(is_fertile(p, PolyTuple{{lin(Rational(5, 7))}}, w) == Verdict::Fail);
  CHECK(verify_critical_point(p, PolyTuple{{Poly({-5, 7})}}, w, {1}) == Verdict::Fail);

  // c = -1 leaves the x coefficient free
  const auto q = make_problem("A1", {WeightVec{{1}}, WeightVec{{1}}}, {1, -1});
  CHECK(is_fertile(q, PolyTuple::trivial(1), WeightVec{{-2}}) == Verdict::Indeterminate);
}
