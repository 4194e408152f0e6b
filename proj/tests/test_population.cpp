#include <doctest.h>

#include <cstdlib>
#include <set>

#include "bethepop/error.hpp"
#include "bethepop/population.hpp"

using namespace bp;

namespace {

Problem make_problem(const std::string& type, std::vector<WeightVec> Lambda, std::vector<Rational> z,
                     FamilyKind kind = FamilyKind::Trig, Rational h = 0) {
  return Problem{RootSystem::parse(type), std::move(Lambda), std::move(z), BetheFamily{kind, h}};
}

Weight default_weight(const Problem& p) {
  const int r = p.rs.rank();
  if (p.family.kind == FamilyKind::Xxx) {
    MultWeight k;
    for (int i = 0; i < r; ++i) k.kappa.push_back(i + 2);
    return k;
  }
  WeightVec m;
  for (int i = 0; i < r; ++i) m.m.push_back(Rational(1, 2 * (i + 1) + 3));
  return m;
}

void check_population(const Population& pop, long expect) {
  CHECK(pop.closed());
  CHECK(static_cast<long>(pop.nodes.size()) == expect);
  CHECK(check_relations(pop).pass());
  CHECK(population_invariants(pop).pass());
  CHECK(degree_law_check(pop).pass());
  const WeylLabel label = weyl_label(pop);
  CHECK(label.bijective);
  // weights are pairwise distinct and every tuple is critical at its weight
  std::set<std::vector<Rational>> ws;
  for (const auto& n : pop.nodes) {
    ws.insert(coords(n.weight));
    CHECK(apply_word(pop.problem, n.word, pop.base().weight) == n.weight);
    CHECK(verify_critical_point(pop.problem, n.tuple, n.weight, n.tuple.degrees()) == Verdict::Pass);
  }
  CHECK(static_cast<long>(ws.size()) == expect);
}

}  // namespace

TEST_CASE("sl2 seed population") {
  const auto p = make_problem("A1", {WeightVec{{1}}}, {1});
  const Population pop = generate(p, PolyTuple{{Poly::linear_root(Rational(5, 8))}}, WeightVec{{Rational(5, 3)}});
  check_population(pop, 2);
  CHECK(pop.nodes[1].tuple == PolyTuple::trivial(1));
  CHECK(pop.nodes[1].weight == Weight(WeightVec{{Rational(-11, 3)}}));
  CHECK(pop.edges[0][0] == 1);
  CHECK(pop.edges[1][0] == 0);
  CHECK(pop.find(WeightVec{{Rational(-11, 3)}}) == 1);
  CHECK(!pop.find(WeightVec{{Rational(1, 3)}}));
}

TEST_CASE("populations have one node per Weyl group element") {
  struct Case {
    Problem p;
    long order;
  };
  const std::vector<Case> cases{
      {make_problem("A2", {WeightVec{{1, 0}}, WeightVec{{0, 1}}}, {1, 3}), 6},
      {make_problem("B2", {WeightVec{{1, 1}}}, {2}), 8},
      {make_problem("G2", {WeightVec{{1, 0}}}, {2}), 12},
      {make_problem("A3", {WeightVec{{1, 0, 0}}}, {2}), 24},
      {make_problem("A2", {WeightVec{{1, 1}}}, {Rational(1, 2)}, FamilyKind::Exp), 6},
      {make_problem("B2", {WeightVec{{0, 1}}}, {0}, FamilyKind::Exp), 8},
      {make_problem("A2", {WeightVec{{1, 0}}, WeightVec{{0, 1}}}, {0, Rational(1, 3)}, FamilyKind::Xxx, 1), 6},
      {make_problem("B2", {WeightVec{{1, 0}}}, {Rational(1, 5)}, FamilyKind::Xxx, Rational(1, 2)), 8},
  };
  for (const auto& c : cases) {
    CAPTURE(c.p.rs.name());
    CAPTURE(family_name(c.p.family.kind));
    const Population pop = generate(c.p, PolyTuple::trivial(c.p.rs.rank()), default_weight(c.p));
    check_population(pop, c.order);
  }
}

TEST_CASE("population from a non-trivial start is the same set") {
  const auto p = make_problem("A2", {WeightVec{{1, 0}}, WeightVec{{0, 1}}}, {1, 3});
  const Population a = generate(p, PolyTuple::trivial(2), default_weight(p));
  const PopNode& mid = a.nodes[3];
  const Population b = generate(p, mid.tuple, mid.weight);
  REQUIRE(b.nodes.size() == a.nodes.size());
  for (const auto& n : b.nodes) {
    const auto k = a.find(n.weight);
    REQUIRE(k);
    CHECK(a.nodes[*k].tuple == n.tuple);
  }
}

TEST_CASE("foldings intertwine populations") {
  for (const std::string type : {"B2", "G2", "B3"}) {
    CAPTURE(type);
    const auto rs = RootSystem::parse(type);
    std::vector<Rational> lam(rs.rank(), 0);
    lam[0] = 1;
    const auto p = make_problem(type, {WeightVec{lam}}, {2});
    const Folding f = Folding::make(rs);
    Problem q{f.target, {f.fold_weight(WeightVec{lam})}, {2}, p.family};
    const WeightVec w = std::get<WeightVec>(default_weight(p));
    const Population src = generate(p, PolyTuple::trivial(rs.rank()), w);
    const Population tgt = generate(q, PolyTuple{f.fold_tuple(PolyTuple::trivial(rs.rank()).ys)}, f.fold_weight(w));
    CHECK(fold_check(src, tgt, f).pass());
    for (const auto& n : src.nodes) {
      const auto k = tgt.find(f.fold_weight(std::get<WeightVec>(n.weight)));
      REQUIRE(k);
      CHECK(tgt.nodes[*k].tuple.ys == f.fold_tuple(n.tuple.ys));
    }
  }
}

TEST_CASE("tampered populations fail their checks") {
  const auto p = make_problem("A2", {WeightVec{{1, 0}}, WeightVec{{0, 1}}}, {1, 3});
  Population pop = generate(p, PolyTuple::trivial(2), default_weight(p));
  pop.nodes[2].tuple.ys[0] = pop.nodes[2].tuple.ys[0] * Poly::linear_root(7);
  CHECK(!population_invariants(pop).pass());
}

TEST_CASE("overflow, limits and genericity") {
  const auto p = make_problem("A3", {WeightVec{{1, 0, 0}}}, {2});
  const Weight w = default_weight(p);
  try {
    generate(p, PolyTuple::trivial(3), w, 5);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PopulationOverflow);
  }
  CHECK(default_max_nodes(p.rs) == 96);
  setenv("BETHE_MAX_NODES", "7", 1);
  CHECK(default_max_nodes(p.rs) == 7);
  CHECK_THROWS_AS(generate(p, PolyTuple::trivial(3), w), Error);
  unsetenv("BETHE_MAX_NODES");
  CHECK(default_max_nodes(p.rs) == 96);

  const auto a1 = make_problem("A1", {WeightVec{{1}}}, {1});
  try {
    generate(a1, PolyTuple::trivial(1), WeightVec{{3}});
    FAIL("expected InvalidInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInput);
  }
  CHECK_THROWS_AS(generate(a1, PolyTuple::trivial(2), WeightVec{{Rational(1, 3)}}), Error);
  const auto d = make_problem("A1", {WeightVec{{1}}}, {1}, FamilyKind::Xxx, 1);
  CHECK(!weight_is_generic(d, MultWeight{{1}}));
  CHECK(weight_is_generic(d, MultWeight{{2}}));
}

TEST_CASE("a non-critical start records failures") {
  const auto p = make_problem("A1", {WeightVec{{1}}}, {1});
  const Population pop = generate(p, PolyTuple{{Poly::linear_root(Rational(5, 7))}}, WeightVec{{Rational(5, 3)}});
  CHECK(!pop.closed());
  CHECK(pop.failures.front().code == ErrorCode::Infertile);
  CHECK(pop.edges[0][0] == -1);
}
