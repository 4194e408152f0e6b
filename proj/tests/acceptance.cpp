// One line per acceptance criterion; exit status 1 if any of them fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "bethepop/bethe.hpp"
#include "bethepop/fundop.hpp"
#include "bethepop/gaudin_sl2.hpp"
#include "bethepop/population.hpp"

using namespace bp;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "[exception: " << e.what() << "] ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    o.pass = false;
    o.detail << "[over time budget " << budget_s << " s] ";
  }
  failures += !o.pass;
  std::printf("%s  %2d  %-44s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs, o.detail.str().c_str());
  std::fflush(stdout);
}

WeightVec fundamental(int r, int k) {
  WeightVec w;
  w.m.assign(r, 0);
  w.m[k] = 1;
  return w;
}

WeightVec small_weight(int r) {
  WeightVec m;
  for (int i = 0; i < r; ++i) m.m.push_back(Rational(1, 2 * (i + 1) + 3));
  return m;
}

Weight family_weight(const Problem& p) {
  if (p.family.kind == FamilyKind::Xxx) {
    MultWeight k;
    for (int i = 0; i < p.rs.rank(); ++i) k.kappa.push_back(i + 2);
    return k;
  }
  return small_weight(p.rs.rank());
}

Problem one_point(const std::string& type, FamilyKind kind = FamilyKind::Trig, Rational h = 0) {
  const auto rs = RootSystem::parse(type);
  const Rational z = kind == FamilyKind::Exp ? Rational(1, 2) : Rational(1);
  return Problem{rs, {fundamental(rs.rank(), 0)}, {z}, BetheFamily{kind, h}};
}

// cardinality, failures, distinct weights, bijective labels
void population_shape(Outcome& o, const Population& pop, const std::string& tag) {
  const long order = weyl_group_order(pop.problem.rs);
  std::set<std::vector<Rational>> keys;
  for (const auto& n : pop.nodes) keys.insert(coords(n.weight));
  o.require(static_cast<long>(pop.nodes.size()) == order, tag + " has " + std::to_string(pop.nodes.size()) + " nodes");
  o.require(pop.failures.empty(), tag + " has reproduction failures");
  o.require(static_cast<long>(keys.size()) == static_cast<long>(pop.nodes.size()), tag + " weight keys collide");
  o.require(weyl_label(pop).bijective, tag + " labels not bijective");
  o.detail << tag << "=" << pop.nodes.size() << " ";
}

void report_ok(Outcome& o, const Report& r, const std::string& tag) {
  for (const auto& it : r.items)
    if (!it.pass) o.require(false, tag + ": " + it.name + " " + it.detail);
}

Problem sl2(std::vector<int> Lambda, std::vector<Rational> z, FamilyKind kind, Rational h = 0) {
  Problem p{RootSystem::make(Family::A, 1), {}, std::move(z), BetheFamily{kind, h}};
  for (int L : Lambda) p.Lambda.push_back(WeightVec{{L}});
  return p;
}

std::vector<Complex> as_complex(const std::vector<Rational>& z) {
  std::vector<Complex> out;
  for (const auto& q : z) out.emplace_back(q.get_d(), 0);
  return out;
}

}  // namespace

int main() {
  std::printf("acceptance criteria\n");

  criterion(1, "sl2 seed population", 0.1, [](Outcome& o) {
    const Problem p = sl2({1}, {1}, FamilyKind::Trig);
    const WeightVec lam{{Rational(5, 3)}};
    const PolyTuple seed{{Poly::linear_root(Rational(5, 8))}};
    o.require(verify_critical_point(p, seed, lam, {1}) == Verdict::Pass, "seed is not critical");
    const PolyTuple d = reproduce_trig(p, seed, lam, 0);
    o.require(d == PolyTuple::trivial(1), "descendant is not 1");
    const WeightVec sl = std::get<WeightVec>(reflect(p, 0, lam));
    o.require(sl == WeightVec{{Rational(-11, 3)}}, "reflected weight is not -11/3");
    o.require(reproduce_trig(p, d, sl, 0) == seed, "involution fails");
    const Population pop = generate(p, seed, lam);
    o.require(pop.nodes.size() == 2 && pop.closed(), "population is not two closed nodes");
    if (pop.nodes.size() == 2) {
      o.require(pop.nodes[1].tuple == PolyTuple::trivial(1) && pop.nodes[1].weight == Weight(sl), "second node");
    }
    o.require(std::abs(residual_trig(BetheConfig{{{0.625}}}, p, {5.0 / 3})[0]) <= 1e-12, "t = 5/8 residual");
    o.detail << "{(x-5/8, 5/3), (1, -11/3)} ";
  });

  std::vector<Population> trig_pops;
  criterion(2, "population cardinality = |W|", 10, [&](Outcome& o) {
    for (const char* type : {"A2", "A3", "B2", "C3", "G2"}) {
      const Problem p = one_point(type);
      trig_pops.push_back(generate(p, PolyTuple::trivial(p.rs.rank()), small_weight(p.rs.rank())));
      population_shape(o, trig_pops.back(), type);
    }
  });

  criterion(3, "relation suite", 0, [&](Outcome& o) {
    o.require(!trig_pops.empty(), "no populations from criterion 2");
    for (const auto& pop : trig_pops) {
      const Report r = check_relations(pop);
      report_ok(o, r, pop.problem.rs.name());
      const std::string name = pop.problem.rs.name();
      std::set<std::string> kinds;
      o.detail << name << "[";
      for (const auto& it : r.items) {
        kinds.insert(it.name);
        o.detail << " " << it.name;
      }
      o.detail << " ] ";
      o.require(kinds.count("involution") == 1, name + " lacks the involution check");
      const std::string braid = name[0] == 'G' ? "braid6" : (name[0] == 'A' ? "braid3" : "braid4");
      o.require(kinds.count(braid) == 1, name + " lacks " + braid);
    }
  });

  std::vector<Population> other_pops;
  criterion(4, "degree law on every edge, all families", 0, [&](Outcome& o) {
    for (const char* type : {"A2", "B2"}) {
      const Problem e = one_point(type, FamilyKind::Exp);
      other_pops.push_back(generate(e, PolyTuple::trivial(e.rs.rank()), family_weight(e)));
      const Problem x = one_point(type, FamilyKind::Xxx, 1);
      other_pops.push_back(generate(x, PolyTuple::trivial(x.rs.rank()), MultWeight{{2, 3}}));
    }
    long edges = 0;
    for (const auto* list : {&trig_pops, &other_pops})
      for (const auto& pop : *list) {
        report_ok(o, degree_law_check(pop), pop.problem.rs.name() + "/" + family_name(pop.problem.family.kind));
        edges += static_cast<long>(pop.nodes.size()) * pop.problem.rs.rank();
      }
    o.detail << edges << " directed edges ";
  });

  criterion(5, "A_N kernel reconstruction", 5, [](Outcome& o) {
    for (const char* type : {"A2", "A3"}) {
      const Problem p = one_point(type);
      const Population pop = generate(p, PolyTuple::trivial(p.rs.rank()), small_weight(p.rs.rank()));
      const KernelBasis kb = kernel_basis(pop);
      report_ok(o, verify_reconstruction(kb, pop), type);
      report_ok(o, full_wronskian_check(kb, pop), type);
      report_ok(o, kernel_shape_check(kb, pop), type);
      report_ok(o, same_middle_check(pop), type);
      // a non-trivial base as well
      const PopNode& far = pop.nodes.back();
      const Population other = generate(p, far.tuple, far.weight);
      report_ok(o, kernel_checks(other), std::string(type) + " from a non-trivial node");
      o.detail << type << " ";
    }
  });

  criterion(6, "folding embeddings", 0, [](Outcome& o) {
    for (const char* type : {"B2", "G2", "B3"}) {
      const Problem p = one_point(type);
      const Folding f = Folding::make(p.rs);
      Problem q{f.target, {f.fold_weight(p.Lambda[0])}, p.z, p.family};
      const WeightVec w = small_weight(p.rs.rank());
      const Population src = generate(p, PolyTuple::trivial(p.rs.rank()), w);
      const Population tgt = generate(q, PolyTuple{f.fold_tuple(PolyTuple::trivial(p.rs.rank()).ys)}, f.fold_weight(w));
      report_ok(o, fold_check(src, tgt, f), type);
      o.detail << type << "->" << f.target.name() << " ";
    }
  });

  criterion(7, "exponential and XXX families", 0, [&](Outcome& o) {
    o.require(other_pops.size() == 4, "populations from criterion 4 missing");
    for (const auto& pop : other_pops) {
      const std::string tag = pop.problem.rs.name() + "/" + family_name(pop.problem.family.kind);
      population_shape(o, pop, tag);
      report_ok(o, check_relations(pop), tag);
      report_ok(o, population_invariants(pop), tag);
      if (pop.problem.rs.family() == Family::A) {
        report_ok(o, kernel_checks(pop), tag);
        const PopNode& far = pop.nodes.back();
        report_ok(o, kernel_checks(generate(pop.problem, far.tuple, far.weight)), tag + " from a non-trivial node");
      }
    }
  });

  criterion(8, "solution counts vs multiplicity", 30, [](Outcome& o) {
    SolveOptions opt;
    opt.attempts = 200;
    opt.tol = 1e-10;
    opt.dedup_tol = 1e-6;
    struct Case {
      std::vector<int> Lambda;
      int l;
      std::vector<Rational> z;
      std::vector<Rational> z_xxx;  // no two points differ by a multiple of h
    };
    const std::vector<Case> cases{{{1, 1}, 1, {1, 2}, {1, Rational(4, 3)}},
                                  {{2, 2}, 2, {1, Rational(5, 2)}, {1, Rational(5, 2)}},
                                  {{1, 1, 1}, 1, {1, 2, Rational(7, 2)}, {1, Rational(5, 2), Rational(10, 3)}}};
    for (FamilyKind kind : {FamilyKind::Trig, FamilyKind::Exp, FamilyKind::Xxx}) {
      for (const auto& c : cases) {
        const bool xxx = kind == FamilyKind::Xxx;
        const Problem p = sl2(c.Lambda, xxx ? c.z_xxx : c.z, kind, xxx ? Rational(1) : Rational(0));
        const Complex param = xxx ? Complex(2.7) : Complex(1.3);
        const CountReport r = count_check(p, {param}, c.l, opt);
        std::string tag = std::string(family_name(kind)) + " Lambda=(";
        for (size_t s = 0; s < c.Lambda.size(); ++s) tag += (s ? "," : "") + std::to_string(c.Lambda[s]);
        tag += ") l=" + std::to_string(c.l);
        o.require(r.equal && !r.exceeds, tag + " found " + std::to_string(r.found));
        for (const auto& s : r.solutions) o.require(residual(s, p, {param}).cwiseAbs().maxCoeff() <= 1e-10, tag + " residual");
        o.detail << r.found << "=" << r.multiplicity << " ";
      }
    }
  });

  const std::vector<std::pair<std::vector<int>, std::vector<Rational>>> gaudin_cases{
      {{1, 1}, {1, 2}}, {{1, 1, 2}, {1, 2, Rational(7, 2)}}};
  const double lam = 1.3;
  criterion(9, "Gaudin eigenvectors", 0, [&](Outcome& o) {
    for (const auto& [L, z] : gaudin_cases) {
      const Sl2Tensor V(L);
      const Problem p = sl2(L, z, FamilyKind::Trig);
      double worst = 0, worst_comm = 0;
      long vectors = 0;
      for (int l = 0; l <= 2 && 2 * l <= V.total(); ++l) {
        const double linf = V.total() - 2 * l;
        const auto g = build_gaudin(V, as_complex(z), lam + 1 + linf / 2);
        worst_comm = std::max(worst_comm, max_commutator(g));
        for (const auto& s : solve_newton(p, {lam}, {l})) {
          worst = std::max(worst, verify_bethe_eigen(V, as_complex(z), lam, s.colors[0]).max_residual);
          ++vectors;
        }
      }
      o.require(worst <= 1e-8, "eigen residual " + std::to_string(worst));
      o.require(worst_comm <= 1e-12, "commutator " + std::to_string(worst_comm));
      o.detail << "n=" << L.size() << ": " << vectors << " vectors, res " << worst << ", comm " << worst_comm << "; ";
    }
  });

  const std::vector<std::pair<std::vector<int>, std::vector<Rational>>> dwg_cases{
      {{2}, {3}}, {{1, 1}, {1, 2}}, {{2, 1}, {1, Rational(5, 2)}}};
  criterion(10, "dynamical Weyl group suite", 60, [&](Outcome& o) {
    double worst_comm = 0, worst_limit = 0, worst_sine = 0;
    long cases = 0;
    for (const auto& [L, z] : dwg_cases) {
      const Sl2Tensor V(L);
      for (long lambda : {10L, 20L}) {
        const DWGOperator op = dwg_operator(V, lambda);
        o.require(op.weights_flip, "weights do not flip");
        o.require(op.lower_terms_vanish, "lower terms do not vanish");
        worst_comm = std::max(worst_comm, dwg_commutation_check(V, as_complex(z), lambda).max_relative);
        for (int l = 0; l <= 2 && 2 * l <= V.total(); ++l) {
          const ConjectureReport r = conjecture_check(V, z, lambda, l);
          o.require(r.skipped == 0, "descendant not off-diagonal");
          o.require(!r.cases.empty(), "no Bethe solutions");
          worst_sine = std::max(worst_sine, r.max_sine);
          cases += static_cast<long>(r.cases.size());
        }
      }
      worst_limit = std::max(worst_limit, dwg_limit_angle(V, 10000));
    }
    o.require(worst_comm <= 1e-10, "commutation " + std::to_string(worst_comm));
    o.require(worst_limit <= 1e-3, "limit angle " + std::to_string(worst_limit));
    o.require(worst_sine <= 1e-6, "conjecture sine " + std::to_string(worst_sine));
    o.detail << "comm " << worst_comm << ", limit " << worst_limit << ", sine " << worst_sine << " over " << cases
             << " vectors ";
  });

  criterion(11, "negative controls", 0, [&](Outcome& o) {
    // corrupted tuples
    const Problem p = sl2({1}, {1}, FamilyKind::Trig);
    o.require(verify_critical_point(p, PolyTuple{{Poly::linear_root(Rational(5, 7))}}, WeightVec{{Rational(5, 3)}}, {1}) ==
                  Verdict::Fail,
              "x-5/7 verified");
    const Problem a2 = one_point("A2");
    const Population pop = generate(a2, PolyTuple::trivial(2), small_weight(2));
    long rejected = 0, tried = 0;
    for (const auto& n : pop.nodes) {
      PolyTuple bad = n.tuple;
      bad.ys[0] = bad.ys[0] * Poly::linear_root(Rational(13, 7));
      ++tried;
      rejected += verify_critical_point(a2, bad, n.weight, bad.degrees()) == Verdict::Fail;
    }
    o.require(rejected == tried, "corrupted A2 tuples verified");

    // random configurations: eigen residual and conjecture angle stay away from zero
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-3, 3);
    double min_res = INFINITY;
    for (const auto& [L, z] : gaudin_cases) {
      const Sl2Tensor V(L);
      for (int l = 1; l <= 2 && 2 * l <= V.total(); ++l) {
        if (V.block(V.total() - 2 * l).size() <= 1) continue;
        for (int k = 0; k < 20; ++k) {
          std::vector<Complex> t;
          for (int j = 0; j < l; ++j) t.emplace_back(u(rng), u(rng));
          min_res = std::min(min_res, verify_bethe_eigen(V, as_complex(z), lam, t).max_residual);
        }
      }
    }
    o.require(min_res >= 1e-2, "eigen residual of a random configuration " + std::to_string(min_res));
    double min_sine = INFINITY;
    bool any = false;
    for (const auto& [L, z] : dwg_cases) {
      const Sl2Tensor V(L);
      for (long lambda : {10L, 20L})
        for (int l = 1; l <= 2 && 2 * l <= V.total(); ++l) {
          const ConjectureReport r = conjecture_check(V, z, lambda, l);
          if (!r.control_run) continue;
          any = true;
          min_sine = std::min(min_sine, r.control_min_sine);
          min_res = std::min(min_res, r.control_min_residual);
        }
    }
    o.require(any, "no conjecture control ran");
    o.require(min_sine >= 1e-2, "conjecture angle of a random configuration " + std::to_string(min_sine));
    o.require(min_res >= 1e-2, "control residual " + std::to_string(min_res));
    o.detail << "rejected " << rejected + 1 << " tuples, min residual " << min_res << ", min sine " << min_sine << " ";
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
