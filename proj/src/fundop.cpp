#include "bethepop/fundop.hpp"

#include <string>

namespace bp {

namespace {

void require_type_a(const Population& pop, FamilyKind kind) {
  if (pop.problem.rs.family() != Family::A) throw Error(ErrorCode::UnsupportedType, "kernel theory is implemented for type A");
  if (pop.problem.family.kind != kind) throw Error(ErrorCode::InvalidInput, "population has the wrong family");
}

const PopNode& node_for(const Population& pop, const WeylWord& w) {
  auto hit = pop.find(apply_word(pop.problem, w, pop.base().weight));
  if (!hit) throw Error(ErrorCode::MissingNode, "population lacks a staircase node");
  return pop.nodes[*hit];
}

QPoly qconst(const Rational& c) { return QPoly::make(0, Poly::constant(c)); }

std::string idx(const char* name, size_t i) { return std::string(name) + "_" + std::to_string(i); }

}  // namespace

std::vector<Rational> alpha_coordinates(const RootSystem& rs, const WeightVec& base, const WeightVec& node) {
  const int r = rs.rank();
  // <sum_i a_i alpha_i, alpha_j^vee> = sum_i a_ji a_i
  std::vector<std::vector<Rational>> m(r, std::vector<Rational>(r));
  std::vector<Rational> rhs(r);
  for (int j = 0; j < r; ++j) {
    for (int i = 0; i < r; ++i) m[j][i] = rs.a(j, i);
    rhs[j] = base.m[j] - node.m[j];
  }
  return solve_linear(std::move(m), std::move(rhs));
}

std::vector<WeylWord> staircase_words(int N) {
  std::vector<WeylWord> out;
  for (int i = 1; i <= N + 1; ++i) {
    WeylWord w;
    for (int k = i - 2; k >= 0; --k) w.letters.push_back(k);
    out.push_back(std::move(w));
  }
  return out;
}

KernelBasis kernel_basis(const Population& pop) {
  require_type_a(pop, FamilyKind::Trig);
  const auto& base = std::get<WeightVec>(pop.base().weight);
  KernelBasis kb;
  for (const auto& w : staircase_words(pop.problem.rs.rank())) {
    const PopNode& n = node_for(pop, w);
    auto a = alpha_coordinates(pop.problem.rs, base, std::get<WeightVec>(n.weight));
    kb.us.push_back(QPoly::make(a[0], n.tuple.ys[0]));
    kb.words.push_back(w);
  }
  return kb;
}

Report verify_reconstruction(const KernelBasis& kb, const Population& pop) {
  const Problem& p = pop.problem;
  const int N = p.rs.rank();
  const auto& m = std::get<WeightVec>(pop.base().weight).m;
  std::vector<Rational> la;
  std::vector<Poly> Ts;
  for (int k = 0; k < N; ++k) {
    la.push_back(m[k] * p.rs.d(k));
    Ts.push_back(build_T(p, k));
  }
  Report rep;
  for (int i = 1; i <= N + 1; ++i) {
    std::vector<QPoly> head(kb.us.begin(), kb.us.begin() + i);
    QPoly dw;
    try {
      dw = divided_wronskian(head, la, Ts);
    } catch (const Error& e) {
      rep.add(idx("reconstruct", i), false, e.what());
      continue;
    }
    if (i <= N) {
      auto c = proportionality(dw, QPoly::make(0, pop.base().tuple.ys[i - 1]));
      rep.add(idx("reconstruct", i), c && *c != 0, c ? "scalar " + to_string(*c) : "not proportional to y_i");
    } else {
      const bool ok = dw.exponent == 0 && dw.part.degree() == 0;
      rep.add(idx("reconstruct", i), ok, ok ? "constant " + to_string(dw.part.coeff(0)) : "not a nonzero constant");
    }
  }
  return rep;
}

Report kernel_shape_check(const KernelBasis& kb, const Population& pop) {
  const Problem& p = pop.problem;
  const int N = p.rs.rank();
  const auto& m = std::get<WeightVec>(pop.base().weight).m;
  const auto degs = pop.base().tuple.degrees();
  const WeightVec linf = lambda_infinity(p.rs, p.Lambda, degs);
  Report rep;
  Rational expo = 0, deg = degs[0];
  for (int k = 0; k <= N; ++k) {
    if (k > 0) {
      expo += (m[k - 1] + 1) * p.rs.d(k - 1);
      deg += linf.m[k - 1] * p.rs.d(k - 1);
    }
    const QPoly& u = kb.us[k];
    const bool ok = u.exponent == expo && Rational(u.part.degree()) == deg && u.part.eval(0) != 0;
    rep.add(idx("shape", k + 1), ok,
            "exponent " + to_string(u.exponent) + " (expected " + to_string(expo) + "), degree " +
                std::to_string(u.part.degree()) + " (expected " + to_string(deg) + ")");
  }
  return rep;
}

Report full_wronskian_check(const KernelBasis& kb, const Population& pop) {
  const Problem& p = pop.problem;
  const int N = p.rs.rank();
  const auto& m = std::get<WeightVec>(pop.base().weight).m;
  QPoly expect = qconst(1);
  for (int s = 1; s <= N; ++s) {
    QPoly f = QPoly::make(m[s - 1] * p.rs.d(s - 1), build_T(p, s - 1));
    for (int e = 0; e < N + 1 - s; ++e) expect = expect * f;
  }
  Report rep;
  auto c = proportionality(qwronskian(kb.us), expect);
  rep.add("full_wronskian", c && *c != 0, c ? "scalar " + to_string(*c) : "product formula fails");
  return rep;
}

Report same_middle_check(const Population& pop) {
  const Problem& p = pop.problem;
  require_type_a(pop, FamilyKind::Trig);
  const int N = p.rs.rank();
  const auto& base = std::get<WeightVec>(pop.base().weight);
  std::vector<std::vector<Rational>> acoord;
  for (const auto& n : pop.nodes) acoord.push_back(alpha_coordinates(p.rs, base, std::get<WeightVec>(n.weight)));
  auto bar = [&](size_t node, int k) {
    if (k < 0 || k >= N) return qconst(1);
    return QPoly::make(acoord[node][k], pop.nodes[node].tuple.ys[k]);
  };
  const QPoly minus = qconst(-1);
  size_t checked = 0, bad = 0, wr_bad = 0;
  for (size_t u = 0; u < pop.nodes.size(); ++u) {
    for (int i = 0; i < N; ++i) {
      const long v = pop.edges[u][i];
      if (v < 0) continue;
      const QPoly head = QPoly::make(base.m[i] * p.rs.d(i), build_T(p, i));
      const QPoly Ru = head * bar(u, i - 1) * bar(u, i + 1);
      const QPoly Rv = head * bar(v, i - 1) * bar(v, i + 1);
      const QPoly f = bar(u, i), g = bar(v, i);
      const QPoly f1 = f.derivative(), g1 = g.derivative();
      const QPoly ef = (minus * f1.derivative() * Ru + f1 * Ru.derivative()) * g;
      const QPoly eg = (minus * g1.derivative() * Rv + g1 * Rv.derivative()) * f;
      ++checked;
      if (!(ef == eg)) ++bad;
      auto c = proportionality(qwronskian({f, g}), Ru);
      if (!c || *c == 0) ++wr_bad;
    }
  }
  Report rep;
  rep.add("same_middle", bad == 0, "checked " + std::to_string(checked) + ", violations " + std::to_string(bad));
  rep.add("shifted_wronskian", wr_bad == 0, "checked " + std::to_string(checked) + ", violations " + std::to_string(wr_bad));
  return rep;
}

Report exp_kernel_checks(const Population& pop) {
  require_type_a(pop, FamilyKind::Exp);
  const Problem& p = pop.problem;
  const int N = p.rs.rank();
  const auto& base = std::get<WeightVec>(pop.base().weight);
  const auto degs = pop.base().tuple.degrees();
  const WeightVec linf = lambda_infinity(p.rs, p.Lambda, degs);
  std::vector<ExpPoly> us;
  Report rep;
  Rational rate = 0, deg = degs[0];
  int k = 0;
  for (const auto& w : staircase_words(N)) {
    const PopNode& n = node_for(pop, w);
    auto a = alpha_coordinates(p.rs, base, std::get<WeightVec>(n.weight));
    us.push_back({a[0], n.tuple.ys[0]});
    if (k > 0) {
      rate += base.m[k - 1] * p.rs.d(k - 1);
      deg += linf.m[k - 1] * p.rs.d(k - 1);
    }
    const bool ok = us.back().rate == rate && Rational(us.back().part.degree()) == deg;
    rep.add(idx("exp_shape", k + 1), ok, "rate " + to_string(us.back().rate) + ", degree " + std::to_string(us.back().part.degree()));
    ++k;
  }
  for (int i = 1; i <= N + 1; ++i) {
    ExpPoly w = ewronskian(std::vector<ExpPoly>(us.begin(), us.begin() + i));
    Rational expect_rate = 0;
    Poly divisor = Poly::constant(1);
    for (int j = 1; j < i; ++j) {
      expect_rate += Rational(i - j) * base.m[j - 1] * p.rs.d(j - 1);
      divisor *= pow(build_T(p, j - 1), i - j);
    }
    if (w.rate != expect_rate) {
      rep.add(idx("exp_reconstruct", i), false, "exponential rate " + to_string(w.rate) + " != " + to_string(expect_rate));
      continue;
    }
    Poly q;
    try {
      q = exact_div(w.part, divisor);
    } catch (const Error& e) {
      rep.add(idx("exp_reconstruct", i), false, e.what());
      continue;
    }
    if (i <= N) {
      auto c = proportionality(q, pop.base().tuple.ys[i - 1]);
      rep.add(idx("exp_reconstruct", i), c && *c != 0, c ? "scalar " + to_string(*c) : "not proportional to y_i");
    } else {
      rep.add(idx("exp_reconstruct", i), q.degree() == 0, "full Wronskian over its divisor");
    }
  }
  return rep;
}

Report xxx_frame_check(const Population& pop) {
  require_type_a(pop, FamilyKind::Xxx);
  const Problem& p = pop.problem;
  const int N = p.rs.rank();
  const Rational& h = p.family.h;
  const auto& kappa = std::get<MultWeight>(pop.base().weight).kappa;
  std::vector<DiscreteExpPoly> us;
  Report rep;
  int k = 0;
  for (const auto& w : staircase_words(N)) {
    const PopNode& n = node_for(pop, w);
    // replay the word: reflecting in direction 1 multiplies the first
    // function by kappa_1 of the current weight
    MultWeight cur = std::get<MultWeight>(pop.base().weight);
    Rational mult = 1;
    for (int letter : w.letters) {
      if (letter == 0) mult *= cur.kappa[0];
      cur = reflect_mult(p.rs, letter, cur);
    }
    Rational expect = 1;
    for (int j = 0; j < k; ++j) expect *= kappa[j];
    rep.add(idx("xxx_multiplier", k + 1), mult == expect, to_string(mult));
    us.push_back({mult, n.tuple.ys[0]});
    ++k;
  }
  for (int i = 1; i <= N + 1; ++i) {
    DiscreteExpPoly w = discrete_wronskian(std::vector<DiscreteExpPoly>(us.begin(), us.begin() + i), h);
    Rational expect = 1;
    Poly divisor = Poly::constant(1);
    for (int j = 1; j < i; ++j) {
      for (int e = 0; e < i - j; ++e) expect *= kappa[j - 1];
      const Poly Tj = build_T_h(p, j - 1);
      for (int s = 1; s <= i - j; ++s) divisor *= shift(Tj, (Rational(s) + Rational(j) / 2 - Rational(3, 2)) * h);
    }
    if (w.multiplier != expect) {
      rep.add(idx("xxx_frame", i), false, "multiplier " + to_string(w.multiplier) + " != " + to_string(expect));
      continue;
    }
    Poly q;
    try {
      q = exact_div(w.part, divisor);
    } catch (const Error& e) {
      rep.add(idx("xxx_frame", i), false, e.what());
      continue;
    }
    if (i > N) {
      rep.add(idx("xxx_frame", i), q.degree() == 0, "full discrete Wronskian over its frame divisor");
      continue;
    }
    const Poly& yi = pop.base().tuple.ys[i - 1];
    const Rational half_shift = Rational(i - 1) / 2 * h;
    auto c = proportionality(q, shift(yi, half_shift));
    rep.add(idx("xxx_frame", i), c && *c != 0,
            c && *c != 0 ? "quotient proportional to y_i(x + " + to_string(half_shift) + ")"
                         : "quotient is not proportional to y_i(x + " + to_string(half_shift) + ")");
  }
  return rep;
}

Report kernel_checks(const Population& pop) {
  switch (pop.problem.family.kind) {
    case FamilyKind::Trig: {
      KernelBasis kb = kernel_basis(pop);
      Report rep = verify_reconstruction(kb, pop);
      rep.merge(kernel_shape_check(kb, pop));
      rep.merge(full_wronskian_check(kb, pop));
      rep.merge(same_middle_check(pop));
      return rep;
    }
    case FamilyKind::Exp: return exp_kernel_checks(pop);
    case FamilyKind::Xxx: return xxx_frame_check(pop);
  }
  return {};
}

}  // namespace bp
