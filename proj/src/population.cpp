#include "bethepop/population.hpp"

#include <cstdlib>
#include <deque>
#include <set>

namespace bp {

std::optional<size_t> Population::find(const Weight& w) const {
  auto it = index.find(coords(w));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

long default_max_nodes(const RootSystem& rs) {
  if (const char* env = std::getenv("BETHE_MAX_NODES")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 4 * weyl_group_order(rs);
}

bool weight_is_generic(const Problem& p, const Weight& w) {
  switch (p.family.kind) {
    case FamilyKind::Trig: return is_strongly_nonintegral(p.rs, std::get<WeightVec>(w));
    case FamilyKind::Exp: return is_strongly_nonintegral_plain(p.rs, std::get<WeightVec>(w));
    case FamilyKind::Xxx: return is_mult_generic(p.rs, std::get<MultWeight>(w));
  }
  return false;
}

Population generate(const Problem& p, const PolyTuple& start, const Weight& w, long max_nodes) {
  p.validate();
  const int r = p.rs.rank();
  if (static_cast<int>(start.ys.size()) != r) throw Error(ErrorCode::InvalidInput, "tuple length differs from rank");
  if (static_cast<int>(coords(w).size()) != r) throw Error(ErrorCode::InvalidInput, "weight length differs from rank");
  if (!weight_is_generic(p, w)) throw Error(ErrorCode::InvalidInput, "weight is not strongly non-integral for this family");
  if (max_nodes <= 0) max_nodes = default_max_nodes(p.rs);

  Population pop{p, {}, {}, {}, {}};
  PolyTuple base = start;
  for (auto& y : base.ys) y = monicize(y);
  pop.nodes.push_back({base, w, WeylWord{}});
  pop.edges.push_back(std::vector<long>(r, -1));
  pop.index.emplace(coords(w), 0);

  std::deque<size_t> queue{0};
  while (!queue.empty()) {
    const size_t u = queue.front();
    queue.pop_front();
    for (int i = 0; i < r; ++i) {
      PopNode next;
      try {
        next.tuple = reproduce(p, pop.nodes[u].tuple, pop.nodes[u].weight, i);
      } catch (const Error& e) {
        pop.failures.push_back({u, i, e.code(), e.what()});
        continue;
      }
      next.weight = reflect(p, i, pop.nodes[u].weight);
      next.word = pop.nodes[u].word.then(i);
      auto it = pop.index.find(coords(next.weight));
      if (it != pop.index.end()) {
        if (!(pop.nodes[it->second].tuple == next.tuple))
          throw Error(ErrorCode::PathDependence, "two words reach the same weight with different tuples");
        pop.edges[u][i] = static_cast<long>(it->second);
        continue;
      }
      if (static_cast<long>(pop.nodes.size()) >= max_nodes)
        throw Error(ErrorCode::PopulationOverflow, "population exceeds " + std::to_string(max_nodes) + " nodes");
      const size_t v = pop.nodes.size();
      pop.index.emplace(coords(next.weight), v);
      pop.nodes.push_back(std::move(next));
      pop.edges.push_back(std::vector<long>(r, -1));
      pop.edges[u][i] = static_cast<long>(v);
      queue.push_back(v);
    }
  }
  return pop;
}

namespace {

// fresh reproductions along a word; nullopt on any failure
std::optional<PolyTuple> walk(const Problem& p, PolyTuple t, Weight w, const std::vector<int>& letters) {
  try {
    for (int i : letters) {
      t = reproduce(p, t, w, i);
      w = reflect(p, i, w);
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  return t;
}

int braid_order(const RootSystem& rs, int i, int j) {
  switch (rs.a(i, j) * rs.a(j, i)) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return 0;
  }
}

std::string counts(size_t checked, size_t bad) {
  return "checked " + std::to_string(checked) + ", violations " + std::to_string(bad);
}

}  // namespace

Report check_relations(const Population& pop) {
  const Problem& p = pop.problem;
  const int r = p.rs.rank();
  struct Tally {
    size_t checked = 0, bad = 0;
  };
  std::map<std::string, Tally> tally;
  for (const auto& node : pop.nodes) {
    for (int i = 0; i < r; ++i) {
      auto back = walk(p, node.tuple, node.weight, {i, i});
      auto& t = tally["involution"];
      ++t.checked;
      if (!back || !(*back == node.tuple)) ++t.bad;
    }
    for (int i = 0; i < r; ++i) {
      for (int j = i + 1; j < r; ++j) {
        const int m = braid_order(p.rs, i, j);
        if (m == 0) continue;
        std::vector<int> left, right;
        for (int k = 0; k < m; ++k) {
          left.push_back(k % 2 ? j : i);
          right.push_back(k % 2 ? i : j);
        }
        auto a = walk(p, node.tuple, node.weight, left);
        auto b = walk(p, node.tuple, node.weight, right);
        auto& t = tally[m == 2 ? "commuting" : "braid" + std::to_string(m)];
        ++t.checked;
        if (!a || !b || !(*a == *b)) ++t.bad;
      }
    }
  }
  Report rep;
  for (const auto& [name, t] : tally) rep.add(name, t.bad == 0, counts(t.checked, t.bad));
  return rep;
}

WeylLabel weyl_label(const Population& pop) {
  WeylLabel lab;
  for (const auto& n : pop.nodes) lab.words.push_back(n.word);
  WeylKeyer keyer(pop.problem.rs);
  std::set<WeightVec> keys;
  for (const auto& w : lab.words) keys.insert(keyer.key(w));
  lab.bijective = pop.closed() && static_cast<long>(pop.nodes.size()) == weyl_group_order(pop.problem.rs) &&
                  keys.size() == pop.nodes.size() && pop.index.size() == pop.nodes.size();
  return lab;
}

Report fold_check(const Population& source, const Population& target, const Folding& f) {
  Report rep;
  if (!(source.problem.rs == f.source) || !(target.problem.rs == f.target)) {
    rep.add("types", false, "populations do not match the folding");
    return rep;
  }
  WeylKeyer keyer(f.target);
  size_t missing = 0, tuple_bad = 0, word_bad = 0;
  for (const auto& n : source.nodes) {
    Weight fw = std::holds_alternative<WeightVec>(n.weight) ? Weight(f.fold_weight(std::get<WeightVec>(n.weight)))
                                                             : Weight(f.fold_weight(std::get<MultWeight>(n.weight)));
    auto hit = target.find(fw);
    if (!hit) {
      ++missing;
      continue;
    }
    const PopNode& t = target.nodes[*hit];
    if (!(t.tuple.ys == f.fold_tuple(n.tuple.ys))) ++tuple_bad;
    if (!(keyer.key(t.word) == keyer.key(f.fold_word(n.word)))) ++word_bad;
  }
  const size_t total = source.nodes.size();
  rep.add("weights_embedded", missing == 0, counts(total, missing));
  rep.add("tuples_embedded", tuple_bad == 0, counts(total - missing, tuple_bad));
  rep.add("words_compatible", word_bad == 0, counts(total - missing, word_bad));
  return rep;
}

Report degree_law_check(const Population& pop) {
  const Problem& p = pop.problem;
  const int r = p.rs.rank();
  std::vector<int> degT(r);
  for (int i = 0; i < r; ++i) degT[i] = family_T(p, i).degree();
  size_t checked = 0, bad = 0;
  for (size_t u = 0; u < pop.nodes.size(); ++u) {
    for (int i = 0; i < r; ++i) {
      const long v = pop.edges[u][i];
      if (v < 0) continue;
      auto du = pop.nodes[u].tuple.degrees();
      auto dv = pop.nodes[v].tuple.degrees();
      int expect = degT[i] - du[i];
      for (int j = 0; j < r; ++j)
        if (j != i) expect -= p.rs.a(i, j) * du[j];
      bool ok = dv[i] == expect;
      for (int j = 0; j < r; ++j)
        if (j != i && dv[j] != du[j]) ok = false;
      ++checked;
      bad += !ok;
    }
  }
  Report rep;
  rep.add("degree_law", bad == 0, counts(checked, bad));
  return rep;
}

Report population_invariants(const Population& pop) {
  const Problem& p = pop.problem;
  const int r = p.rs.rank();
  Report rep;
  rep.add("closed", pop.closed(), std::to_string(pop.failures.size()) + " reproduction failures");

  size_t inv_bad = 0, inv_checked = 0;
  for (size_t u = 0; u < pop.nodes.size(); ++u)
    for (int i = 0; i < r; ++i) {
      const long v = pop.edges[u][i];
      if (v < 0) continue;
      ++inv_checked;
      if (pop.edges[v][i] != static_cast<long>(u)) ++inv_bad;
    }
  rep.add("edge_involution", inv_bad == 0, counts(inv_checked, inv_bad));

  size_t w_bad = 0;
  for (const auto& n : pop.nodes)
    if (coords(apply_word(p, n.word, pop.base().weight)) != coords(n.weight)) ++w_bad;
  rep.add("weight_consistency", w_bad == 0, counts(pop.nodes.size(), w_bad));

  // M_i = deg T_i - sum_j a_ij l_j moves by the plain reflection
  auto m_vector = [&](const PolyTuple& t) {
    WeightVec m{std::vector<Rational>(r)};
    auto l = t.degrees();
    for (int i = 0; i < r; ++i) {
      long v = family_T(p, i).degree();
      for (int j = 0; j < r; ++j) v -= static_cast<long>(p.rs.a(i, j)) * l[j];
      m.m[i] = v;
    }
    return m;
  };
  const WeightVec m0 = m_vector(pop.base().tuple);
  size_t d_bad = 0;
  for (const auto& n : pop.nodes)
    if (!(apply_plain(p.rs, n.word, m0) == m_vector(n.tuple))) ++d_bad;
  rep.add("degree_weight_transport", d_bad == 0, counts(pop.nodes.size(), d_bad));

  std::vector<Verdict> crit;
  for (const auto& n : pop.nodes) crit.push_back(verify_critical_point(p, n.tuple, n.weight, n.tuple.degrees()));
  size_t c_checked = 0, c_bad = 0;
  for (size_t u = 0; u < pop.nodes.size(); ++u)
    for (int i = 0; i < r; ++i) {
      const long v = pop.edges[u][i];
      if (v < 0 || crit[u] != Verdict::Pass || !is_off_diagonal(p, pop.nodes[v].tuple)) continue;
      ++c_checked;
      if (crit[v] != Verdict::Pass) ++c_bad;
    }
  rep.add("descendants_critical", c_bad == 0, counts(c_checked, c_bad));
  return rep;
}

}  // namespace bp
