#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bethepop/report.hpp"
#include "bethepop/reproduce.hpp"

namespace bp {

struct PopNode {
  PolyTuple tuple;
  Weight weight;
  WeylWord word;
};

struct PopFailure {
  size_t node;
  int direction;
  ErrorCode code;
  std::string message;
};

struct Population {
  Problem problem;
  std::vector<PopNode> nodes;  // nodes[0] is the base
  std::vector<std::vector<long>> edges;  // node x direction -> node, -1 on failure
  std::vector<PopFailure> failures;
  std::map<std::vector<Rational>, size_t> index;

  const PopNode& base() const { return nodes.front(); }
  std::optional<size_t> find(const Weight& w) const;
  bool closed() const { return failures.empty(); }
};

// 4|W|, or BETHE_MAX_NODES when set
long default_max_nodes(const RootSystem& rs);

// Throws InvalidInput when the weight is not generic for the family,
// PopulationOverflow past max_nodes and PathDependence on a key collision
// with a different tuple. Reproduction failures are recorded, not thrown.
Population generate(const Problem& p, const PolyTuple& start, const Weight& w, long max_nodes = 0);

// genericity required by generate for the problem's family
bool weight_is_generic(const Problem& p, const Weight& w);

// involution, commuting, braid relations of order 3, 4, 6, each recomputed
// by fresh reproductions from every node
Report check_relations(const Population& pop);

struct WeylLabel {
  std::vector<WeylWord> words;  // by node
  bool bijective = false;
};
WeylLabel weyl_label(const Population& pop);

Report fold_check(const Population& source, const Population& target, const Folding& f);

// deg y~_i = deg T_i + sum_{j != i} (-a_ij) deg y_j - deg y_i on every edge
Report degree_law_check(const Population& pop);
// closure, edge involution, weight = word(base), degree/weight transport,
// descendants of critical tuples are critical
Report population_invariants(const Population& pop);

}  // namespace bp
