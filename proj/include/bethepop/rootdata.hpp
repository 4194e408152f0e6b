#pragma once

#include <map>
#include <string>
#include <vector>

#include "bethepop/exactmath.hpp"

namespace bp {

enum class Family { A, B, C, D, E, F, G, Custom };

class RootSystem {
 public:
  // Bourbaki-ordered simple types; InvalidType otherwise
  static RootSystem make(Family family, int rank);
  // "A2", "B3", "G2", ...
  static RootSystem parse(const std::string& name);
  // generalized Cartan matrix (symmetrizable); Family::Custom, no Weyl orbits
  static RootSystem from_cartan(const std::vector<std::vector<int>>& a);

  Family family() const { return family_; }
  int rank() const { return rank_; }
  std::string name() const;
  int a(int i, int j) const { return a_[i][j]; }
  int d(int i) const { return d_[i]; }
  // (alpha_i, alpha_j)
  int form(int i, int j) const { return d_[i] * a_[i][j]; }
  const std::vector<std::vector<int>>& cartan() const { return a_; }
  const std::vector<int>& symmetrizer() const { return d_; }
  bool is_finite() const { return family_ != Family::Custom; }
  bool operator==(const RootSystem& o) const { return a_ == o.a_; }

 private:
  RootSystem(Family f, std::vector<std::vector<int>> a, std::vector<int> d);
  Family family_ = Family::A;
  int rank_ = 0;
  std::vector<std::vector<int>> a_;
  std::vector<int> d_;
};

// m_i = <lambda, alpha_i^vee>
struct WeightVec {
  std::vector<Rational> m;
  bool operator==(const WeightVec& o) const { return m == o.m; }
  bool operator<(const WeightVec& o) const { return m < o.m; }
};

// kappa_i standing for exp(<lambda, alpha_i^vee> h)
struct MultWeight {
  std::vector<Rational> kappa;
  bool operator==(const MultWeight& o) const { return kappa == o.kappa; }
  bool operator<(const MultWeight& o) const { return kappa < o.kappa; }
};

// letters are 0-based; the first letter acts first
struct WeylWord {
  std::vector<int> letters;
  WeylWord then(int i) const;
};

WeightVec rho(const RootSystem& rs);
WeightVec reflect_shifted(const RootSystem& rs, int i, const WeightVec& w);
WeightVec reflect_plain(const RootSystem& rs, int i, const WeightVec& w);
MultWeight reflect_mult(const RootSystem& rs, int i, const MultWeight& k);

WeightVec apply_shifted(const RootSystem& rs, const WeylWord& w, WeightVec v);
WeightVec apply_plain(const RootSystem& rs, const WeylWord& w, WeightVec v);
MultWeight apply_mult(const RootSystem& rs, const WeylWord& w, MultWeight k);

// BFS over reflections; UnsupportedType for non-finite systems.
// Orbit elements paired with a shortest word reaching them.
std::vector<std::pair<WeightVec, WeylWord>> shifted_orbit(const RootSystem& rs, const WeightVec& w);
std::vector<std::pair<WeightVec, WeylWord>> plain_orbit(const RootSystem& rs, const WeightVec& w);
std::vector<std::pair<MultWeight, WeylWord>> mult_orbit(const RootSystem& rs, const MultWeight& k);

bool is_strongly_nonintegral(const RootSystem& rs, const WeightVec& w);
// same test along the plain orbit
bool is_strongly_nonintegral_plain(const RootSystem& rs, const WeightVec& w);
// orbit points pairwise distinct and no kappa coordinate equal to 1 along the orbit
bool is_mult_generic(const RootSystem& rs, const MultWeight& k);

long weyl_group_order(const RootSystem& rs);

// Identifies Weyl group elements by their image of a fixed non-integral weight
class WeylKeyer {
 public:
  explicit WeylKeyer(const RootSystem& rs);
  WeightVec key(const WeylWord& w) const;
  const WeightVec& reference() const { return ref_; }

 private:
  RootSystem rs_;
  WeightVec ref_;
};

// <Lambda_infinity, alpha_j^vee> = sum_s <Lambda_s, alpha_j^vee> - sum_i l_i a_ji
WeightVec lambda_infinity(const RootSystem& rs, const std::vector<WeightVec>& Lambda, const std::vector<int>& l);

// Folding of a non-simply-laced source into a target whose simple roots
// are grouped over the source ones.
struct Folding {
  RootSystem source;
  RootSystem target;
  std::vector<int> target_to_source;
  std::vector<std::vector<int>> letters;  // source letter -> target letters

  static Folding make(const RootSystem& source);  // B_N -> A_{2N-1}, G2 -> C3
  WeightVec fold_weight(const WeightVec& w) const;
  MultWeight fold_weight(const MultWeight& k) const;
  std::vector<Poly> fold_tuple(const std::vector<Poly>& ys) const;
  WeylWord fold_word(const WeylWord& w) const;
};

}  // namespace bp
