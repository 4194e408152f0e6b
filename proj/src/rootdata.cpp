#include "bethepop/rootdata.hpp"

#include <deque>
#include <numeric>
#include <stdexcept>

namespace bp {

namespace {

using Gram = std::vector<std::vector<int>>;

Gram gram_for(Family f, int r) {
  Gram g(r, std::vector<int>(r, 0));
  auto link = [&](int i, int j, int v) { g[i][j] = g[j][i] = v; };
  switch (f) {
    case Family::A:
      for (int i = 0; i < r; ++i) g[i][i] = 2;
      for (int i = 0; i + 1 < r; ++i) link(i, i + 1, -1);
      break;
    case Family::B:
      for (int i = 0; i < r; ++i) g[i][i] = i + 1 < r ? 4 : 2;
      for (int i = 0; i + 1 < r; ++i) link(i, i + 1, -2);
      break;
    case Family::C:
      for (int i = 0; i < r; ++i) g[i][i] = i + 1 < r ? 2 : 4;
      for (int i = 0; i + 1 < r; ++i) link(i, i + 1, i + 2 < r ? -1 : -2);
      break;
    case Family::D:
      for (int i = 0; i < r; ++i) g[i][i] = 2;
      for (int i = 0; i + 2 < r; ++i) link(i, i + 1, -1);
      link(r - 3, r - 1, -1);
      break;
    case Family::E:
      for (int i = 0; i < r; ++i) g[i][i] = 2;
      link(0, 2, -1);
      link(1, 3, -1);
      for (int i = 2; i + 1 < r; ++i) link(i, i + 1, -1);
      break;
    case Family::F:
      g[0][0] = g[1][1] = 4;
      g[2][2] = g[3][3] = 2;
      link(0, 1, -2);
      link(1, 2, -2);
      link(2, 3, -1);
      break;
    case Family::G:
      g[0][0] = 2;
      g[1][1] = 6;
      link(0, 1, -3);
      break;
    case Family::Custom:
      break;
  }
  return g;
}

bool valid_rank(Family f, int r) {
  switch (f) {
    case Family::A: return r >= 1;
    case Family::B:
    case Family::C: return r >= 2;
    case Family::D: return r >= 4;
    case Family::E: return r >= 6 && r <= 8;
    case Family::F: return r == 4;
    case Family::G: return r == 2;
    case Family::Custom: return false;
  }
  return false;
}

template <class W, class Step>
std::vector<std::pair<W, WeylWord>> bfs_orbit(const RootSystem& rs, const W& start, Step step) {
  if (!rs.is_finite()) throw Error(ErrorCode::UnsupportedType, "orbit enumeration needs a finite type");
  std::map<W, size_t> seen;
  std::vector<std::pair<W, WeylWord>> out;
  std::deque<size_t> queue;
  seen.emplace(start, 0);
  out.push_back({start, WeylWord{}});
  queue.push_back(0);
  while (!queue.empty()) {
    size_t cur = queue.front();
    queue.pop_front();
    for (int i = 0; i < rs.rank(); ++i) {
      W next = step(i, out[cur].first);
      if (seen.count(next)) continue;
      seen.emplace(next, out.size());
      out.push_back({next, out[cur].second.then(i)});
      queue.push_back(out.size() - 1);
    }
  }
  return out;
}

}  // namespace

RootSystem::RootSystem(Family f, std::vector<std::vector<int>> a, std::vector<int> d)
    : family_(f), rank_(static_cast<int>(a.size())), a_(std::move(a)), d_(std::move(d)) {
  for (int i = 0; i < rank_; ++i) {
    if (a_[i][i] != 2) throw Error(ErrorCode::InvalidType, "diagonal Cartan entry must be 2");
    for (int j = 0; j < rank_; ++j) {
      if (i == j) continue;
      if (a_[i][j] > 0 || ((a_[i][j] == 0) != (a_[j][i] == 0)))
        throw Error(ErrorCode::InvalidType, "not a generalized Cartan matrix");
      if (d_[i] * a_[i][j] != d_[j] * a_[j][i]) throw Error(ErrorCode::InvalidType, "symmetrizer mismatch");
    }
  }
}

RootSystem RootSystem::make(Family f, int r) {
  if (!valid_rank(f, r)) throw Error(ErrorCode::InvalidType, "no simple type of this family and rank " + std::to_string(r));
  Gram g = gram_for(f, r);
  std::vector<std::vector<int>> a(r, std::vector<int>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) a[i][j] = 2 * g[i][j] / g[i][i];
  std::vector<int> d(r);
  int common = 0;
  for (int i = 0; i < r; ++i) common = std::gcd(common, g[i][i] / 2);
  for (int i = 0; i < r; ++i) d[i] = g[i][i] / 2 / common;
  return RootSystem(f, std::move(a), std::move(d));
}

RootSystem RootSystem::parse(const std::string& name) {
  if (name.size() < 2) throw Error(ErrorCode::InvalidType, "bad root system name '" + name + "'");
  Family f;
  switch (name[0]) {
    case 'A': f = Family::A; break;
    case 'B': f = Family::B; break;
    case 'C': f = Family::C; break;
    case 'D': f = Family::D; break;
    case 'E': f = Family::E; break;
    case 'F': f = Family::F; break;
    case 'G': f = Family::G; break;
    default: throw Error(ErrorCode::InvalidType, "bad root system name '" + name + "'");
  }
  int r = 0;
  for (size_t k = 1; k < name.size(); ++k) {
    if (name[k] < '0' || name[k] > '9' || r > 1000) throw Error(ErrorCode::InvalidType, "bad root system name '" + name + "'");
    r = r * 10 + (name[k] - '0');
  }
  return make(f, r);
}

RootSystem RootSystem::from_cartan(const std::vector<std::vector<int>>& a) {
  const int r = static_cast<int>(a.size());
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != r) throw Error(ErrorCode::InvalidType, "Cartan matrix must be square");
  // symmetrizer by propagation along the Dynkin graph, d_j = d_i a_ij / a_ji
  std::vector<Rational> d(r, 0);
  for (int root = 0; root < r; ++root) {
    if (d[root] != 0) continue;
    d[root] = 1;
    std::deque<int> q{root};
    while (!q.empty()) {
      int i = q.front();
      q.pop_front();
      for (int j = 0; j < r; ++j) {
        if (j == i || a[i][j] == 0 || a[j][i] == 0) continue;
        Rational dj = d[i] * a[i][j] / a[j][i];
        if (d[j] == 0) {
          d[j] = dj;
          q.push_back(j);
        } else if (d[j] != dj) {
          throw Error(ErrorCode::InvalidType, "Cartan matrix is not symmetrizable");
        }
      }
    }
  }
  mpz_class l = 1;
  for (const auto& x : d) l = lcm(l, mpz_class(x.get_den()));
  std::vector<int> di(r);
  mpz_class g = 0;
  for (int i = 0; i < r; ++i) {
    Rational v = d[i] * l;
    g = gcd(g, v.get_num());
  }
  for (int i = 0; i < r; ++i) di[i] = static_cast<int>(Rational(d[i] * l / g).get_num().get_si());
  return RootSystem(Family::Custom, a, std::move(di));
}

std::string RootSystem::name() const {
  static const char* letters = "ABCDEFG";
  if (family_ == Family::Custom) return "custom" + std::to_string(rank_);
  return std::string(1, letters[static_cast<int>(family_)]) + std::to_string(rank_);
}

WeylWord WeylWord::then(int i) const {
  WeylWord w = *this;
  w.letters.push_back(i);
  return w;
}

WeightVec rho(const RootSystem& rs) { return {std::vector<Rational>(rs.rank(), Rational(1))}; }

WeightVec reflect_shifted(const RootSystem& rs, int i, const WeightVec& w) {
  WeightVec out = w;
  Rational c = w.m[i] + 1;
  for (int j = 0; j < rs.rank(); ++j) out.m[j] -= c * rs.a(j, i);
  return out;
}

WeightVec reflect_plain(const RootSystem& rs, int i, const WeightVec& w) {
  WeightVec out = w;
  Rational c = w.m[i];
  for (int j = 0; j < rs.rank(); ++j) out.m[j] -= c * rs.a(j, i);
  return out;
}

MultWeight reflect_mult(const RootSystem& rs, int i, const MultWeight& k) {
  MultWeight out = k;
  const Rational& ki = k.kappa[i];
  if (ki == 0) throw Error(ErrorCode::InvalidInput, "multiplicative weight has a zero coordinate");
  for (int j = 0; j < rs.rank(); ++j) {
    int e = -rs.a(j, i);
    Rational f = 1;
    Rational base = e >= 0 ? ki : Rational(1 / ki);
    for (int t = 0; t < std::abs(e); ++t) f *= base;
    out.kappa[j] *= f;
  }
  return out;
}

WeightVec apply_shifted(const RootSystem& rs, const WeylWord& w, WeightVec v) {
  for (int i : w.letters) v = reflect_shifted(rs, i, v);
  return v;
}

WeightVec apply_plain(const RootSystem& rs, const WeylWord& w, WeightVec v) {
  for (int i : w.letters) v = reflect_plain(rs, i, v);
  return v;
}

MultWeight apply_mult(const RootSystem& rs, const WeylWord& w, MultWeight k) {
  for (int i : w.letters) k = reflect_mult(rs, i, k);
  return k;
}

std::vector<std::pair<WeightVec, WeylWord>> shifted_orbit(const RootSystem& rs, const WeightVec& w) {
  return bfs_orbit(rs, w, [&](int i, const WeightVec& v) { return reflect_shifted(rs, i, v); });
}

std::vector<std::pair<WeightVec, WeylWord>> plain_orbit(const RootSystem& rs, const WeightVec& w) {
  return bfs_orbit(rs, w, [&](int i, const WeightVec& v) { return reflect_plain(rs, i, v); });
}

std::vector<std::pair<MultWeight, WeylWord>> mult_orbit(const RootSystem& rs, const MultWeight& k) {
  return bfs_orbit(rs, k, [&](int i, const MultWeight& v) { return reflect_mult(rs, i, v); });
}

bool is_strongly_nonintegral(const RootSystem& rs, const WeightVec& w) {
  for (const auto& [v, word] : shifted_orbit(rs, w))
    for (const auto& c : v.m)
      if (is_integer(c)) return false;
  return true;
}

bool is_strongly_nonintegral_plain(const RootSystem& rs, const WeightVec& w) {
  for (const auto& [v, word] : plain_orbit(rs, w))
    for (const auto& c : v.m)
      if (is_integer(c)) return false;
  return true;
}

bool is_mult_generic(const RootSystem& rs, const MultWeight& k) {
  auto orbit = mult_orbit(rs, k);
  if (static_cast<long>(orbit.size()) != weyl_group_order(rs)) return false;
  for (const auto& [v, word] : orbit)
    for (const auto& c : v.kappa)
      if (c == 1) return false;
  return true;
}

long weyl_group_order(const RootSystem& rs) {
  auto fact = [](long n) {
    long f = 1;
    for (long k = 2; k <= n; ++k) f *= k;
    return f;
  };
  const long r = rs.rank();
  switch (rs.family()) {
    case Family::A: return fact(r + 1);
    case Family::B:
    case Family::C: return (1L << r) * fact(r);
    case Family::D: return (1L << (r - 1)) * fact(r);
    case Family::E: return r == 6 ? 51840L : r == 7 ? 2903040L : 696729600L;
    case Family::F: return 1152;
    case Family::G: return 12;
    case Family::Custom: break;
  }
  throw Error(ErrorCode::UnsupportedType, "Weyl group of a non-finite type");
}

WeylKeyer::WeylKeyer(const RootSystem& rs) : rs_(rs) {
  ref_.m.resize(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) ref_.m[i] = Rational(1, 2 * (i + 1) + 3);
  if (rs.is_finite() && weyl_group_order(rs) <= 100000) {
    auto orbit = plain_orbit(rs, ref_);
    if (static_cast<long>(orbit.size()) != weyl_group_order(rs))
      throw std::logic_error("reference weight has a nontrivial stabilizer in " + rs.name());
  }
}

WeightVec WeylKeyer::key(const WeylWord& w) const { return apply_plain(rs_, w, ref_); }

WeightVec lambda_infinity(const RootSystem& rs, const std::vector<WeightVec>& Lambda, const std::vector<int>& l) {
  WeightVec out{std::vector<Rational>(rs.rank(), Rational(0))};
  for (const auto& L : Lambda)
    for (int j = 0; j < rs.rank(); ++j) out.m[j] += L.m[j];
  for (int i = 0; i < rs.rank() && i < static_cast<int>(l.size()); ++i)
    for (int j = 0; j < rs.rank(); ++j) out.m[j] -= Rational(l[i] * rs.a(j, i));
  return out;
}

Folding Folding::make(const RootSystem& source) {
  Folding f{source, source, {}, {}};
  if (source.family() == Family::B) {
    const int n = source.rank();
    f.target = RootSystem::make(Family::A, 2 * n - 1);
    for (int t = 0; t < 2 * n - 1; ++t) f.target_to_source.push_back(std::min(t, 2 * n - 2 - t));
  } else if (source.family() == Family::G) {
    // the long root of G2 is the one that gets doubled
    f.target = RootSystem::make(Family::C, 3);
    f.target_to_source = {1, 0, 1};
  } else {
    throw Error(ErrorCode::UnsupportedType, "no folding for " + source.name());
  }
  f.letters.resize(source.rank());
  for (int t = 0; t < f.target.rank(); ++t) f.letters[f.target_to_source[t]].push_back(t);
  return f;
}

WeightVec Folding::fold_weight(const WeightVec& w) const {
  WeightVec out;
  for (int s : target_to_source) out.m.push_back(w.m[s]);
  return out;
}

MultWeight Folding::fold_weight(const MultWeight& k) const {
  MultWeight out;
  for (int s : target_to_source) out.kappa.push_back(k.kappa[s]);
  return out;
}

std::vector<Poly> Folding::fold_tuple(const std::vector<Poly>& ys) const {
  std::vector<Poly> out;
  for (int s : target_to_source) out.push_back(ys[s]);
  return out;
}

WeylWord Folding::fold_word(const WeylWord& w) const {
  WeylWord out;
  for (int i : w.letters)
    for (int t : letters[i]) out.letters.push_back(t);
  return out;
}

}  // namespace bp
