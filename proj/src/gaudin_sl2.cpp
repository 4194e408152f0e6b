#include "bethepop/gaudin_sl2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace bp {

Sl2Tensor::Sl2Tensor(std::vector<int> Lambda) : Lambda_(std::move(Lambda)) {
  if (Lambda_.empty()) throw Error(ErrorCode::InvalidInput, "empty tensor product");
  for (int L : Lambda_)
    if (L < 0) throw Error(ErrorCode::InvalidInput, "highest weights must be dominant integral");
  std::vector<int> m(Lambda_.size(), 0);
  while (true) {
    index_[m] = basis_.size();
    basis_.push_back(m);
    size_t s = 0;
    while (s < m.size() && m[s] == Lambda_[s]) m[s++] = 0;
    if (s == m.size()) break;
    ++m[s];
  }
}

int Sl2Tensor::total() const { return std::accumulate(Lambda_.begin(), Lambda_.end(), 0); }

int Sl2Tensor::weight(size_t b) const {
  return total() - 2 * std::accumulate(basis_[b].begin(), basis_[b].end(), 0);
}

std::vector<size_t> Sl2Tensor::block(int nu) const {
  std::vector<size_t> out;
  for (size_t b = 0; b < basis_.size(); ++b)
    if (weight(b) == nu) out.push_back(b);
  return out;
}

std::optional<size_t> Sl2Tensor::index(const std::vector<int>& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Eigen::MatrixXd Sl2Tensor::e(size_t s) const {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim(), dim());
  for (size_t b = 0; b < dim(); ++b) {
    const int ms = basis_[b][s];
    if (ms == 0) continue;
    auto t = basis_[b];
    --t[s];
    M(*index(t), b) = ms * (Lambda_[s] - ms + 1);
  }
  return M;
}

Eigen::MatrixXd Sl2Tensor::f(size_t s) const {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim(), dim());
  for (size_t b = 0; b < dim(); ++b) {
    if (basis_[b][s] == Lambda_[s]) continue;
    auto t = basis_[b];
    ++t[s];
    M(*index(t), b) = 1;
  }
  return M;
}

Eigen::MatrixXd Sl2Tensor::h(size_t s) const {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim(), dim());
  for (size_t b = 0; b < dim(); ++b) M(b, b) = Lambda_[s] - 2 * basis_[b][s];
  return M;
}

std::vector<Rational> Sl2Tensor::apply_e(const std::vector<Rational>& v) const {
  std::vector<Rational> out(dim());
  for (size_t b = 0; b < dim(); ++b) {
    if (v[b] == 0) continue;
    for (size_t s = 0; s < factors(); ++s) {
      const int ms = basis_[b][s];
      if (ms == 0) continue;
      auto t = basis_[b];
      --t[s];
      out[*index(t)] += v[b] * (ms * (Lambda_[s] - ms + 1));
    }
  }
  return out;
}

std::vector<Rational> Sl2Tensor::apply_f(const std::vector<Rational>& v) const {
  std::vector<Rational> out(dim());
  for (size_t b = 0; b < dim(); ++b) {
    if (v[b] == 0) continue;
    for (size_t s = 0; s < factors(); ++s) {
      if (basis_[b][s] == Lambda_[s]) continue;
      auto t = basis_[b];
      ++t[s];
      out[*index(t)] += v[b];
    }
  }
  return out;
}

Eigen::MatrixXd to_double(const RMatrix& m) {
  Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m[0].size());
  for (size_t r = 0; r < m.size(); ++r)
    for (size_t c = 0; c < m[r].size(); ++c) out(r, c) = m[r][c].get_d();
  return out;
}

GaudinOperators build_gaudin(const Sl2Tensor& V, const std::vector<Complex>& z, Complex lambda_param) {
  const size_t n = V.factors();
  if (z.size() != n) throw Error(ErrorCode::InvalidInput, "need one point per factor");
  for (size_t i = 0; i < n; ++i) {
    if (std::abs(z[i]) < 1e-14) throw Error(ErrorCode::InvalidInput, "points must be nonzero");
    for (size_t j = 0; j < i; ++j)
      if (std::abs(z[i] - z[j]) < 1e-14) throw Error(ErrorCode::InvalidInput, "points must be distinct");
  }
  std::vector<Eigen::MatrixXd> e, f, h;
  for (size_t s = 0; s < n; ++s) {
    e.push_back(V.e(s));
    f.push_back(V.f(s));
    h.push_back(V.h(s));
  }
  GaudinOperators g;
  g.lambda_param = lambda_param;
  for (size_t i = 0; i < n; ++i) {
    Eigen::MatrixXcd H = (lambda_param / 2.0) * h[i].cast<Complex>();
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const Eigen::MatrixXd hh = h[i] * h[j] / 4.0;
      const Eigen::MatrixXd plus = hh + e[i] * f[j];
      const Eigen::MatrixXd minus = hh + f[i] * e[j];
      const Complex w = z[i] / z[j];
      H += (w * plus.cast<Complex>() + minus.cast<Complex>()) / (w - 1.0);
    }
    g.H.push_back(std::move(H));
  }
  return g;
}

Eigen::MatrixXcd restrict_block(const Eigen::MatrixXcd& M, const Sl2Tensor& V, int row_weight, int col_weight) {
  const auto rows = V.block(row_weight);
  const auto cols = V.block(col_weight);
  Eigen::MatrixXcd out(rows.size(), cols.size());
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c) out(r, c) = M(rows[r], cols[c]);
  return out;
}

double max_commutator(const GaudinOperators& g) {
  double worst = 0;
  for (size_t i = 0; i < g.H.size(); ++i)
    for (size_t j = i + 1; j < g.H.size(); ++j) {
      const double scale = g.H[i].norm() * g.H[j].norm();
      if (scale == 0) continue;
      worst = std::max(worst, (g.H[i] * g.H[j] - g.H[j] * g.H[i]).norm() / scale);
    }
  return worst;
}

Eigen::VectorXcd weight_function(const Sl2Tensor& V, const std::vector<Complex>& z, const std::vector<Complex>& t) {
  if (z.size() != V.factors()) throw Error(ErrorCode::InvalidInput, "need one point per factor");
  for (const auto& ti : t)
    for (const auto& zs : z)
      if (std::abs(ti - zs) < 1e-14) throw Error(ErrorCode::SingularConfiguration, "coordinate meets a marked point");
  const int l = static_cast<int>(t.size());
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(V.dim());
  for (size_t b = 0; b < V.dim(); ++b) {
    const auto& m = V.m(b);
    if (std::accumulate(m.begin(), m.end(), 0) != l) continue;
    std::vector<size_t> slot;
    double fact = 1;
    for (size_t s = 0; s < m.size(); ++s) {
      for (int k = 0; k < m[s]; ++k) {
        slot.push_back(s);
        fact *= k + 1;
      }
    }
    std::vector<int> perm(l);
    std::iota(perm.begin(), perm.end(), 0);
    Complex sum = 0;
    do {
      Complex term = 1;
      for (int k = 0; k < l; ++k) term /= t[perm[k]] - z[slot[k]];
      sum += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    w[b] = sum / fact;
  }
  return w;
}

EigenReport verify_bethe_eigen(const Sl2Tensor& V, const std::vector<Complex>& z, Complex lambda,
                               const std::vector<Complex>& t) {
  const Eigen::VectorXcd w = weight_function(V, z, t);
  const double nw = w.norm();
  if (nw < 1e-12) throw Error(ErrorCode::ZeroVector, "weight function vanishes");
  const double inf = V.total() - 2.0 * static_cast<double>(t.size());
  const GaudinOperators g = build_gaudin(V, z, lambda + 1.0 + inf / 2.0);
  EigenReport r;
  for (const auto& H : g.H) {
    const Eigen::VectorXcd Hw = H * w;
    const Complex mu = w.dot(Hw) / w.squaredNorm();
    const double res = (Hw - mu * w).norm() / nw;
    r.eigenvalues.push_back(mu);
    r.residuals.push_back(res);
    r.max_residual = std::max(r.max_residual, res);
  }
  return r;
}

namespace {

Rational falling(const Rational& x, long k) {
  Rational out = 1;
  for (long j = 0; j < k; ++j) out *= x - j;
  return out;
}

Rational binom(const Rational& x, long k) {
  if (k < 0) return 0;
  Rational f = 1;
  for (long j = 2; j <= k; ++j) f *= j;
  return falling(x, k) / f;
}

bool is_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

std::vector<Rational> unit(const Sl2Tensor& V, size_t b) {
  std::vector<Rational> v(V.dim());
  v[b] = 1;
  return v;
}

std::vector<Rational> f_power(const Sl2Tensor& V, std::vector<Rational> v, long k) {
  if (k > V.total()) return std::vector<Rational>(V.dim());
  for (long j = 0; j < k && !is_zero(v); ++j) v = V.apply_f(v);
  return v;
}

// u_0 = v, u_j = -e u_{j-1} / (j (mu - j + 1))
std::vector<std::vector<Rational>> u_chain(const Sl2Tensor& V, size_t b, const Rational& mu) {
  std::vector<std::vector<Rational>> u{unit(V, b)};
  for (long j = 1;; ++j) {
    auto next = V.apply_e(u.back());
    if (is_zero(next)) break;
    const Rational den = j * (mu - j + 1);
    if (den == 0) throw Error(ErrorCode::NonGeneric, "dynamical Weyl group denominator vanishes");
    for (auto& q : next) q = -q / den;
    u.push_back(std::move(next));
  }
  return u;
}

std::vector<Rational> dwg_column(const Sl2Tensor& V, const Rational& lambda, size_t b) {
  const int nu = V.weight(b);
  const Rational mu = lambda - nu;
  const auto u = u_chain(V, b, mu);
  Rational pref;
  if (nu >= 0) {
    const Rational d = falling(lambda + 1, nu);
    if (d == 0) throw Error(ErrorCode::NonGeneric, "dynamical Weyl group normalization vanishes");
    pref = 1 / d;
  } else {
    pref = falling(mu + 1, -nu);
  }
  std::vector<Rational> out(V.dim());
  for (size_t j = 0; j < u.size(); ++j) {
    const long k = nu + static_cast<long>(j);
    if (k < 0) continue;
    const Rational c = binom(lambda + 1, k);
    if (c == 0) continue;
    const auto term = f_power(V, u[j], k);
    for (size_t r = 0; r < out.size(); ++r) out[r] += pref * c * term[r];
  }
  return out;
}

void set_column(RMatrix& M, size_t c, const std::vector<Rational>& col) {
  for (size_t r = 0; r < col.size(); ++r) M[r][c] = col[r];
}

RMatrix zero_matrix(size_t n) { return RMatrix(n, std::vector<Rational>(n)); }

Eigen::MatrixXd sub(const Eigen::MatrixXd& M, const std::vector<size_t>& rows, const std::vector<size_t>& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c) out(r, c) = M(rows[r], cols[c]);
  return out;
}

std::vector<int> weights(const Sl2Tensor& V) {
  std::vector<int> out;
  for (int nu = V.total(); nu >= -V.total(); nu -= 2) out.push_back(nu);
  return out;
}

}  // namespace

RMatrix dwg_matrix(const Sl2Tensor& V, const Rational& lambda) {
  RMatrix M = zero_matrix(V.dim());
  for (size_t b = 0; b < V.dim(); ++b) set_column(M, b, dwg_column(V, lambda, b));
  return M;
}

RMatrix dwg_shifted_matrix(const Sl2Tensor& V, const Rational& lambda) {
  RMatrix M = zero_matrix(V.dim());
  for (size_t b = 0; b < V.dim(); ++b) set_column(M, b, dwg_column(V, lambda + V.weight(b), b));
  return M;
}

DWGOperator dwg_operator(const Sl2Tensor& V, long lambda) {
  if (lambda < V.total()) throw Error(ErrorCode::NonGeneric, "lambda must be dominant integral and at least sum Lambda_s");
  DWGOperator op;
  op.lambda = lambda;
  op.A = dwg_matrix(V, lambda);
  op.A_shifted = dwg_shifted_matrix(V, lambda);
  op.weights_flip = true;
  for (size_t r = 0; r < V.dim(); ++r)
    for (size_t c = 0; c < V.dim(); ++c)
      if ((op.A[r][c] != 0 || op.A_shifted[r][c] != 0) && V.weight(r) != -V.weight(c)) op.weights_flip = false;

  // X_P = sum_j C(lambda+1, P-j) F^{lambda+1-P+j} u_j must vanish for P <= mu
  op.lower_terms_vanish = true;
  for (size_t b = 0; b < V.dim() && op.lower_terms_vanish; ++b) {
    const long mu = lambda - V.weight(b);
    const auto u = u_chain(V, b, mu);
    for (long P = 0; P <= mu && op.lower_terms_vanish; ++P) {
      std::vector<Rational> X(V.dim());
      for (size_t j = 0; j < u.size(); ++j) {
        const long p = P - static_cast<long>(j);
        if (p < 0 || p > lambda + 1) continue;
        const auto term = f_power(V, u[j], lambda + 1 - p);
        const Rational c = binom(Rational(lambda + 1), p);
        for (size_t r = 0; r < X.size(); ++r) X[r] += c * term[r];
      }
      if (!is_zero(X)) op.lower_terms_vanish = false;
    }
  }
  return op;
}

CommutationReport dwg_commutation_check(const Sl2Tensor& V, const std::vector<Complex>& z, long lambda) {
  const Eigen::MatrixXd A = to_double(dwg_shifted_matrix(V, lambda));
  CommutationReport rep;
  for (int nu : weights(V)) {
    const auto cols = V.block(nu);
    const auto rows = V.block(-nu);
    const Eigen::MatrixXcd Ab = sub(A, rows, cols).cast<Complex>();
    const double p = lambda + 1 + nu / 2.0;
    const auto g1 = build_gaudin(V, z, p);
    const auto g2 = build_gaudin(V, z, -p);
    for (size_t i = 0; i < g1.H.size(); ++i) {
      const Eigen::MatrixXcd H1 = restrict_block(g1.H[i], V, nu, nu);
      const Eigen::MatrixXcd H2 = restrict_block(g2.H[i], V, -nu, -nu);
      const Eigen::MatrixXcd diff = Ab * H1 - H2 * Ab;
      const double scale = Ab.norm() * std::max(H1.norm(), H2.norm());
      if (scale == 0) continue;
      rep.max_relative = std::max(rep.max_relative, diff.norm() / scale);
    }
  }
  return rep;
}

double sine_angle(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0 || nb == 0) throw Error(ErrorCode::ZeroVector, "angle with a zero vector");
  const Eigen::VectorXcd ua = a / na, ub = b / nb;
  return (ua - ub.dot(ua) * ub).norm();
}

double dwg_limit_angle(const Sl2Tensor& V, const Rational& lambda) {
  const Eigen::MatrixXd A = to_double(dwg_shifted_matrix(V, lambda));
  double worst = 0;
  for (size_t b = 0; b < V.dim(); ++b) {
    std::vector<int> m = V.m(b);
    for (size_t s = 0; s < m.size(); ++s) m[s] = V.Lambda()[s] - m[s];
    Eigen::VectorXcd target = Eigen::VectorXcd::Zero(V.dim());
    target[*V.index(m)] = 1;
    worst = std::max(worst, sine_angle(A.col(b).cast<Complex>(), target));
  }
  return worst;
}

bool dwg_square_scalar(const Sl2Tensor& V, const Rational& lambda) {
  for (int nu : weights(V)) {
    const auto cols = V.block(nu);
    const auto rows = V.block(-nu);
    // A_w(lambda + nu) : V[nu] -> V[-nu], then A_w(-lambda - nu - 2) back
    RMatrix first(rows.size(), std::vector<Rational>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) {
      const auto col = dwg_column(V, lambda + nu, cols[c]);
      for (size_t r = 0; r < rows.size(); ++r) first[r][c] = col[rows[r]];
    }
    RMatrix second(cols.size(), std::vector<Rational>(rows.size()));
    for (size_t c = 0; c < rows.size(); ++c) {
      const auto col = dwg_column(V, -lambda - nu - 2, rows[c]);
      for (size_t r = 0; r < cols.size(); ++r) second[r][c] = col[cols[r]];
    }
    const size_t n = cols.size();
    Rational scalar;
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c) {
        Rational v = 0;
        for (size_t k = 0; k < rows.size(); ++k) v += second[r][k] * first[k][c];
        if (r == 0 && c == 0) scalar = v;
        if (r == c ? v != scalar : v != 0) return false;
      }
  }
  return true;
}

std::vector<Complex> float_reproduce_roots(const std::vector<Complex>& y, const std::vector<Complex>& T, Complex c) {
  // c y yt + x (y yt' - y' yt) = T, unknown coefficients of yt
  const int dy = static_cast<int>(y.size()) - 1;
  const int q = static_cast<int>(T.size()) - 1 - dy;
  if (q < 0) throw Error(ErrorCode::Infertile, "target degree is negative");
  const int rows = static_cast<int>(T.size());
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(rows, q + 1);
  for (int k = 0; k <= q; ++k)
    for (int a = 0; a <= dy; ++a) {
      // y_a x^a * x^k contributes (c + k - a) at degree a + k
      if (a + k < rows) M(a + k, k) += y[a] * (c + static_cast<double>(k - a));
    }
  Eigen::VectorXcd rhs(rows);
  for (int n = 0; n < rows; ++n) rhs[n] = T[n];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(M);
  qr.setThreshold(1e-10);
  if (qr.rank() < q + 1) throw Error(ErrorCode::AmbiguousSolution, "float reproduction is not unique");
  const Eigen::VectorXcd sol = qr.solve(rhs);
  if ((M * sol - rhs).norm() > 1e-6 * (1 + rhs.norm())) throw Error(ErrorCode::Infertile, "float reproduction is inconsistent");
  std::vector<Complex> coeffs(sol.data(), sol.data() + sol.size());
  return poly_roots(coeffs);
}

namespace {

bool roots_off_diagonal(const std::vector<Complex>& r, const std::vector<Complex>& z) {
  double scale = 1;
  for (const auto& x : r) scale = std::max(scale, std::abs(x));
  const double tol = 1e-7 * scale;
  for (size_t a = 0; a < r.size(); ++a) {
    if (std::abs(r[a]) < tol) return false;
    for (const auto& zs : z)
      if (std::abs(r[a] - zs) < tol) return false;
    for (size_t b = 0; b < a; ++b)
      if (std::abs(r[a] - r[b]) < tol) return false;
  }
  return true;
}

}  // namespace

ConjectureReport conjecture_check(const Sl2Tensor& V, const std::vector<Rational>& z, long lambda, int l,
                                  const SolveOptions& opt) {
  Problem p{RootSystem::make(Family::A, 1), {}, z, BetheFamily{FamilyKind::Trig, 0}};
  for (int L : V.Lambda()) p.Lambda.push_back(WeightVec{{Rational(L)}});
  std::vector<Complex> zc;
  for (const auto& q : z) zc.emplace_back(q.get_d(), 0);

  std::vector<Complex> T{1.0};
  for (size_t s = 0; s < zc.size(); ++s)
    for (int k = 0; k < V.Lambda()[s]; ++k) {
      std::vector<Complex> next(T.size() + 1, 0.0);
      for (size_t a = 0; a < T.size(); ++a) {
        next[a + 1] += T[a];
        next[a] -= zc[s] * T[a];
      }
      T = std::move(next);
    }

  const Eigen::MatrixXcd A = to_double(dwg_shifted_matrix(V, lambda)).cast<Complex>();
  const Complex c(static_cast<double>(lambda) + 1, 0);
  ConjectureReport rep;
  std::vector<Eigen::VectorXcd> targets;
  for (const auto& t : solve_newton(p, {Complex(static_cast<double>(lambda), 0)}, {l}, opt)) {
    ConjectureCase cc;
    cc.t = t;
    const auto y = roots_to_tuple(t).ys[0];
    const auto roots = float_reproduce_roots(y, T, c);
    cc.t_w.colors = {roots};
    cc.descendant_off_diagonal = roots_off_diagonal(roots, zc);
    if (!cc.descendant_off_diagonal) {
      ++rep.skipped;
      rep.cases.push_back(std::move(cc));
      continue;
    }
    const Eigen::VectorXcd lhs = A * weight_function(V, zc, t.colors[0]);
    const Eigen::VectorXcd rhs = weight_function(V, zc, roots);
    cc.sine = sine_angle(lhs, rhs);
    rep.max_sine = std::max(rep.max_sine, cc.sine);
    targets.push_back(rhs);
    rep.cases.push_back(std::move(cc));
  }

  // random configurations: not eigenvectors, and A w(t) matches no descendant vector
  std::mt19937_64 rng(opt.seed + 7919);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  const bool control = l > 0 && V.block(V.total() - 2 * l).size() > 1;
  rep.control_run = control;
  for (int trial = 0; trial < 3 && control; ++trial) {
    std::vector<Complex> bad;
    for (int k = 0; k < l; ++k) bad.emplace_back(dist(rng), dist(rng));
    const Eigen::VectorXcd w = weight_function(V, zc, bad);
    if (w.norm() < 1e-12) continue;
    rep.control_min_residual =
        std::min(rep.control_min_residual, verify_bethe_eigen(V, zc, Complex(static_cast<double>(lambda), 0), bad).max_residual);
    const Eigen::VectorXcd img = A * w;
    for (const auto& tv : targets) rep.control_min_sine = std::min(rep.control_min_sine, sine_angle(img, tv));
  }
  return rep;
}

}  // namespace bp
