#include "bethepop/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace bp {

namespace {

constexpr double kGuard = 1e-12;
constexpr double kStartGuard = 1e-8;

struct Flat {
  std::vector<int> color;
  Eigen::VectorXcd t;
};

Flat flat_of(const BetheConfig& c) {
  Flat f;
  f.t = c.flatten();
  for (size_t i = 0; i < c.colors.size(); ++i)
    for (size_t j = 0; j < c.colors[i].size(); ++j) f.color.push_back(static_cast<int>(i));
  return f;
}

void guard(Complex d, double scale) {
  if (std::abs(d) < kGuard * (1 + scale)) throw Error(ErrorCode::SingularConfiguration, "coordinate on a singular hyperplane");
}

void check_param(const Problem& p, const std::vector<Complex>& param) {
  if (static_cast<int>(param.size()) != p.rs.rank()) throw Error(ErrorCode::InvalidInput, "parameter length differs from rank");
}

Complex zc(const Rational& q) { return Complex(q.get_d(), 0); }

Eigen::VectorXcd additive_residual(const BetheConfig& c, const Problem& p, const std::vector<Complex>& lambda,
                                   bool trig) {
  check_param(p, lambda);
  Flat f = flat_of(c);
  const Eigen::Index n = f.t.size();
  Eigen::VectorXcd r(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const int i = f.color[a];
    const Complex t = f.t[a];
    const Complex li = static_cast<double>(p.rs.d(i)) * lambda[i];
    Complex v;
    if (trig) {
      guard(t, 0);
      v = -li / t;
    } else {
      v = -li;
    }
    for (size_t s = 0; s < p.z.size(); ++s) {
      const int b = p.form_pairing(s, i);
      if (b == 0) continue;
      const Complex d = t - zc(p.z[s]);
      guard(d, std::abs(t));
      v -= static_cast<double>(b) / d;
    }
    for (Eigen::Index q = 0; q < n; ++q) {
      if (q == a) continue;
      const int fm = p.rs.form(i, f.color[q]);
      if (fm == 0) continue;
      const Complex d = t - f.t[q];
      guard(d, std::abs(t));
      v += static_cast<double>(fm) / d;
    }
    r[a] = v;
  }
  return r;
}

Eigen::MatrixXcd additive_jacobian(const BetheConfig& c, const Problem& p, const std::vector<Complex>& lambda, bool trig) {
  Flat f = flat_of(c);
  const Eigen::Index n = f.t.size();
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const int i = f.color[a];
    const Complex t = f.t[a];
    Complex diag = 0;
    if (trig) diag += static_cast<double>(p.rs.d(i)) * lambda[i] / (t * t);
    for (size_t s = 0; s < p.z.size(); ++s) {
      const int b = p.form_pairing(s, i);
      if (b == 0) continue;
      const Complex d = t - zc(p.z[s]);
      diag += static_cast<double>(b) / (d * d);
    }
    for (Eigen::Index q = 0; q < n; ++q) {
      if (q == a) continue;
      const int fm = p.rs.form(i, f.color[q]);
      if (fm == 0) continue;
      const Complex d = t - f.t[q];
      const Complex term = static_cast<double>(fm) / (d * d);
      diag -= term;
      J(a, q) = term;
    }
    J(a, a) = diag;
  }
  return J;
}

}  // namespace

size_t BetheConfig::size() const {
  size_t n = 0;
  for (const auto& c : colors) n += c.size();
  return n;
}

std::vector<int> BetheConfig::degrees() const {
  std::vector<int> l;
  for (const auto& c : colors) l.push_back(static_cast<int>(c.size()));
  return l;
}

Eigen::VectorXcd BetheConfig::flatten() const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(size()));
  Eigen::Index k = 0;
  for (const auto& c : colors)
    for (const auto& t : c) v[k++] = t;
  return v;
}

BetheConfig BetheConfig::unflatten(const Eigen::VectorXcd& v, const std::vector<int>& l) {
  BetheConfig c;
  Eigen::Index k = 0;
  for (int li : l) {
    c.colors.emplace_back();
    for (int j = 0; j < li; ++j) c.colors.back().push_back(v[k++]);
  }
  return c;
}

Eigen::VectorXcd residual_trig(const BetheConfig& t, const Problem& p, const std::vector<Complex>& lambda) {
  return additive_residual(t, p, lambda, true);
}

Eigen::VectorXcd residual_exp(const BetheConfig& t, const Problem& p, const std::vector<Complex>& lambda) {
  return additive_residual(t, p, lambda, false);
}

Eigen::VectorXcd residual_xxx(const BetheConfig& c, const Problem& p, const std::vector<Complex>& kappa) {
  check_param(p, kappa);
  Flat f = flat_of(c);
  const double h = p.family.h.get_d();
  const Eigen::Index n = f.t.size();
  Eigen::VectorXcd r(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const int i = f.color[a];
    const Complex t = f.t[a];
    Complex prod = 1;
    for (size_t s = 0; s < p.z.size(); ++s) {
      const double b = p.form_pairing(s, i);
      if (b == 0) continue;
      const Complex d = t - zc(p.z[s]);
      guard(d - b * h / 2, std::abs(t));
      prod *= (d + b * h / 2) / (d - b * h / 2);
    }
    for (Eigen::Index q = 0; q < n; ++q) {
      if (q == a) continue;
      const int m = f.color[q];
      const Complex d = t - f.t[q];
      if (m == i) {
        guard(d + h, std::abs(t));
        prod *= (d - h) / (d + h);
      } else if (p.rs.a(i, m) != 0) {
        guard(d - h / 2, std::abs(t));
        prod *= std::pow((d + h / 2) / (d - h / 2), -p.rs.a(i, m));
      }
    }
    r[a] = kappa[i] - prod;
  }
  return r;
}

Eigen::VectorXcd residual(const BetheConfig& t, const Problem& p, const std::vector<Complex>& param) {
  switch (p.family.kind) {
    case FamilyKind::Trig: return residual_trig(t, p, param);
    case FamilyKind::Exp: return residual_exp(t, p, param);
    case FamilyKind::Xxx: return residual_xxx(t, p, param);
  }
  return {};
}

Eigen::MatrixXcd residual_jacobian(const BetheConfig& t, const Problem& p, const std::vector<Complex>& param) {
  if (p.family.kind != FamilyKind::Xxx) return additive_jacobian(t, p, param, p.family.kind == FamilyKind::Trig);
  const auto l = t.degrees();
  Eigen::VectorXcd x = t.flatten();
  const Eigen::Index n = x.size();
  Eigen::MatrixXcd J(n, n);
  for (Eigen::Index q = 0; q < n; ++q) {
    const double step = 1e-6 * (1 + std::abs(x[q]));
    Eigen::VectorXcd xp = x, xm = x;
    xp[q] += step;
    xm[q] -= step;
    J.col(q) = (residual_xxx(BetheConfig::unflatten(xp, l), p, param) -
                residual_xxx(BetheConfig::unflatten(xm, l), p, param)) / (2 * step);
  }
  return J;
}

Complex master_log_value(const BetheConfig& c, const Problem& p, const std::vector<Complex>& lambda) {
  if (p.family.kind == FamilyKind::Xxx) throw Error(ErrorCode::InvalidInput, "no master function for the difference family");
  check_param(p, lambda);
  const bool trig = p.family.kind == FamilyKind::Trig;
  Flat f = flat_of(c);
  const Eigen::Index n = f.t.size();
  Complex v = 0;
  for (Eigen::Index a = 0; a < n; ++a) {
    const int i = f.color[a];
    const Complex t = f.t[a];
    const Complex li = static_cast<double>(p.rs.d(i)) * lambda[i];
    if (trig) {
      guard(t, 0);
      v -= li * std::log(t);
    } else {
      v -= li * t;
    }
    for (size_t s = 0; s < p.z.size(); ++s) {
      const int b = p.form_pairing(s, i);
      if (b == 0) continue;
      const Complex d = t - zc(p.z[s]);
      guard(d, std::abs(t));
      v -= static_cast<double>(b) * std::log(d);
    }
    for (Eigen::Index q = a + 1; q < n; ++q) {
      const int fm = p.rs.form(i, f.color[q]);
      if (fm == 0) continue;
      const Complex d = t - f.t[q];
      guard(d, std::abs(t));
      v += static_cast<double>(fm) * std::log(d);
    }
  }
  return v;
}

bool same_orbit(const BetheConfig& a, const BetheConfig& b, double tol) {
  if (a.colors.size() != b.colors.size()) return false;
  for (size_t i = 0; i < a.colors.size(); ++i) {
    const auto& x = a.colors[i];
    const auto& y = b.colors[i];
    if (x.size() != y.size()) return false;
    std::vector<bool> used(y.size(), false);
    for (const auto& u : x) {
      bool hit = false;
      for (size_t k = 0; k < y.size() && !hit; ++k) {
        if (used[k] || std::abs(u - y[k]) > tol * std::max(1.0, std::abs(u))) continue;
        used[k] = hit = true;
      }
      if (!hit) return false;
    }
  }
  return true;
}

namespace {

bool complex_less(const Complex& a, const Complex& b) {
  // rounded so that representatives of one orbit sort the same way
  const double ar = std::round(a.real() * 1e8), br = std::round(b.real() * 1e8);
  if (ar != br) return ar < br;
  return std::round(a.imag() * 1e8) < std::round(b.imag() * 1e8);
}

void canonicalize(BetheConfig& c) {
  for (auto& col : c.colors) std::sort(col.begin(), col.end(), complex_less);
}

bool config_less(const BetheConfig& a, const BetheConfig& b) {
  Eigen::VectorXcd x = a.flatten(), y = b.flatten();
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    if (complex_less(x[k], y[k])) return true;
    if (complex_less(y[k], x[k])) return false;
  }
  return false;
}

// XXX equations with denominators multiplied out: kappa_i * den - num.
// Newton basins of the rational form are tiny for roots squeezed between
// the difference singularities.
Eigen::VectorXcd xxx_cleared(const Eigen::VectorXcd& x, const std::vector<int>& color, const Problem& p,
                             const std::vector<Complex>& kappa) {
  const double h = p.family.h.get_d();
  const Eigen::Index n = x.size();
  Eigen::VectorXcd F(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const int i = color[a];
    Complex num = 1, den = 1;
    for (size_t s = 0; s < p.z.size(); ++s) {
      const double b = p.form_pairing(s, i);
      const Complex d = x[a] - zc(p.z[s]);
      num *= d + b * h / 2;
      den *= d - b * h / 2;
    }
    for (Eigen::Index q = 0; q < n; ++q) {
      if (q == a) continue;
      const int m = color[q];
      const Complex d = x[a] - x[q];
      if (m == i) {
        num *= d - h;
        den *= d + h;
      } else if (p.rs.a(i, m) != 0) {
        const int e = -p.rs.a(i, m);
        num *= std::pow(d + h / 2, e);
        den *= std::pow(d - h / 2, e);
      }
    }
    F[a] = kappa[i] * den - num;
  }
  return F;
}

// distance to the nearest singular hyperplane seen from coordinate a
double clearance(const Eigen::VectorXcd& x, const std::vector<int>& color, Eigen::Index a, const Problem& p) {
  const int i = color[a];
  const Complex t = x[a];
  const double h = p.family.kind == FamilyKind::Xxx ? p.family.h.get_d() : 0;
  double best = 1e300;
  if (p.family.kind == FamilyKind::Trig) best = std::abs(t);
  for (size_t s = 0; s < p.z.size(); ++s) {
    const double b = p.form_pairing(s, i);
    const Complex d = t - zc(p.z[s]);
    if (p.family.kind == FamilyKind::Xxx) {
      best = std::min({best, std::abs(d - b * h / 2), std::abs(d + b * h / 2)});
    } else if (b != 0) {
      best = std::min(best, std::abs(d));
    }
  }
  for (Eigen::Index q = 0; q < a; ++q) {
    const Complex d = t - x[q];
    if (color[q] == i) {
      best = std::min(best, std::abs(d));
      if (h != 0) best = std::min({best, std::abs(d - h), std::abs(d + h)});
    } else if (p.rs.a(i, color[q]) != 0) {
      best = std::min(best, h != 0 ? std::min(std::abs(d - h / 2), std::abs(d + h / 2)) : std::abs(d));
    }
  }
  return best;
}

}  // namespace

std::vector<BetheConfig> solve_newton(const Problem& p, const std::vector<Complex>& param, const std::vector<int>& l,
                                      const SolveOptions& opt) {
  p.validate();
  check_param(p, param);
  if (static_cast<int>(l.size()) != p.rs.rank()) throw Error(ErrorCode::InvalidInput, "degree vector length differs from rank");
  std::vector<int> color;
  for (size_t i = 0; i < l.size(); ++i)
    for (int j = 0; j < l[i]; ++j) color.push_back(static_cast<int>(i));
  const Eigen::Index n = static_cast<Eigen::Index>(color.size());
  if (n == 0) return {BetheConfig::unflatten(Eigen::VectorXcd(0), l)};

  double zmax = 0;
  for (const auto& zs : p.z) zmax = std::max(zmax, std::abs(zs.get_d()));
  const double radius = 2 * (1 + zmax);
  const double escape = 1e4 * radius;
  const bool trig = p.family.kind == FamilyKind::Trig;

  // Trig residuals decay like 1/t, which lets Newton run off to infinity;
  // iterating on t_a * R_a removes that attractor
  bool cleared = false;
  auto system = [&](const Eigen::VectorXcd& x, Eigen::VectorXcd& F, Eigen::MatrixXcd* J) {
    BetheConfig c = BetheConfig::unflatten(x, l);
    if (cleared) {
      F = xxx_cleared(x, color, p, param);
      if (J) {
        J->resize(n, n);
        for (Eigen::Index q = 0; q < n; ++q) {
          const double step = 1e-7 * (1 + std::abs(x[q]));
          Eigen::VectorXcd xp = x, xm = x;
          xp[q] += step;
          xm[q] -= step;
          J->col(q) = (xxx_cleared(xp, color, p, param) - xxx_cleared(xm, color, p, param)) / (2 * step);
        }
      }
      return residual(c, p, param);
    }
    Eigen::VectorXcd R = residual(c, p, param);
    if (!trig) {
      F = R;
      if (J) *J = residual_jacobian(c, p, param);
      return R;
    }
    F = x.cwiseProduct(R);
    if (J) *J = R.asDiagonal().toDenseMatrix() + x.asDiagonal() * residual_jacobian(c, p, param);
    return R;
  };

  // Every other attempt uses a second strategy, since solutions squeezed
  // between nearby singularities have small basins: Trig/Exp cluster the
  // start around the marked points, Xxx iterates on the cleared equations.
  const bool xxx = p.family.kind == FamilyKind::Xxx;
  std::vector<Complex> anchors;
  double spread = 1;
  if (trig) anchors.push_back(0);
  for (const auto& zs : p.z) anchors.push_back(zc(zs));
  for (size_t u = 0; u < anchors.size(); ++u)
    for (size_t v = 0; v < u; ++v) spread = std::min(spread, std::abs(anchors[u] - anchors[v]));

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<BetheConfig> found;
  for (int attempt = 0; attempt < opt.attempts; ++attempt) {
    const bool alternate = attempt % 2 == 1;
    cleared = xxx && alternate;
    const bool clustered = !xxx && alternate;
    Eigen::VectorXcd x(n);
    for (Eigen::Index a = 0; a < n; ++a) {
      for (int tries = 0; tries < 1000; ++tries) {
        const double th = 2 * M_PI * unif(rng);
        if (clustered) {
          const Complex c = anchors[std::min(anchors.size() - 1, static_cast<size_t>(unif(rng) * anchors.size()))];
          x[a] = c + std::polar(spread * std::sqrt(unif(rng)), th);
        } else {
          x[a] = std::polar(radius * std::sqrt(unif(rng)), th);
        }
        if (clearance(x, color, a, p) > kStartGuard) break;
      }
    }
    bool ok = false;
    try {
      Eigen::VectorXcd F;
      Eigen::MatrixXcd J;
      Eigen::VectorXcd R = system(x, F, &J);
      for (int it = 0; it < opt.max_iter; ++it) {
        if (R.cwiseAbs().maxCoeff() <= opt.tol) {
          ok = true;
          break;
        }
        Eigen::VectorXcd dx = J.partialPivLu().solve(-F);
        if (!dx.allFinite()) break;
        const double f0 = F.norm();
        double step = 1;
        Eigen::VectorXcd xn, Fn, Rn;
        bool moved = false;
        for (int halving = 0; halving <= 10; ++halving, step /= 2) {
          xn = x + step * dx;
          try {
            Rn = system(xn, Fn, nullptr);
          } catch (const Error&) {
            continue;
          }
          if (!Fn.allFinite()) continue;
          moved = true;
          if (Fn.norm() < f0) break;
        }
        if (!moved) break;
        x = xn;
        if (x.cwiseAbs().maxCoeff() > escape) break;
        R = system(x, F, &J);
      }
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) continue;
    // admissible: no two coordinates glued, away from every singular hyperplane
    bool admissible = true;
    for (Eigen::Index a = 0; a < n && admissible; ++a)
      if (clearance(x, color, a, p) < opt.dedup_tol) admissible = false;
    if (!admissible) continue;
    BetheConfig c = BetheConfig::unflatten(x, l);
    bool dup = false;
    for (const auto& g : found)
      if (same_orbit(c, g, opt.dedup_tol)) dup = true;
    if (!dup) found.push_back(std::move(c));
  }
  for (auto& c : found) canonicalize(c);
  std::sort(found.begin(), found.end(), config_less);
  return found;
}

long weight_multiplicity_sl2(const std::vector<int>& Lambda, int l) {
  if (l < 0) return 0;
  std::vector<long> ways(l + 1, 0);
  ways[0] = 1;
  for (int L : Lambda) {
    std::vector<long> next(l + 1, 0);
    for (int k = 0; k <= l; ++k)
      for (int m = 0; m <= L && k + m <= l; ++m) next[k + m] += ways[k];
    ways = std::move(next);
  }
  return ways[l];
}

CountReport count_check(const Problem& p, const std::vector<Complex>& param, int l, const SolveOptions& opt) {
  if (p.rs.rank() != 1) throw Error(ErrorCode::UnsupportedType, "count check is implemented for sl2");
  std::vector<int> Lambda;
  for (size_t s = 0; s < p.z.size(); ++s) Lambda.push_back(p.pairing(s, 0));
  CountReport rep;
  rep.multiplicity = weight_multiplicity_sl2(Lambda, l);
  rep.solutions = solve_newton(p, param, {l}, opt);
  rep.found = static_cast<long>(rep.solutions.size());
  rep.equal = rep.found == rep.multiplicity;
  rep.exceeds = rep.found > rep.multiplicity;
  bool first = true;
  for (const auto& c : rep.solutions) {
    if (c.size() == 0) continue;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(residual_jacobian(c, p, param));
    const auto& sv = svd.singularValues();
    const double cond = sv[sv.size() - 1] > 0 ? sv[0] / sv[sv.size() - 1] : INFINITY;
    rep.min_condition = first ? cond : std::min(rep.min_condition, cond);
    rep.max_condition = first ? cond : std::max(rep.max_condition, cond);
    first = false;
  }
  return rep;
}

FloatTuple roots_to_tuple(const BetheConfig& t) {
  FloatTuple out;
  for (const auto& col : t.colors) {
    std::vector<Complex> c{1.0};
    for (const auto& r : col) {
      std::vector<Complex> next(c.size() + 1, 0.0);
      for (size_t k = 0; k < c.size(); ++k) {
        next[k + 1] += c[k];
        next[k] -= r * c[k];
      }
      c = std::move(next);
    }
    out.ys.push_back(std::move(c));
  }
  return out;
}

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
  size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == Complex(0)) --deg;
  if (deg <= 1) return {};
  const Eigen::Index n = static_cast<Eigen::Index>(deg - 1);
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  const Complex lead = coeffs[deg - 1];
  for (Eigen::Index k = 1; k < n; ++k) C(k, k - 1) = 1;
  for (Eigen::Index k = 0; k < n; ++k) C(k, n - 1) = -coeffs[k] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(roots.begin(), roots.end(), complex_less);
  return roots;
}

namespace {

Rational best_rational(double v, long max_den) {
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = v;
  for (int it = 0; it < 64; ++it) {
    if (std::abs(x) > 1e15) break;
    const double a = std::floor(x);
    const long long ai = static_cast<long long>(a);
    const long long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double frac = x - a;
    if (std::abs(frac) < 1e-15) break;
    x = 1 / frac;
  }
  Rational q(mpz_class(std::to_string(h1)), mpz_class(std::to_string(k1)));
  q.canonicalize();
  return q;
}

}  // namespace

PolyTuple rationalize(const FloatTuple& t, long max_den, const Problem& p, const Weight& w) {
  constexpr double kBudget = 1e-9;
  PolyTuple out;
  for (const auto& y : t.ys) {
    std::vector<Rational> c;
    for (const auto& v : y) {
      const double scale = std::max(1.0, std::abs(v));
      if (std::abs(v.imag()) > kBudget * scale)
        throw Error(ErrorCode::RationalizationRejected, "coefficient has an imaginary part");
      Rational q = best_rational(v.real(), max_den);
      q.canonicalize();
      if (std::abs(q.get_d() - v.real()) > kBudget * scale)
        throw Error(ErrorCode::RationalizationRejected, "no rational within the snapping budget");
      c.push_back(q);
    }
    out.ys.push_back(Poly(std::move(c)));
  }
  if (verify_critical_point(p, out, w, out.degrees()) != Verdict::Pass)
    throw Error(ErrorCode::RationalizationRejected, "snapped tuple is not a critical point");
  return out;
}

MultWeight exact_kappa_for(const std::vector<Rational>& numeric_kappa) {
  MultWeight k;
  for (const auto& v : numeric_kappa) {
    if (v == 0) throw Error(ErrorCode::InvalidInput, "kappa must be nonzero");
    k.kappa.push_back(1 / v);
  }
  return k;
}

}  // namespace bp
