#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "bethepop/reproduce.hpp"

namespace bp {

using Complex = std::complex<double>;

// coordinates grouped by color; colors[i].size() = l_i
struct BetheConfig {
  std::vector<std::vector<Complex>> colors;

  size_t size() const;
  std::vector<int> degrees() const;
  Eigen::VectorXcd flatten() const;
  static BetheConfig unflatten(const Eigen::VectorXcd& v, const std::vector<int>& l);
};

// param: <lambda, alpha_i^vee> for Trig/Exp, kappa_i for Xxx
Eigen::VectorXcd residual_trig(const BetheConfig& t, const Problem& p, const std::vector<Complex>& lambda);
Eigen::VectorXcd residual_exp(const BetheConfig& t, const Problem& p, const std::vector<Complex>& lambda);
Eigen::VectorXcd residual_xxx(const BetheConfig& t, const Problem& p, const std::vector<Complex>& kappa);
Eigen::VectorXcd residual(const BetheConfig& t, const Problem& p, const std::vector<Complex>& param);
// d residual / d t, analytic for Trig/Exp, central differences for Xxx
Eigen::MatrixXcd residual_jacobian(const BetheConfig& t, const Problem& p, const std::vector<Complex>& param);

// term-wise logarithm of the master function (Trig/Exp); t-independent factors dropped
Complex master_log_value(const BetheConfig& t, const Problem& p, const std::vector<Complex>& lambda);

struct SolveOptions {
  int attempts = 200;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  double dedup_tol = 1e-6;
  int max_iter = 200;
};

// multistart damped Newton; distinct orbit representatives in a canonical order
std::vector<BetheConfig> solve_newton(const Problem& p, const std::vector<Complex>& param, const std::vector<int>& l,
                                      const SolveOptions& opt = {});

bool same_orbit(const BetheConfig& a, const BetheConfig& b, double tol);

long weight_multiplicity_sl2(const std::vector<int>& Lambda, int l);

struct CountReport {
  long found = 0;
  long multiplicity = 0;
  bool equal = false;
  bool exceeds = false;
  double min_condition = 0;
  double max_condition = 0;
  std::vector<BetheConfig> solutions;
};
CountReport count_check(const Problem& p, const std::vector<Complex>& param, int l, const SolveOptions& opt = {});

// monic coefficient lists, low to high
struct FloatTuple {
  std::vector<std::vector<Complex>> ys;
};
FloatTuple roots_to_tuple(const BetheConfig& t);
// polynomial roots via companion-matrix eigenvalues
std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs);

// snap to rationals with denominators <= max_den and require the exact
// critical point criterion; throws RationalizationRejected
PolyTuple rationalize(const FloatTuple& t, long max_den, const Problem& p, const Weight& w);

// kappa of the exact difference identity that matches a numeric kappa
MultWeight exact_kappa_for(const std::vector<Rational>& numeric_kappa);

}  // namespace bp
