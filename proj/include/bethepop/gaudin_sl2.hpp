#pragma once

#include <limits>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bethepop/bethe.hpp"
#include "bethepop/error.hpp"
#include "bethepop/exactmath.hpp"

namespace bp {

// L_{Lambda_1} (x) ... (x) L_{Lambda_n} with basis F^{m_1}v_1 (x) ... (x) F^{m_n}v_n
class Sl2Tensor {
 public:
  explicit Sl2Tensor(std::vector<int> Lambda);

  size_t dim() const { return basis_.size(); }
  size_t factors() const { return Lambda_.size(); }
  const std::vector<int>& Lambda() const { return Lambda_; }
  int total() const;
  const std::vector<int>& m(size_t b) const { return basis_[b]; }
  int weight(size_t b) const;
  std::vector<size_t> block(int nu) const;
  std::optional<size_t> index(const std::vector<int>& m) const;

  // dense single-factor actions on V
  Eigen::MatrixXd e(size_t s) const;
  Eigen::MatrixXd f(size_t s) const;
  Eigen::MatrixXd h(size_t s) const;

  // exact total actions e = sum_s e^{(s)}, f = sum_s f^{(s)}
  std::vector<Rational> apply_e(const std::vector<Rational>& v) const;
  std::vector<Rational> apply_f(const std::vector<Rational>& v) const;

 private:
  std::vector<int> Lambda_;
  std::vector<std::vector<int>> basis_;
  std::map<std::vector<int>, size_t> index_;
};

using RMatrix = std::vector<std::vector<Rational>>;
Eigen::MatrixXd to_double(const RMatrix& m);

struct GaudinOperators {
  std::vector<Eigen::MatrixXcd> H;  // on all of V
  Complex lambda_param;
};

// H_i(p) = (p/2) h^{(i)} + sum_{j != i} r^{(i,j)}(z_i / z_j), r(z) = (Omega+ z + Omega-) / (z - 1)
GaudinOperators build_gaudin(const Sl2Tensor& V, const std::vector<Complex>& z, Complex lambda_param);
Eigen::MatrixXcd restrict_block(const Eigen::MatrixXcd& M, const Sl2Tensor& V, int row_weight, int col_weight);
// max over i<j of |[H_i,H_j]| / (|H_i||H_j|), Frobenius norms
double max_commutator(const GaudinOperators& g);

// sum over m of omega_m(t) F^m v; throws SingularConfiguration
Eigen::VectorXcd weight_function(const Sl2Tensor& V, const std::vector<Complex>& z, const std::vector<Complex>& t);

struct EigenReport {
  std::vector<double> residuals;  // |H_i w - mu_i w| / |w|
  std::vector<Complex> eigenvalues;
  double max_residual = 0;
};
// eigenvector test at H_i(lambda + 1 + Lambda_inf / 2); throws ZeroVector
EigenReport verify_bethe_eigen(const Sl2Tensor& V, const std::vector<Complex>& z, Complex lambda,
                               const std::vector<Complex>& t);

// A_w(lambda) for rational lambda; NonGeneric when a denominator vanishes
RMatrix dwg_matrix(const Sl2Tensor& V, const Rational& lambda);
// columns of weight nu use A_w(lambda + nu)
RMatrix dwg_shifted_matrix(const Sl2Tensor& V, const Rational& lambda);

struct DWGOperator {
  long lambda = 0;
  RMatrix A;
  RMatrix A_shifted;
  bool weights_flip = false;        // V[nu] -> V[-nu]
  bool lower_terms_vanish = false;  // first-factor powers <= mu drop out
};
// dominant integral lambda >= sum Lambda_s, else NonGeneric
DWGOperator dwg_operator(const Sl2Tensor& V, long lambda);

struct CommutationReport {
  double max_relative = 0;
};
// A(lambda) H_i(lambda+1+nu/2) v = H_i(-lambda-1-nu/2) A(lambda) v, per block
CommutationReport dwg_commutation_check(const Sl2Tensor& V, const std::vector<Complex>& z, long lambda);

// largest sine between A(lambda) F^m v and F^{Lambda-m} v over the basis
double dwg_limit_angle(const Sl2Tensor& V, const Rational& lambda);

// A(w.lambda) A(lambda) restricted to V[nu] is a multiple of the identity,
// for every nu
bool dwg_square_scalar(const Sl2Tensor& V, const Rational& lambda);

double sine_angle(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

struct ConjectureCase {
  BetheConfig t;
  BetheConfig t_w;
  double sine = 1;
  bool descendant_off_diagonal = true;
};
struct ConjectureReport {
  std::vector<ConjectureCase> cases;
  double max_sine = 0;
  long skipped = 0;  // descendants that are not off-diagonal
  // random configurations against every genuine descendant vector; only
  // when the weight space has dimension > 1
  bool control_run = false;
  double control_min_sine = std::numeric_limits<double>::infinity();
  double control_min_residual = std::numeric_limits<double>::infinity();
};
ConjectureReport conjecture_check(const Sl2Tensor& V, const std::vector<Rational>& z, long lambda, int l,
                                  const SolveOptions& opt = {});

// reproduction of a float tuple (sl2, trigonometric), least squares with
// pivot tolerance; returns the descendant roots
std::vector<Complex> float_reproduce_roots(const std::vector<Complex>& y, const std::vector<Complex>& T, Complex c);

}  // namespace bp
