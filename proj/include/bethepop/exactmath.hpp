#pragma once

#include <climits>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bethepop/error.hpp"

namespace bp {

using Rational = mpq_class;

// accepts "p/q", "p", leading '-' or U+2212
Rational parse_rational(std::string_view s);
// always "p/q", e.g. "-5/8", "1/1"
std::string to_string(const Rational& q);
bool is_integer(const Rational& q);
long to_long(const Rational& q);  // requires is_integer

constexpr int kZeroDegree = INT_MIN;

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  Poly(std::initializer_list<Rational> coeffs) : Poly(std::vector<Rational>(coeffs)) {}

  static Poly constant(const Rational& c);
  static Poly monomial(int k, const Rational& c = 1);
  // x - a
  static Poly linear_root(const Rational& a);

  int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int k) const;
  const Rational& leading() const;

  Poly derivative() const;
  Rational eval(const Rational& x0) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  Poly operator-() const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
// throws NonDivisible when b does not divide a
Poly exact_div(const Poly& a, const Poly& b);
// monic gcd; gcd(0,0) throws Undefined
Poly gcd(const Poly& a, const Poly& b);
bool is_squarefree(const Poly& p);
// p(x + s)
Poly shift(const Poly& p, const Rational& s);
Poly monicize(const Poly& p);
Poly pow(const Poly& p, int k);
Poly pow_product(const std::vector<std::pair<Poly, int>>& factors);
// the c with a = c*b, if any; b must be nonzero
std::optional<Rational> proportionality(const Poly& a, const Poly& b);

// f'g - fg'
Poly wronskian2(const Poly& f, const Poly& g);

// fraction-free elimination over Q[x]
Poly det(std::vector<std::vector<Poly>> m);

// x^a * p(x), normalized so that p(0) != 0 (or p == 0)
struct QPoly {
  Rational exponent;
  Poly part;

  static QPoly make(Rational a, const Poly& p);
  QPoly derivative() const;
  bool is_zero() const { return part.is_zero(); }
  bool operator==(const QPoly& o) const { return exponent == o.exponent && part == o.part; }
};

QPoly operator*(const QPoly& a, const QPoly& b);
// exponents must differ by an integer, else Undefined
QPoly operator+(const QPoly& a, const QPoly& b);
std::optional<Rational> proportionality(const QPoly& a, const QPoly& b);

QPoly qwronskian(const std::vector<QPoly>& fs);
// W(u_1..u_i) / prod_{k<i} (x^{c_k} T_k)^{i-k}, c_k = (lambda, alpha_k)
QPoly divided_wronskian(const std::vector<QPoly>& us, const std::vector<Rational>& lambda_alpha,
                        const std::vector<Poly>& Ts);

// e^{a x} * p(x)
struct ExpPoly {
  Rational rate;
  Poly part;

  ExpPoly derivative() const;
  bool operator==(const ExpPoly& o) const { return rate == o.rate && part == o.part; }
};

ExpPoly ewronskian(const std::vector<ExpPoly>& fs);

// q^{x/h} * p(x): shifting x by h multiplies by the rational q
struct DiscreteExpPoly {
  Rational multiplier;
  Poly part;

  bool operator==(const DiscreteExpPoly& o) const { return multiplier == o.multiplier && part == o.part; }
};

// det(f_k(x + (j-1)h)); h == 0 throws ZeroStep
Poly discrete_wronskian(const std::vector<Poly>& fs, const Rational& h);
DiscreteExpPoly discrete_wronskian(const std::vector<DiscreteExpPoly>& fs, const Rational& h);

// exact linear solve over Q; throws Infertile when inconsistent,
// AmbiguousSolution (detail = kernel dimension) when underdetermined
std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

}  // namespace bp
