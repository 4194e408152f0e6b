#include "bethepop/exactmath.hpp"

#include <algorithm>

namespace bp {

Rational parse_rational(std::string_view s) {
  std::string t;
  t.reserve(s.size());
  for (size_t k = 0; k < s.size(); ++k) {
    // U+2212 MINUS SIGN
    if (k + 2 < s.size() && static_cast<unsigned char>(s[k]) == 0xE2 &&
        static_cast<unsigned char>(s[k + 1]) == 0x88 && static_cast<unsigned char>(s[k + 2]) == 0x92) {
      t.push_back('-');
      k += 2;
    } else if (s[k] != ' ') {
      t.push_back(s[k]);
    }
  }
  if (t.empty()) throw Error(ErrorCode::InvalidInput, "empty rational");
  size_t slash = t.find('/');
  auto digits_ok = [](std::string_view d, bool sign_ok) {
    if (!d.empty() && sign_ok && (d[0] == '-' || d[0] == '+')) d.remove_prefix(1);
    return !d.empty() && std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false))
    throw Error(ErrorCode::InvalidInput, "malformed rational '" + std::string(s) + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw Error(ErrorCode::InvalidInput, "zero denominator in '" + std::string(s) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

long to_long(const Rational& q) {
  if (!is_integer(q) || !q.get_num().fits_slong_p()) throw Error(ErrorCode::InvalidInput, "not a small integer: " + to_string(q));
  return q.get_num().get_si();
}

// ---- Poly

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(int k, const Rational& c) {
  std::vector<Rational> v(k + 1);
  v[k] = c;
  return Poly(std::move(v));
}

Poly Poly::linear_root(const Rational& a) { return Poly({Rational(-a), Rational(1)}); }

Rational Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
  return c_[k];
}

const Rational& Poly::leading() const {
  if (c_.empty()) throw Error(ErrorCode::Undefined, "leading coefficient of zero polynomial");
  return c_.back();
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
  return Poly(std::move(d));
}

Rational Poly::eval(const Rational& x0) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x0 + *it;
  return acc;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(r));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) {
  if (p.is_zero()) return os << "0";
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    Rational c = p.coeff(k);
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    Rational a = abs(c);
    if (a != 1 || k == 0) os << a;
    if (k >= 1) os << "x";
    if (k >= 2) os << "^" << k;
    first = false;
  }
  return os;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorCode::Undefined, "division by zero polynomial");
  std::vector<Rational> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {Poly{}, a};
  std::vector<Rational> q(a.degree() - db + 1);
  const Rational& lb = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    if (r[k] == 0) continue;
    Rational f = r[k] / lb;
    q[k - db] = f;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.coeff(j);
  }
  r.resize(db);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error(ErrorCode::NonDivisible, "remainder is nonzero");
  return q;
}

Poly monicize(const Poly& p) {
  if (p.is_zero()) return p;
  return p * Rational(1 / p.leading());
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw Error(ErrorCode::Undefined, "gcd(0,0)");
  Poly u = monicize(a), v = monicize(b);
  while (!v.is_zero()) {
    Poly r = divmod(u, v).second;
    u = std::move(v);
    v = monicize(r);
  }
  return monicize(u);
}

bool is_squarefree(const Poly& p) {
  if (p.is_zero()) return false;
  if (p.degree() == 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

Poly shift(const Poly& p, const Rational& s) {
  Poly acc;
  Poly lin({s, Rational(1)});
  for (int k = p.degree(); k >= 0; --k) acc = acc * lin + Poly::constant(p.coeff(k));
  return acc;
}

Poly pow(const Poly& p, int k) {
  if (k < 0) throw Error(ErrorCode::Undefined, "negative polynomial power");
  Poly r = Poly::constant(1), b = p;
  while (k) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

Poly pow_product(const std::vector<std::pair<Poly, int>>& factors) {
  Poly r = Poly::constant(1);
  for (const auto& [p, k] : factors) r *= pow(p, k);
  return r;
}

std::optional<Rational> proportionality(const Poly& a, const Poly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return Rational(0);
  if (a.degree() != b.degree()) return std::nullopt;
  Rational c = a.leading() / b.leading();
  if (a == b * c) return c;
  return std::nullopt;
}

Poly wronskian2(const Poly& f, const Poly& g) { return f.derivative() * g - f * g.derivative(); }

Poly det(std::vector<std::vector<Poly>> m) {
  const size_t n = m.size();
  if (n == 0) return Poly::constant(1);
  bool negate = false;
  Poly prev = Poly::constant(1);
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return {};
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      m[i][k] = Poly{};
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

// ---- QPoly

QPoly QPoly::make(Rational a, const Poly& p) {
  if (p.is_zero()) return {Rational(0), Poly{}};
  const auto& c = p.coeffs();
  size_t k = 0;
  while (c[k] == 0) ++k;
  if (k == 0) return {std::move(a), p};
  return {a + static_cast<long>(k), Poly(std::vector<Rational>(c.begin() + k, c.end()))};
}

QPoly QPoly::derivative() const {
  return make(exponent - 1, part * exponent + Poly::monomial(1) * part.derivative());
}

QPoly operator*(const QPoly& a, const QPoly& b) { return QPoly::make(a.exponent + b.exponent, a.part * b.part); }

QPoly operator+(const QPoly& a, const QPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Rational d = a.exponent - b.exponent;
  if (!is_integer(d)) throw Error(ErrorCode::Undefined, "adding quasi-polynomials with non-integral exponent gap");
  if (d >= 0) return QPoly::make(b.exponent, a.part * Poly::monomial(static_cast<int>(to_long(d))) + b.part);
  return QPoly::make(a.exponent, a.part + b.part * Poly::monomial(static_cast<int>(to_long(-d))));
}

std::optional<Rational> proportionality(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return Rational(0);
  if (a.exponent != b.exponent) return std::nullopt;
  return proportionality(a.part, b.part);
}

QPoly qwronskian(const std::vector<QPoly>& fs) {
  const size_t n = fs.size();
  if (n == 0) throw Error(ErrorCode::InvalidInput, "empty Wronskian");
  // u^{(j)} = x^{a-j} P_j with P_{j+1} = (a-j) P_j + x P_j'
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  Rational expo = 0;
  for (size_t k = 0; k < n; ++k) {
    m[k][0] = fs[k].part;
    for (size_t j = 1; j < n; ++j)
      m[k][j] = m[k][j - 1] * Rational(fs[k].exponent - static_cast<long>(j - 1)) +
                Poly::monomial(1) * m[k][j - 1].derivative();
    expo += fs[k].exponent;
  }
  expo -= static_cast<long>(n * (n - 1) / 2);
  return QPoly::make(expo, det(std::move(m)));
}

QPoly divided_wronskian(const std::vector<QPoly>& us, const std::vector<Rational>& lambda_alpha,
                        const std::vector<Poly>& Ts) {
  const size_t i = us.size();
  if (i == 0) throw Error(ErrorCode::InvalidInput, "empty Wronskian");
  if (lambda_alpha.size() + 1 < i || Ts.size() + 1 < i)
    throw Error(ErrorCode::InvalidInput, "divided Wronskian needs i-1 divisor factors");
  QPoly w = qwronskian(us);
  QPoly divisor{Rational(0), Poly::constant(1)};
  for (size_t k = 1; k < i; ++k) {
    QPoly f = QPoly::make(lambda_alpha[k - 1], Ts[k - 1]);
    for (size_t e = 0; e < i - k; ++e) divisor = divisor * f;
  }
  if (w.is_zero()) return w;
  return QPoly::make(w.exponent - divisor.exponent, exact_div(w.part, divisor.part));
}

// ---- ExpPoly

ExpPoly ExpPoly::derivative() const { return {rate, part * rate + part.derivative()}; }

ExpPoly ewronskian(const std::vector<ExpPoly>& fs) {
  const size_t n = fs.size();
  if (n == 0) throw Error(ErrorCode::InvalidInput, "empty Wronskian");
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  Rational rate = 0;
  for (size_t k = 0; k < n; ++k) {
    m[k][0] = fs[k].part;
    for (size_t j = 1; j < n; ++j) m[k][j] = m[k][j - 1] * fs[k].rate + m[k][j - 1].derivative();
    rate += fs[k].rate;
  }
  return {rate, det(std::move(m))};
}

// ---- discrete

Poly discrete_wronskian(const std::vector<Poly>& fs, const Rational& h) {
  if (h == 0) throw Error(ErrorCode::ZeroStep, "discrete Wronskian with h = 0");
  const size_t n = fs.size();
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (size_t k = 0; k < n; ++k)
    for (size_t j = 0; j < n; ++j) m[k][j] = shift(fs[k], h * static_cast<long>(j));
  return det(std::move(m));
}

DiscreteExpPoly discrete_wronskian(const std::vector<DiscreteExpPoly>& fs, const Rational& h) {
  if (h == 0) throw Error(ErrorCode::ZeroStep, "discrete Wronskian with h = 0");
  const size_t n = fs.size();
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  Rational mult = 1;
  for (size_t k = 0; k < n; ++k) {
    Rational q = 1;
    for (size_t j = 0; j < n; ++j) {
      m[k][j] = shift(fs[k].part, h * static_cast<long>(j)) * q;
      q *= fs[k].multiplier;
    }
    mult *= fs[k].multiplier;
  }
  return {mult, det(std::move(m))};
}

std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Rational inv = 1 / a[r][c];
    for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (b[i] != 0) throw Error(ErrorCode::Infertile, "linear system is inconsistent");
  if (r < cols)
    throw Error(ErrorCode::AmbiguousSolution, "solution space has dimension " + std::to_string(cols - r),
                static_cast<int>(cols - r));
  std::vector<Rational> x(cols);
  for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

}  // namespace bp
