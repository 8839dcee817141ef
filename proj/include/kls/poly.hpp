#pragma once

#include <gmpxx.h>

#include <climits>
#include <initializer_list>
#include <string>
#include <vector>

namespace kls {

using Rational = mpq_class;

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
bool is_integer(const Rational& q);

/// Dense univariate polynomial over Q, constant term first. The zero polynomial has no coefficients.
class Poly {
 public:
  static constexpr int kDegreeNegInf = INT_MIN;

  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  Poly(std::initializer_list<long> coeffs);
  static Poly constant(const Rational& c);
  static Poly monomial(const Rational& c, int degree);
  /// (t - 1)^n
  static Poly t_minus_1_pow(int n);

  int degree() const { return coeffs_.empty() ? kDegreeNegInf : static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Coefficient of t^i, zero outside the stored range.
  Rational coeff(int i) const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational eval(const Rational& x) const;
  bool is_integral() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Coefficients as comma-joined text, e.g. "1,4,6,4,1"; zero prints as "0".
  std::string to_text() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// t^r p(1/t). Throws DegreeExceedsRank if deg p > r.
Poly poly_rev(const Poly& p, int r);
/// q with (t - 1) q = p. Throws NotDivisible carrying p(1) otherwise.
Poly poly_div_t_minus_1(const Poly& p);
/// p_0 + sum_{i=1}^{floor((r-1)/2)} (p_i - p_{i-1}) t^i
Poly delta_truncate(const Poly& p, int r);
/// Inverse of delta_truncate on symmetric input: the unique l with rev(d, r) - d = (t - 1) l.
Poly delta_inverse(const Poly& d, int r);
/// Truncate to terms of degree <= n.
Poly truncate(const Poly& p, int n);
/// Power-series quotient a / b to order n; b must have nonzero constant term.
Poly series_divide(const Poly& a, const Poly& b, int n);

}  // namespace kls
