#include "kls/poly.hpp"

#include <algorithm>

#include "kls/error.hpp"

namespace kls {

Rational parse_rational(const std::string& s) {
  if (s.empty()) fail(ErrorCode::InvalidInput, "empty rational literal");
  Rational q;
  if (q.set_str(s, 10) != 0) fail(ErrorCode::InvalidInput, "bad rational literal '" + s + "'");
  if (q.get_den() == 0) fail(ErrorCode::InvalidInput, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<size_t>(degree) + 1);
  v[static_cast<size_t>(degree)] = c;
  return Poly(std::move(v));
}

Poly Poly::t_minus_1_pow(int n) {
  Poly result = Poly::constant(1);
  const Poly f{-1, 1};
  for (int i = 0; i < n; ++i) result = result * f;
  return result;
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Rational(0);
  return coeffs_[static_cast<size_t>(i)];
}

Rational Poly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool Poly::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return is_integer(c); });
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Poly(std::move(out));
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.coeffs_) x = -x;
  return r;
}

std::string Poly::to_text() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += ',';
    s += to_string(coeffs_[i]);
  }
  return s;
}

Poly poly_rev(const Poly& p, int r) {
  if (p.is_zero()) return p;
  if (p.degree() > r) {
    fail(ErrorCode::DegreeExceedsRank,
         "degree " + std::to_string(p.degree()) + " exceeds rank " + std::to_string(r));
  }
  std::vector<Rational> out(static_cast<size_t>(r) + 1);
  for (int i = 0; i <= p.degree(); ++i) out[static_cast<size_t>(r - i)] = p.coeff(i);
  return Poly(std::move(out));
}

Poly poly_div_t_minus_1(const Poly& p) {
  if (p.is_zero()) return p;
  // synthetic division by (t - 1), from the top coefficient down
  const auto& c = p.coeffs();
  const int n = p.degree();
  std::vector<Rational> q(static_cast<size_t>(n));
  Rational carry = 0;
  for (int i = n; i >= 1; --i) {
    carry += c[static_cast<size_t>(i)];
    q[static_cast<size_t>(i - 1)] = carry;
  }
  Rational remainder = carry + c[0];
  if (remainder != 0) fail(ErrorCode::NotDivisible, "not divisible by t-1, remainder " + to_string(remainder));
  return Poly(std::move(q));
}

Poly delta_truncate(const Poly& p, int r) {
  std::vector<Rational> out;
  out.push_back(p.coeff(0));
  for (int i = 1; i <= (r - 1) / 2; ++i) out.push_back(p.coeff(i) - p.coeff(i - 1));
  return Poly(std::move(out));
}

Poly delta_inverse(const Poly& d, int r) { return poly_div_t_minus_1(poly_rev(d, r) - d); }

Poly truncate(const Poly& p, int n) {
  if (p.degree() <= n) return p;
  std::vector<Rational> v(p.coeffs().begin(), p.coeffs().begin() + n + 1);
  return Poly(std::move(v));
}

Poly series_divide(const Poly& a, const Poly& b, int n) {
  if (b.coeff(0) == 0) fail(ErrorCode::InvalidInput, "series divisor has zero constant term");
  std::vector<Rational> q(static_cast<size_t>(n) + 1);
  const Rational b0 = b.coeff(0);
  for (int i = 0; i <= n; ++i) {
    Rational acc = a.coeff(i);
    for (int j = 1; j <= i && j <= b.degree(); ++j) acc -= b.coeff(j) * q[static_cast<size_t>(i - j)];
    q[static_cast<size_t>(i)] = acc / b0;
  }
  return Poly(std::move(q));
}

}  // namespace kls
