#include "cottonlab/jets/jet3.hpp"

#include <cmath>
#include <cstdint>

#include "cottonlab/error.hpp"

namespace cottonlab::jets {
namespace {

struct ProductTerm {
  std::uint8_t lhs;
  std::uint8_t rhs;
  std::uint8_t out;
};

// All coefficient pairs whose product stays within order 3 (84 of them).
constexpr auto make_product_table() {
  std::array<ProductTerm, 84> table{};
  std::size_t n = 0;
  for (std::size_t i = 0; i < kJetSize; ++i) {
    for (std::size_t j = 0; j < kJetSize; ++j) {
      const int k = monomial_index(kMonomials[i][0] + kMonomials[j][0],
                                   kMonomials[i][1] + kMonomials[j][1],
                                   kMonomials[i][2] + kMonomials[j][2]);
      if (k >= 0) {
        table[n++] = {static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j),
                      static_cast<std::uint8_t>(k)};
      }
    }
  }
  return table;
}

constexpr auto kProducts = make_product_table();

constexpr double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double multi_factorial(const std::array<int, 3>& alpha) {
  return factorial(alpha[0]) * factorial(alpha[1]) * factorial(alpha[2]);
}

double derivative_of(const Jet3& j, std::array<int, 3> alpha) {
  return j.coeff(alpha[0], alpha[1], alpha[2]) * multi_factorial(alpha);
}

}  // namespace

double Jet3::derivative(int i) const {
  std::array<int, 3> alpha{};
  ++alpha[static_cast<std::size_t>(i)];
  return derivative_of(*this, alpha);
}

double Jet3::derivative(int i, int j) const {
  std::array<int, 3> alpha{};
  ++alpha[static_cast<std::size_t>(i)];
  ++alpha[static_cast<std::size_t>(j)];
  return derivative_of(*this, alpha);
}

double Jet3::derivative(int i, int j, int k) const {
  std::array<int, 3> alpha{};
  ++alpha[static_cast<std::size_t>(i)];
  ++alpha[static_cast<std::size_t>(j)];
  ++alpha[static_cast<std::size_t>(k)];
  return derivative_of(*this, alpha);
}

Jet3 Jet3::partial(int axis) const {
  Jet3 out;
  for (std::size_t i = 0; i < kJetSize; ++i) {
    auto alpha = kMonomials[i];
    if (alpha[0] + alpha[1] + alpha[2] >= kJetOrder) continue;
    ++alpha[static_cast<std::size_t>(axis)];
    const int src = monomial_index(alpha[0], alpha[1], alpha[2]);
    out.c_[i] = alpha[static_cast<std::size_t>(axis)] * c_[static_cast<std::size_t>(src)];
  }
  return out;
}

Jet3& Jet3::operator+=(const Jet3& o) {
  for (std::size_t i = 0; i < kJetSize; ++i) c_[i] += o.c_[i];
  return *this;
}

Jet3& Jet3::operator-=(const Jet3& o) {
  for (std::size_t i = 0; i < kJetSize; ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet3& Jet3::operator*=(const Jet3& o) {
  *this = *this * o;
  return *this;
}

Jet3& Jet3::operator*=(double s) {
  for (auto& x : c_) x *= s;
  return *this;
}

Jet3& Jet3::operator/=(const Jet3& o) {
  *this = *this / o;
  return *this;
}

Jet3 operator-(const Jet3& a) { return a * -1.0; }
Jet3 operator+(Jet3 a, const Jet3& b) { return a += b; }
Jet3 operator-(Jet3 a, const Jet3& b) { return a -= b; }

Jet3 operator*(const Jet3& a, const Jet3& b) {
  std::array<double, kJetSize> out{};
  for (const auto& t : kProducts) out[t.out] += a[t.lhs] * b[t.rhs];
  return Jet3::from_coefficients(out);
}

Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }
Jet3 operator+(Jet3 a, double s) { return a += s; }
Jet3 operator+(double s, Jet3 a) { return a += s; }
Jet3 operator-(Jet3 a, double s) { return a -= s; }
Jet3 operator-(double s, const Jet3& a) { return -a + s; }
Jet3 operator*(Jet3 a, double s) { return a *= s; }
Jet3 operator*(double s, Jet3 a) { return a *= s; }
Jet3 operator/(Jet3 a, double s) { return a *= 1.0 / s; }
Jet3 operator/(double s, const Jet3& a) { return reciprocal(a) * s; }

Jet3 compose(const Jet3& f, const std::array<double, 4>& d) {
  Jet3 delta = f;
  delta[0] = 0.0;
  const Jet3 delta2 = delta * delta;
  const Jet3 delta3 = delta2 * delta;
  Jet3 out = delta * d[1] + delta2 * (d[2] / 2.0) + delta3 * (d[3] / 6.0);
  out[0] = d[0];
  return out;
}

Jet3 reciprocal(const Jet3& f) {
  const double x = f.value();
  if (x == 0.0) throw DomainError("division by zero");
  const double r = 1.0 / x;
  return compose(f, {r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r});
}

Jet3 sin(const Jet3& f) {
  const double s = std::sin(f.value());
  const double c = std::cos(f.value());
  return compose(f, {s, c, -s, -c});
}

Jet3 cos(const Jet3& f) {
  const double s = std::sin(f.value());
  const double c = std::cos(f.value());
  return compose(f, {c, -s, -c, s});
}

Jet3 tan(const Jet3& f) {
  const double c = std::cos(f.value());
  if (c == 0.0) throw DomainError("tan at a pole");
  const double t = std::tan(f.value());
  const double sec2 = 1.0 + t * t;
  return compose(f, {t, sec2, 2.0 * t * sec2, sec2 * (2.0 + 6.0 * t * t)});
}

Jet3 exp(const Jet3& f) {
  const double e = std::exp(f.value());
  return compose(f, {e, e, e, e});
}

Jet3 log(const Jet3& f) {
  const double x = f.value();
  if (!(x > 0.0)) throw DomainError("log of non-positive value");
  const double r = 1.0 / x;
  return compose(f, {std::log(x), r, -r * r, 2.0 * r * r * r});
}

Jet3 sqrt(const Jet3& f) {
  const double x = f.value();
  // The derivatives are unbounded at 0, so the jet needs x strictly positive.
  if (!(x > 0.0)) throw DomainError("sqrt of non-positive value (jet)");
  const double r = std::sqrt(x);
  const double r3 = r * x;
  const double r5 = r3 * x;
  return compose(f, {r, 0.5 / r, -0.25 / r3, 0.375 / r5});
}

Jet3 sinh(const Jet3& f) {
  const double s = std::sinh(f.value());
  const double c = std::cosh(f.value());
  return compose(f, {s, c, s, c});
}

Jet3 cosh(const Jet3& f) {
  const double s = std::sinh(f.value());
  const double c = std::cosh(f.value());
  return compose(f, {c, s, c, s});
}

Jet3 tanh(const Jet3& f) {
  const double t = std::tanh(f.value());
  const double sech2 = 1.0 - t * t;
  return compose(f, {t, sech2, -2.0 * t * sech2, sech2 * (6.0 * t * t - 2.0)});
}

Jet3 pow(const Jet3& f, int n) {
  if (n < 0) return pow(reciprocal(f), -n);
  Jet3 result(1.0);
  Jet3 base = f;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace cottonlab::jets
