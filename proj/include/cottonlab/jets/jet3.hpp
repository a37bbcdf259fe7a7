#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace cottonlab::jets {

inline constexpr std::size_t kJetSize = 20;
inline constexpr int kJetOrder = 3;

/// Multi-indices (a,b,c) with a+b+c <= 3, graded by total degree.
inline constexpr std::array<std::array<int, 3>, kJetSize> kMonomials = {{
    {0, 0, 0},
    {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
    {2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2},
    {3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 1, 1},
    {1, 0, 2}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3},
}};

/// Position of the monomial x1^a x2^b x3^c, or -1 past order 3.
constexpr int monomial_index(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0 || a + b + c > kJetOrder) return -1;
  for (std::size_t i = 0; i < kJetSize; ++i) {
    if (kMonomials[i][0] == a && kMonomials[i][1] == b && kMonomials[i][2] == c) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

constexpr int monomial_degree(std::size_t i) {
  return kMonomials[i][0] + kMonomials[i][1] + kMonomials[i][2];
}

/// Truncated Taylor expansion of a scalar function of (x1,x2,x3) about a
/// point, through total order 3. Coefficient i multiplies
/// (x-p)^alpha_i, i.e. it equals D^alpha f / alpha!.
///
/// Derived jets (`partial`) lose one order of validity: the order-3 slots of
/// a differentiated jet are zero rather than meaningful, and the pipeline
/// code tracks how many orders each stage still carries.
class Jet3 {
 public:
  constexpr Jet3() = default;
  constexpr Jet3(double value) { c_[0] = value; }  // NOLINT(google-explicit-constructor)

  /// The coordinate function x_axis expanded about `value`.
  static constexpr Jet3 variable(int axis, double value) {
    Jet3 j(value);
    j.c_[1 + axis] = 1.0;
    return j;
  }

  static constexpr Jet3 from_coefficients(const std::array<double, kJetSize>& c) {
    Jet3 j;
    j.c_ = c;
    return j;
  }

  constexpr double value() const { return c_[0]; }
  constexpr double coeff(int a, int b, int c) const {
    const int i = monomial_index(a, b, c);
    return i < 0 ? 0.0 : c_[static_cast<std::size_t>(i)];
  }
  constexpr double& operator[](std::size_t i) { return c_[i]; }
  constexpr double operator[](std::size_t i) const { return c_[i]; }
  std::span<const double, kJetSize> coefficients() const { return c_; }

  /// Partial derivatives (not Taylor coefficients).
  double derivative(int i) const;
  double derivative(int i, int j) const;
  double derivative(int i, int j, int k) const;

  /// Jet of d/dx_axis; valid through order 2 of the input's validity.
  Jet3 partial(int axis) const;

  Jet3& operator+=(const Jet3& o);
  Jet3& operator-=(const Jet3& o);
  Jet3& operator*=(const Jet3& o);
  Jet3& operator*=(double s);
  Jet3& operator/=(const Jet3& o);
  Jet3& operator+=(double s) {
    c_[0] += s;
    return *this;
  }
  Jet3& operator-=(double s) {
    c_[0] -= s;
    return *this;
  }

  friend bool operator==(const Jet3&, const Jet3&) = default;

 private:
  std::array<double, kJetSize> c_{};
};

Jet3 operator-(const Jet3& a);
Jet3 operator+(Jet3 a, const Jet3& b);
Jet3 operator-(Jet3 a, const Jet3& b);
Jet3 operator*(const Jet3& a, const Jet3& b);
Jet3 operator/(const Jet3& a, const Jet3& b);
Jet3 operator+(Jet3 a, double s);
Jet3 operator+(double s, Jet3 a);
Jet3 operator-(Jet3 a, double s);
Jet3 operator-(double s, const Jet3& a);
Jet3 operator*(Jet3 a, double s);
Jet3 operator*(double s, Jet3 a);
Jet3 operator/(Jet3 a, double s);
Jet3 operator/(double s, const Jet3& a);

/// phi(f) given phi and its first three derivatives at f.value().
Jet3 compose(const Jet3& f, const std::array<double, 4>& phi_derivatives);

Jet3 reciprocal(const Jet3& f);
Jet3 sin(const Jet3& f);
Jet3 cos(const Jet3& f);
Jet3 tan(const Jet3& f);
Jet3 exp(const Jet3& f);
Jet3 log(const Jet3& f);
Jet3 sqrt(const Jet3& f);
Jet3 sinh(const Jet3& f);
Jet3 cosh(const Jet3& f);
Jet3 tanh(const Jet3& f);
Jet3 pow(const Jet3& f, int n);

/// Value accessor usable in templates over double and Jet3.
inline double value_of(double x) { return x; }
inline double value_of(const Jet3& x) { return x.value(); }

}  // namespace cottonlab::jets
