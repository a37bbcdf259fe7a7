#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace cottonlab::testkit {

// Nested central differences along the listed axes, step h.
template <class F>
double central_difference(const F& f, std::array<double, 3> p, const std::vector<int>& axes,
                          double h, std::size_t depth = 0) {
  if (depth == axes.size()) return f(p);
  const int a = axes[depth];
  auto plus = p;
  auto minus = p;
  plus[static_cast<std::size_t>(a)] += h;
  minus[static_cast<std::size_t>(a)] -= h;
  return (central_difference(f, plus, axes, h, depth + 1) -
          central_difference(f, minus, axes, h, depth + 1)) /
         (2.0 * h);
}

// Ridders' extrapolation: a Neville tableau in h^2 over geometrically
// shrinking steps, returning the entry with the smallest error estimate.
template <class F>
double ridders(const F& f, const std::array<double, 3>& p, const std::vector<int>& axes, double h,
               double& err) {
  constexpr int kMax = 12;
  constexpr double kShrink = 1.4;
  constexpr double kShrink2 = kShrink * kShrink;
  double a[kMax][kMax];
  double best = 0.0;
  err = std::numeric_limits<double>::infinity();
  a[0][0] = central_difference(f, p, axes, h);
  for (int i = 1; i < kMax; ++i) {
    h /= kShrink;
    a[0][i] = central_difference(f, p, axes, h);
    double fac = kShrink2;
    for (int j = 1; j <= i; ++j) {
      a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
      fac *= kShrink2;
      const double e = std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
      if (e <= err) {
        err = e;
        best = a[j][i];
      }
    }
    if (std::abs(a[i][i] - a[i - 1][i - 1]) >= 2.0 * err) break;
  }
  return best;
}

// Best Ridders estimate over a few starting steps below h.
template <class F>
double richardson_derivative(const F& f, const std::array<double, 3>& p,
                             const std::vector<int>& axes, double h) {
  double best = 0.0;
  double best_err = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k, h /= 4.0) {
    double err = 0.0;
    const double d = ridders(f, p, axes, h, err);
    if (err < best_err) {
      best_err = err;
      best = d;
    }
  }
  return best;
}

}  // namespace cottonlab::testkit
