#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cottonlab/error.hpp"
#include "cottonlab/jets/expr.hpp"
#include "cottonlab/jets/jet3.hpp"
#include "support/finite_difference.hpp"
#include "support/random_expr.hpp"

using namespace cottonlab;
using namespace cottonlab::jets;

namespace {

Jet3 random_jet(std::mt19937_64& rng) {
  // Dyadic coefficients keep products exact so ring axioms compare with ==.
  std::uniform_int_distribution<int> d(-8, 8);
  std::array<double, kJetSize> c{};
  for (auto& x : c) x = d(rng) / 4.0;
  return Jet3::from_coefficients(c);
}

}  // namespace

TEST(Eval, SimpleExamples) {
  EXPECT_EQ(eval(parse("x3"), {1, 2, 5}), 5.0);
  EXPECT_EQ(eval(parse("sin(x1)"), {0, 0, 0}), 0.0);
  EXPECT_EQ(eval(parse("1/(x3*x3)"), {0, 0, 2}), 0.25);
}

TEST(Eval, ExpOfSquare) {
  // e^0.18 to 17 digits (mpmath).
  EXPECT_NEAR(eval(parse("exp(2*(x1^2))"), {0.3, 0, 0}), 1.1972173631218102, 1e-15);
}

TEST(Eval, DomainErrors) {
  EXPECT_THROW(eval(parse("log(x1)"), {-1, 0, 0}), DomainError);
  EXPECT_THROW(eval(parse("log(x1)"), {0, 0, 0}), DomainError);
  EXPECT_THROW(eval(parse("sqrt(x1)"), {-0.5, 0, 0}), DomainError);
  EXPECT_THROW(eval(parse("1/x2"), {0, 0, 0}), DomainError);
  EXPECT_THROW(eval(parse("x2^(-2)"), {0, 0, 0}), DomainError);
  EXPECT_THROW(eval_jet(parse("1/x2"), {0, 0, 0}), DomainError);
}

TEST(EvalJet, Constant) {
  const Jet3 j = eval_jet(parse("7"), {0.4, -1, 3});
  EXPECT_EQ(j.value(), 7.0);
  for (std::size_t i = 1; i < kJetSize; ++i) EXPECT_EQ(j[i], 0.0);
}

TEST(EvalJet, Bilinear) {
  const Jet3 j = eval_jet(parse("x1*x2"), {0, 0, 0});
  for (std::size_t i = 0; i < kJetSize; ++i) {
    EXPECT_EQ(j[i], i == static_cast<std::size_t>(monomial_index(1, 1, 0)) ? 1.0 : 0.0);
  }
}

TEST(EvalJet, SineTaylorSeries) {
  const Jet3 j = eval_jet(parse("sin(x1)"), {0, 0, 0});
  EXPECT_EQ(j.coeff(1, 0, 0), 1.0);
  EXPECT_NEAR(j.coeff(3, 0, 0), -1.0 / 6.0, 1e-16);
  EXPECT_EQ(j.coeff(2, 0, 0), 0.0);
  EXPECT_EQ(j.coeff(0, 1, 0), 0.0);
  // Cross-check the cubic coefficient against finite differences.
  const auto f = [](const std::array<double, 3>& p) { return std::sin(p[0]); };
  EXPECT_NEAR(j.derivative(0, 0, 0), testkit::richardson_derivative(f, {0, 0, 0}, {0, 0, 0}, 1e-2),
              1e-7);
}

TEST(EvalJet, AgreesWithFiniteDifferencesOnRandomExpressions) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  const std::vector<std::vector<int>> multi_indices = {
      {0}, {1}, {2}, {0, 0}, {0, 1}, {1, 2}, {2, 2}, {0, 0, 0}, {0, 1, 2}, {1, 1, 2}, {2, 2, 2}};
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Expr e = testkit::random_expr(rng, 4);
    const std::array<double, 3> p = {coord(rng), coord(rng), coord(rng)};
    const Jet3 j = eval_jet(e, p);
    const auto f = [&](const std::array<double, 3>& q) { return eval(e, q); };
    for (const auto& axes : multi_indices) {
      double jet_value = 0.0;
      switch (axes.size()) {
        case 1: jet_value = j.derivative(axes[0]); break;
        case 2: jet_value = j.derivative(axes[0], axes[1]); break;
        default: jet_value = j.derivative(axes[0], axes[1], axes[2]); break;
      }
      const double h = 0.2;
      const double fd = testkit::richardson_derivative(f, p, axes, h);
      ASSERT_NEAR(jet_value, fd, 1e-6 * std::max(1.0, std::abs(fd)))
          << to_string(e) << " at " << format_point(p) << " axes size " << axes.size();
      ++checked;
    }
  }
  EXPECT_EQ(checked, 11000);
}

TEST(Jet3Ring, AxiomsHoldExactlyOnDyadicJets) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Jet3 a = random_jet(rng);
    const Jet3 b = random_jet(rng);
    const Jet3 c = random_jet(rng);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * Jet3(1.0), a);
    EXPECT_EQ(a + Jet3(0.0), a);
  }
}

TEST(Jet3, ReciprocalInvertsUpToTruncation) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Jet3 a = random_jet(rng);
    a[0] = 1.5 + trial % 3;
    const Jet3 one = a * reciprocal(a);
    EXPECT_NEAR(one[0], 1.0, 1e-14);
    for (std::size_t i = 1; i < kJetSize; ++i) EXPECT_NEAR(one[i], 0.0, 1e-12);
  }
}

TEST(Jet3, PartialDropsAnOrder) {
  const Jet3 j = eval_jet(parse("x1^3 + x1*x2*x3"), {1, 2, 3});
  const Jet3 dx = j.partial(0);
  EXPECT_DOUBLE_EQ(dx.value(), 3.0 + 6.0);
  EXPECT_DOUBLE_EQ(dx.derivative(0), 6.0);
  EXPECT_DOUBLE_EQ(dx.derivative(1), 3.0);
  EXPECT_DOUBLE_EQ(dx.derivative(0, 0), 6.0);
  EXPECT_DOUBLE_EQ(dx.derivative(1, 2), 1.0);
  for (std::size_t i = 10; i < kJetSize; ++i) EXPECT_EQ(dx[i], 0.0);
}

TEST(Jet3, PowNegativeExponent) {
  const Jet3 x = Jet3::variable(0, 2.0);
  const Jet3 p = pow(x, -2);
  EXPECT_DOUBLE_EQ(p.value(), 0.25);
  EXPECT_DOUBLE_EQ(p.derivative(0), -2.0 / 8.0);
  EXPECT_DOUBLE_EQ(p.derivative(0, 0), 6.0 / 16.0);
  EXPECT_DOUBLE_EQ(p.derivative(0, 0, 0), -24.0 / 32.0);
}
