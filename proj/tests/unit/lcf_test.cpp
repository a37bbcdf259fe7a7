#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "cottonlab/error.hpp"
#include "cottonlab/geometry/curvature.hpp"
#include "cottonlab/jets/expr.hpp"
#include "cottonlab/lcf/lcf.hpp"
#include "support/metrics.hpp"
#include "support/random_expr.hpp"

namespace {

using namespace cottonlab;
using namespace cottonlab::lcf;
using geometry::conformal_rescale;
using geometry::flat_metric;
using jets::parse;

MetricSpec conformally_flat(const std::string& f) {
  return conformal_rescale(flat_metric(testkit::cube(2)), parse(f));
}

GridSpec grid(int resolution, Vec3 center = {0, 0, 0}, double half_width = 0.5) {
  GridSpec g;
  g.center = center;
  g.half_width = half_width;
  g.resolution = resolution;
  return g;
}

// X sampled from a function on the grid nodes.
GridField sampled(const GridSpec& g, const std::function<Vec3(const Vec3&)>& x) {
  GridField field;
  field.grid = g;
  field.x.resize(g.size());
  for (int i = 0; i < g.resolution; ++i) {
    for (int j = 0; j < g.resolution; ++j) {
      for (int k = 0; k < g.resolution; ++k) field.x[g.index(i, j, k)] = x(g.node(i, j, k));
    }
  }
  return field;
}

double max_abs_x(const GridField& field) {
  double m = 0.0;
  for (const auto& x : field.x) m = std::max(m, tensor::max_abs(x));
  return m;
}

std::vector<Vec3> box_samples(const Box& box, int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec3> out;
  for (int i = 0; i < n; ++i) {
    Vec3 p;
    for (int a = 0; a < 3; ++a) {
      std::uniform_real_distribution<double> u(box.min[a], box.max[a]);
      p[a] = u(rng);
    }
    out.push_back(p);
  }
  return out;
}

TEST(CottonZero, ConformallyFlatAndSphere) {
  const auto a = check_cotton_zero(conformally_flat("sin(x1) + 0.2*x2^2"), testkit::cube(0.5), 32, 1e-6);
  EXPECT_TRUE(a.vanishes);
  EXPECT_LT(a.max_norm, 1e-8);
  const auto b = check_cotton_zero(testkit::round_s3_chart(), {{0.7, 0.7, 0.5}, {1.7, 1.7, 1.5}}, 32, 1e-6);
  EXPECT_TRUE(b.vanishes);
  EXPECT_LT(b.max_norm, 1e-8);
}

TEST(CottonZero, PerturbationScalesLinearly) {
  // delta + eps h with h not conformally flat.
  auto metric = [](double eps) {
    const std::string e = std::to_string(eps);
    return geometry::make_metric("pert", {"1 + " + e + "*sin(x2 + x3)", e + "*x3*x1", "0",
                                          "1 + " + e + "*x1^2", e + "*cos(x1)", "1 + " + e + "*x2*x1"},
                                 testkit::cube(1));
  };
  const auto c1 = check_cotton_zero(metric(1e-3), testkit::cube(0.5), 32, 1e-6);
  const auto c2 = check_cotton_zero(metric(2e-3), testkit::cube(0.5), 32, 1e-6);
  EXPECT_FALSE(c1.vanishes);
  EXPECT_GT(c1.max_norm, 1e-6);
  EXPECT_NEAR(c2.max_norm / c1.max_norm, 2.0, 1e-2);
}

TEST(CottonZero, SampleCountMustBePositive) {
  EXPECT_THROW(check_cotton_zero(flat_metric(testkit::cube(1)), testkit::cube(0.5), 0, 1e-6),
               InvalidArgument);
}

TEST(Potential, ZeroFieldGivesZero) {
  auto field = sampled(grid(9), [](const Vec3&) { return Vec3{}; });
  potential_from_closed_form(field, {4, 4, 4});
  for (double f : field.f) EXPECT_EQ(f, 0.0);
}

TEST(Potential, ConstantFieldGivesLinearFunction) {
  const GridSpec g = grid(11, {0.2, -0.1, 0.3});
  auto field = sampled(g, [](const Vec3&) { return Vec3{0.7, -1.2, 0.4}; });
  potential_from_closed_form(field, {2, 9, 5});
  const Vec3 b = g.node(2, 9, 5);
  for (int i = 0; i < 11; ++i) {
    for (int j = 0; j < 11; ++j) {
      for (int k = 0; k < 11; ++k) {
        const Vec3 p = g.node(i, j, k);
        const double exact = 0.7 * (p[0] - b[0]) - 1.2 * (p[1] - b[1]) + 0.4 * (p[2] - b[2]);
        EXPECT_NEAR(field.f[g.index(i, j, k)], exact, 1e-13);
      }
    }
  }
}

TEST(Potential, RecoversKnownPotential) {
  const GridSpec g = grid(33);
  auto field = sampled(g, [](const Vec3& p) { return Vec3{std::cos(p[0]) * p[1], std::sin(p[0]), 0.0}; });
  const int c = 16;
  potential_from_closed_form(field, {c, c, c});
  GridField other = field;
  potential_from_closed_form(other, {c, c, c}, 1e-6, {2, 1, 0});
  double err = 0.0;
  double path = 0.0;
  for (int i = 0; i < 33; ++i) {
    for (int j = 0; j < 33; ++j) {
      for (int k = 0; k < 33; ++k) {
        const Vec3 p = g.node(i, j, k);
        const std::size_t idx = g.index(i, j, k);
        err = std::max(err, std::abs(field.f[idx] - std::sin(p[0]) * p[1]));
        path = std::max(path, std::abs(field.f[idx] - other.f[idx]));
      }
    }
  }
  EXPECT_LT(err, 1e-7);
  EXPECT_LT(path, 1e-6);
}

TEST(Potential, RejectsRotationField) {
  auto field = sampled(grid(9), [](const Vec3& p) { return Vec3{p[1], -p[0], 0.0}; });
  try {
    potential_from_closed_form(field, {4, 4, 4});
    FAIL() << "expected NotClosed";
  } catch (const NotClosed& e) {
    EXPECT_NEAR(e.defect(), 2.0 / (1.0 + 0.5), 1e-12);
  }
}

TEST(Potential, RejectsBadArguments) {
  auto field = sampled(grid(9), [](const Vec3&) { return Vec3{}; });
  EXPECT_THROW(potential_from_closed_form(field, {4, 9, 4}), InvalidArgument);
  EXPECT_THROW(potential_from_closed_form(field, {4, 4, 4}, 1e-6, {0, 0, 1}), InvalidArgument);
}

TEST(ConformalSchouten, MatchesRescaledMetric) {
  std::mt19937_64 rng(7);
  for (const auto& m : testkit::generic_metrics()) {
    for (int trial = 0; trial < 4; ++trial) {
      const jets::Expr f = jets::Expr::constant(0.3) * testkit::random_expr(rng, 3);
      const MetricSpec m1 = conformal_rescale(m, f);
      const Vec3 p = testkit::random_point(rng, 0.7);
      const auto a = geometry::curvature_packet(m, p);
      const auto b = geometry::curvature_packet(m1, p);
      const auto fj = jets::eval_jet(f, p);
      Vec3 df;
      Mat3 second;
      for (int i = 0; i < 3; ++i) {
        df[i] = fj.derivative(i);
        for (int j = 0; j < 3; ++j) second(i, j) = fj.derivative(i, j);
      }
      const SymMat3 s = conformal_schouten(a.schouten, a.g, a.gamma, df, second);
      double err = 0.0;
      double scale = 1.0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          err = std::max(err, std::abs(s(i, j) - b.schouten(i, j)));
          scale = std::max(scale, std::abs(b.schouten(i, j)));
        }
      }
      EXPECT_LT(err / scale, 1e-7) << m.name;
    }
  }
}

TEST(RiemannFromSchouten, ReproducesCurvature) {
  std::mt19937_64 rng(11);
  for (const auto& m : testkit::generic_metrics()) {
    const auto c = geometry::curvature_packet(m, testkit::random_point(rng));
    const auto r = riemann_from_schouten(c.schouten, c.g);
    double err = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) err = std::max(err, std::abs(r[i] - c.riemann[i]));
    EXPECT_LT(err, 1e-10) << m.name;
  }
}

TEST(RiemannNorm, RoundSphere) {
  // Unit sphere: R_ijkl = g_ik g_jl - g_il g_jk, |R|^2 = 2 n (n - 1) = 12.
  const auto c = geometry::curvature_packet(testkit::round_s3_chart(), {1.0, 1.1, 0.4});
  EXPECT_NEAR(riemann_norm(c.riemann, c.g), std::sqrt(12.0), 1e-10);
}

TEST(Flatness, ExactCases) {
  const auto samples = box_samples(testkit::cube(0.5), 20, 3);
  EXPECT_EQ(flatness_residual(flat_metric(testkit::cube(1)), jets::Expr(), samples), 0.0);
  for (const char* f0 : {"0.3*x1", "sin(x1) + 0.2*x2^2", "0.4*x1*x2*x3 + cos(x3)"}) {
    const auto m = conformally_flat(f0);
    EXPECT_LT(flatness_residual(m, -parse(f0), samples), 1e-10) << f0;
    EXPECT_GT(flatness_residual(m, jets::Expr(), samples), 1e-2) << f0;
  }
}

TEST(Flatness, GridMatchesExpression) {
  // f = -f0 sampled on the grid against the exact expression.
  const auto m = conformally_flat("sin(x1) + 0.2*x2^2");
  GridField field = sampled(grid(33), [](const Vec3&) { return Vec3{}; });
  field.f.resize(field.grid.size());
  for (int i = 0; i < 33; ++i) {
    for (int j = 0; j < 33; ++j) {
      for (int k = 0; k < 33; ++k) {
        const Vec3 p = field.grid.node(i, j, k);
        field.f[field.grid.index(i, j, k)] = -(std::sin(p[0]) + 0.2 * p[1] * p[1]);
      }
    }
  }
  EXPECT_LT(flatness_residual(m, field), 1e-6);
  for (double& f : field.f) f *= 0.9;
  EXPECT_GT(flatness_residual(m, field), 1e-2);
}

TEST(Solver, FlatWithZeroInitialValueStaysZero) {
  const auto field = solve(flat_metric(testkit::cube(1)), grid(9), {0, 0, 0});
  EXPECT_EQ(max_abs_x(field), 0.0);
  for (double f : field.f) EXPECT_EQ(f, 0.0);
  EXPECT_EQ(field.diagnostics.flatness_residual, 0.0);
}

TEST(Solver, LinearFactorGivesConstantField) {
  // X = -df0 solves the system exactly when f0 = 0.3 x1.
  const auto m = conformally_flat("0.3*x1");
  const auto field = solve(m, grid(17), {-0.3, 0, 0});
  for (const auto& x : field.x) {
    EXPECT_NEAR(x[0], -0.3, 1e-12);
    EXPECT_NEAR(x[1], 0.0, 1e-12);
    EXPECT_NEAR(x[2], 0.0, 1e-12);
  }
  for (int i = 0; i < 17; ++i) {
    const Vec3 p = field.grid.node(i, 3, 11);
    EXPECT_NEAR(field.f[field.grid.index(i, 3, 11)], -0.3 * p[0], 1e-12);
  }
  // Only roundoff of the grid differences remains.
  EXPECT_LT(field.diagnostics.flatness_residual, 1e-8);
}

TEST(Solver, EndToEndConformallyFlat) {
  const auto m = conformally_flat("sin(x1) + 0.2*x2^2");
  const auto start = std::chrono::steady_clock::now();
  const auto field = solve(m, grid(33), {0, 0, 0});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto& d = field.diagnostics;
  EXPECT_LT(d.flatness_residual, 1e-5);
  EXPECT_LT(d.a_defect, 1e-6);
  EXPECT_LT(d.closedness_defect, 1e-6);
  EXPECT_LT(d.path_consistency, 1e-6);
  EXPECT_LT(d.rk4_error_estimate, 1e-8);
  EXPECT_LT(d.cotton_norm, 1e-8);
  EXPECT_LT(seconds, 60.0);
}

TEST(Solver, RoundSphereChart) {
  const auto field = solve(testkit::round_s3_chart(), grid(33, {1.2, 1.2, 1.0}), {0, 0, 0});
  EXPECT_LT(field.diagnostics.flatness_residual, 1e-5);
  EXPECT_LT(field.diagnostics.a_defect, 1e-6);
}

TEST(Solver, DifferentInitialValuesDifferByClosedForm) {
  const auto m = conformally_flat("sin(x1) + 0.2*x2^2");
  const auto a = solve(m, grid(33), {0, 0, 0});
  const auto b = solve(m, grid(33), {-0.4, 0.3, 0.2});
  EXPECT_LT(a.diagnostics.flatness_residual, 1e-5);
  EXPECT_LT(b.diagnostics.flatness_residual, 1e-5);
  GridField diff = a;
  for (std::size_t i = 0; i < diff.x.size(); ++i) {
    for (int j = 0; j < 3; ++j) diff.x[i][j] = a.x[i][j] - b.x[i][j];
  }
  EXPECT_GT(max_abs_x(diff), 0.1);
  EXPECT_LT(closedness_defect(diff), 1e-6);
}

TEST(Solver, PublicDefectMatchesDiagnostics) {
  const auto m = conformally_flat("0.2*x1*x2 + 0.1*x3^2");
  const auto field = integrate_conformal_system(m, grid(13), {0.1, 0, 0});
  EXPECT_DOUBLE_EQ(a_defect(m, field), field.diagnostics.a_defect);
  EXPECT_TRUE(field.f.empty());
  EXPECT_THROW(flatness_residual(m, field), InvalidArgument);
}

TEST(Solver, ResultIndependentOfWorkerCount) {
  const auto m = conformally_flat("sin(x1) + 0.2*x2^2");
  setenv("COTTONLAB_THREADS", "1", 1);
  const auto a = integrate_conformal_system(m, grid(15), {0.1, 0.2, 0});
  setenv("COTTONLAB_THREADS", "3", 1);
  const auto b = integrate_conformal_system(m, grid(15), {0.1, 0.2, 0});
  unsetenv("COTTONLAB_THREADS");
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(a.x[i][j], b.x[i][j]);
  }
  EXPECT_EQ(a.diagnostics.a_defect, b.diagnostics.a_defect);
}

TEST(SolverErrors, RefusesNonConformallyFlat) {
  try {
    solve(testkit::generic_metrics()[0], grid(9), {0, 0, 0});
    FAIL() << "expected CottonNotZero";
  } catch (const CottonNotZero& e) {
    EXPECT_GT(e.norm(), 1e-6);
  }
}

TEST(SolverErrors, BlowUp) {
  // Flat metric, X1' = X1^2 / 2 along x1: blows up at x1 = 2 / 50.
  SolverOptions o;
  o.rk4_tol = 1e300;
  EXPECT_THROW(integrate_conformal_system(flat_metric(testkit::cube(1)), grid(33), {50, 0, 0}, o), BlowUp);
}

TEST(SolverErrors, StepTooLarge) {
  EXPECT_THROW(integrate_conformal_system(conformally_flat("0.5*sin(6*x1)"), grid(7), {0, 0, 0}),
               StepTooLarge);
  SolverOptions loose;
  loose.rk4_tol = 1e-2;
  EXPECT_NO_THROW(integrate_conformal_system(conformally_flat("0.5*sin(6*x1)"), grid(7), {0, 0, 0}, loose));
}

TEST(SolverErrors, GridChecks) {
  const auto m = flat_metric(testkit::cube(1));
  EXPECT_THROW(integrate_conformal_system(m, grid(10), {0, 0, 0}), InvalidArgument);
  EXPECT_THROW(integrate_conformal_system(m, grid(5), {0, 0, 0}), InvalidArgument);
  EXPECT_THROW(integrate_conformal_system(m, grid(9, {0.8, 0, 0}), {0, 0, 0}), InvalidArgument);
}

}  // namespace
