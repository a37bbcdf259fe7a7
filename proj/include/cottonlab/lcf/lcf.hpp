#pragma once

#include <array>
#include <vector>

#include "cottonlab/geometry/curvature.hpp"
#include "cottonlab/geometry/metric.hpp"

namespace cottonlab::lcf {

using geometry::Box;
using geometry::MetricSpec;
using tensor::Mat3;
using tensor::SymMat3;
using tensor::Vec3;

struct CottonCheck {
  bool vanishes = false;
  double max_norm = 0.0;  // max of |cott|_g / (1 + |nabla Sch|_g)
  Vec3 worst_point{};
};

/// Samples `samples` points of the box (fixed-seed uniform draws) and
/// compares the normalized Cotton form norm against tol.
CottonCheck check_cotton_zero(const MetricSpec& m, const Box& box, int samples, double tol);

/// Odd number of nodes per axis on the cube center +- half_width.
struct GridSpec {
  Vec3 center{};
  double half_width = 0.5;
  int resolution = 33;

  double spacing() const { return 2.0 * half_width / (resolution - 1); }
  Vec3 node(int i, int j, int k) const;
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * resolution + j) * resolution + k;
  }
  std::size_t size() const {
    const auto r = static_cast<std::size_t>(resolution);
    return r * r * r;
  }
};

struct Diagnostics {
  double cotton_norm = 0.0;
  double rk4_error_estimate = 0.0;
  double a_defect = 0.0;           // max |A| / (1 + max |X|_g)
  double closedness_defect = 0.0;  // max |d_i X_j - d_j X_i| / (1 + max |X|)
  double path_consistency = 0.0;   // max |f - f_permuted|
  double flatness_residual = 0.0;
};

/// X (a 1-form, coordinate components) and its potential f on the grid.
struct GridField {
  GridSpec grid;
  std::vector<Vec3> x;
  std::vector<double> f;
  Diagnostics diagnostics;
};

struct SolverOptions {
  double cotton_tol = 1e-6;
  int cotton_samples = 64;
  double rk4_tol = 1e-8;
  double blowup_bound = 1e3;
  double closedness_tol = 1e-6;
};

/// Integrates nabla X = Sch + X (x) X - 1/2 |X|^2 g by RK4 along x1 through
/// the center, then along x2 from each node of that line, then along x3.
/// Throws CottonNotZero, StepTooLarge, BlowUp, InvalidArgument (even
/// resolution, box outside the domain).
GridField integrate_conformal_system(const MetricSpec& m, const GridSpec& grid, const Vec3& x0,
                                     const SolverOptions& options = {});

/// max over nodes of |A_ij| / (1 + max |X|_g) with
/// A_ij = d_i X_j - Gamma^k_ij X_k - Sch_ij - X_i X_j + 1/2 |X|^2 g_ij.
double a_defect(const MetricSpec& m, const GridField& field);

/// max |d_i X_j - d_j X_i| / (1 + max |X|) by grid differences; `where`
/// receives the worst node.
double closedness_defect(const GridField& field, Vec3* where = nullptr);

/// Fills f with f(basepoint) = 0 from line integrals of X along the
/// axis-ordered path (axis_order[0] first). Throws NotClosed when the
/// closedness defect exceeds tol.
void potential_from_closed_form(GridField& field, const std::array<int, 3>& basepoint,
                                double tol = 1e-6,
                                const std::array<int, 3>& axis_order = {0, 1, 2});

/// max over samples of |Riem(e^{2f} g)| / (1 + |Riem(g)|), norms taken in
/// the respective metrics.
double flatness_residual(const MetricSpec& m, const jets::Expr& f, const std::vector<Vec3>& samples);

/// Same with f given on the grid; derivatives of f by fourth-order grid
/// differences, curvature of e^{2f} g from the conformal change of Schouten.
double flatness_residual(const MetricSpec& m, const GridField& field);

/// Sch(e^{2f} g) = Sch(g) - Hess f + df (x) df - 1/2 |df|^2 g, with
/// Hess f = d_i d_j f - Gamma^k_ij d_k f.
SymMat3 conformal_schouten(const SymMat3& sch, const SymMat3& g, const tensor::Tensor<double, 3>& gamma,
                           const Vec3& df, const Mat3& second);

/// |R|_g for the Riemann tensor R_{ijkl}.
double riemann_norm(const tensor::Tensor<double, 4>& r, const SymMat3& g);

/// Riemann tensor of a 3-metric rebuilt from its Schouten tensor.
tensor::Tensor<double, 4> riemann_from_schouten(const SymMat3& sch, const SymMat3& g);

/// Integration, potential (basepoint at the center) and all diagnostics.
GridField solve(const MetricSpec& m, const GridSpec& grid, const Vec3& x0,
                const SolverOptions& options = {});

}  // namespace cottonlab::lcf
