#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cottonlab/frames/frames.hpp"
#include "cottonlab/geometry/metric.hpp"

namespace cottonlab::quad {

using jets::Expr;
using tensor::Vec3;

/// Integration box; periodic axes use the trapezoid rule on [min, max).
struct Domain {
  Vec3 min{};
  Vec3 max{};
  std::array<bool, 3> periodic{};
};

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b].
Rule gauss_legendre(int n, double a, double b);
/// n equally spaced nodes on [a, b), equal weights (b - a)/n.
Rule periodic_trapezoid(int n, double a, double b);

/// Pairwise (cascade) summation in index order.
double pairwise_sum(std::span<const double> v);

using Integrand = std::function<double(const Vec3&)>;

/// Tensor-product rule with `order` nodes per axis. Samples are evaluated
/// concurrently and reduced in a fixed order. Throws InvalidArgument for
/// order < 2 and NonFiniteSample at the first non-finite node (in node order).
double quadrature(const Integrand& f, const Domain& d, int order);

/// A map from a box into R^3 or R^4 given by expressions in x1, x2, x3.
struct Parametrization {
  std::string name;
  Domain domain;
  std::vector<Expr> map;
};

/// sqrt(det(J^T J)) of the parametrization at p.
double jacobian_density(const Parametrization& param, const Vec3& p);

/// Euclidean 3-volume of the image (integral of the Jacobian density).
double volume(const Parametrization& param, int order);
/// Riemannian volume of the box: integral of sqrt(det g).
double volume(const geometry::MetricSpec& m, const Domain& d, int order);

/// Integral over the oriented manifold of the 3-form c dx1^dx2^dx3: the
/// Lebesgue integral of c times m.orientation.
double integrate_3form(const Integrand& coefficient, int orientation, const Domain& d, int order);

/// Integral of cs(omega) for the frame connection. Frames are checked at
/// every node (FrameNotOrthonormal).
double integrate_cs(const geometry::MetricSpec& m, const frames::FrameField& frame, const Domain& d,
                    int order);

/// CS = -(1/16 pi^2) integral of cs.
double chern_simons_invariant(const geometry::MetricSpec& m, const frames::FrameField& frame,
                              const Domain& d, int order);

/// A chart covering a compact group up to a null set, with a global frame.
struct GroupChart {
  std::string name;
  geometry::MetricSpec metric;
  frames::FrameField frame;
  Domain domain;
};

/// SO(3) in ZYZ Euler angles with the metric (t w_x^2 + w_y^2 + w_z^2)/4
/// and the orthonormal left-invariant frame; t = 1 is the standard metric.
GroupChart so3_euler_chart(double t = 1.0);

/// The unit sphere in hyperspherical coordinates (chi, theta, phi) with
/// the frame U_1 = eta i, U_2 = eta j, U_3 = eta k (left-invariant); oriented so that U is
/// positive.
GroupChart s3_hyperspherical_chart();

/// eta(chi, theta, phi) in R^4 = H (real part first).
Parametrization s3_embedding();

/// The rotation Rz(x1) Ry(x2) Rz(x3): the identity map of SO(3) read in
/// the Euler chart, as a gauge field.
frames::MatrixField euler_rotation();

}  // namespace cottonlab::quad
