#pragma once

#include <array>
#include <functional>
#include <string>

#include "cottonlab/geometry/curvature.hpp"
#include "cottonlab/tensor/forms.hpp"
#include "cottonlab/tensor/frame.hpp"

namespace cottonlab::frames {

using geometry::CurvatureJets;
using geometry::MetricSpec;
using jets::Expr;
using jets::Jet3;
using tensor::Mat3;
using tensor::Matrix;
using tensor::MatrixForm;
using tensor::ScalarForm;
using tensor::SymMat3;
using tensor::Vec3;

/// A matrix-valued function given by its order-3 jets at a point.
using MatrixField = std::function<Matrix<Jet3>(const Vec3&)>;

/// A global frame field S_1, S_2, S_3. jets(p, g) returns the frame matrix
/// (mu, a) = S_a^mu as jets at p; g is the metric jet at p, used by frames
/// constructed from the metric.
class FrameField {
 public:
  using Builder = std::function<Matrix<Jet3>(const Vec3&, const Matrix<Jet3>&)>;

  explicit FrameField(Builder b, std::string description = "custom")
      : build_(std::move(b)), description_(std::move(description)) {}

  /// components[3a + mu] = S_a^mu (S_1 first, then S_2, then S_3).
  static FrameField from_expressions(const std::array<Expr, 9>& components);
  /// Gram-Schmidt applied to the coordinate frame (d_1, d_2, d_3).
  static FrameField gram_schmidt_coordinate();
  /// The frame S a for an SO(3)-valued field a.
  FrameField gauge(const MatrixField& a) const;

  Matrix<Jet3> jets(const Vec3& p, const Matrix<Jet3>& g) const { return build_(p, g); }
  const std::string& description() const { return description_; }

 private:
  Builder build_;
  std::string description_;
};

/// Connection 1-form at a point: omega[mu](i, j) = omega_ij(d_mu).
struct ConnectionForm {
  MatrixForm<double> omega{1};
  double antisymmetry_defect = 0.0;
  double orthonormality_defect = 0.0;
};

/// Connection 1-form jets, omega_ij(d_mu) = g_kl S_i^k (d_mu S_j^l + Gamma^l_{mu nu} S_j^nu),
/// exact through order 2. The raw (unprojected) values are returned.
MatrixForm<Jet3> connection_jets(const CurvatureJets& c, const Matrix<Jet3>& frame);

/// omega at p, antisymmetrized, with the removed defect reported. Throws
/// FrameNotOrthonormal when the frame defect at p exceeds `tol`.
ConnectionForm connection_one_form(const MetricSpec& m, const FrameField& frame, const Vec3& p,
                                   double tol = 1e-10);

/// Exterior derivative of a jet-valued form (loses one order of validity).
template <class V>
tensor::Form<V, 3> exterior_derivative(const tensor::Form<V, 3>& a);

/// Omega = d theta + theta ^ theta.
template <class T, int Dim>
MatrixForm<T, Dim> curvature_from(const MatrixForm<T, Dim>& theta,
                                  const MatrixForm<T, Dim>& dtheta) {
  return dtheta + tensor::wedge(theta, theta);
}

/// cs(theta) = tr(theta ^ d theta + 2/3 theta ^ theta ^ theta).
template <class T, int Dim>
ScalarForm<T, Dim> chern_simons(const MatrixForm<T, Dim>& theta, const MatrixForm<T, Dim>& dtheta) {
  auto cube = tensor::wedge(tensor::wedge(theta, theta), theta);
  cube *= 2.0 / 3.0;
  return tensor::trace_form(tensor::wedge(theta, dtheta) + cube);
}

/// Curvature 2-form of the frame at p (values).
MatrixForm<double> curvature_two_form(const MetricSpec& m, const FrameField& frame, const Vec3& p);

/// Omega_ij(d_a, d_b) = S_i^k S_j^l R_{abkl}: the Riemann tensor in the frame.
MatrixForm<double> frame_riemann(const geometry::CurvaturePacket& packet, const Mat3& frame);

/// Coefficient of dx1^dx2^dx3 in cs(omega) for the frame connection at p.
double cs_three_form(const MetricSpec& m, const FrameField& frame, const Vec3& p);

/// Same, from connection jets (exact through order 2).
double cs_coefficient(const MatrixForm<Jet3>& omega);

/// max over frame vectors of the torsion nabla_{S_a} S_b - nabla_{S_b} S_a - [S_a, S_b].
double torsion_defect(const MetricSpec& m, const FrameField& frame, const Vec3& p);

/// omega' = a^{-1} omega a + a^{-1} da at the jet level. Throws
/// NotSpecialOrthogonal when a(p) is not in SO(3) within 1e-10.
MatrixForm<Jet3> gauge_transform(const MatrixForm<Jet3>& omega, const Matrix<Jet3>& a,
                                 const Vec3& p);

/// Pointwise residual of
///   cs(omega') = cs(omega) + d tr(a^{-1} omega ^ da) - 1/3 tr((a^{-1} da)^3).
struct GaugeResidual {
  double cs_before = 0.0;
  double cs_after = 0.0;
  double exact_term = 0.0;    // d tr(a^{-1} omega ^ da)
  double winding_term = 0.0;  // tr((a^{-1} da)^3)
  double residual = 0.0;
};
GaugeResidual gauge_cs_residual(const MatrixForm<Jet3>& omega, const Matrix<Jet3>& a,
                                const Vec3& p);

/// tr((a^{-1} da)^3) coefficient for an SO(3)-valued field.
double winding_density(const Matrix<Jet3>& a);

/// Rotation field exp of the antisymmetric matrix built from a vector
/// field v (Rodrigues formula), as jets; used to build gauge maps.
Matrix<Jet3> rotation_jets(const std::array<Jet3, 3>& v);

}  // namespace cottonlab::frames
