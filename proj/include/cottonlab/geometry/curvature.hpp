#pragma once

#include <functional>
#include <utility>

#include "cottonlab/geometry/metric.hpp"
#include "cottonlab/tensor/tensor.hpp"

namespace cottonlab::geometry {

using tensor::Tensor;

/// Index conventions used throughout:
///   gamma(k, i, j)     = Gamma^k_{ij}
///   riemann(i, j, k, l) = R_{ijkl} = g(R(d_i, d_j) d_l, d_k),
///                         R(U, V) = [nabla_U, nabla_V] - nabla_[U,V]
///   ricci(u, v)         = g^{ik} R_{iukv},  scal = g^{uv} Ric_uv
///   schouten            = Ric - scal/4 g
///   cotton_form(i,j,k)  = (nabla_i Sch)_{jk} - (nabla_j Sch)_{ik}
///   cotton_tensor(a, k) = Hodge star of the 2-form C(., ., k) in slot a.
/// With these, the unit round sphere has R_{ijij} = g_ii g_jj - g_ij^2.

/// Curvature pipeline evaluated in jet arithmetic. Each stage consumes one
/// derivative: metric jets are exact through order 3, gamma through 2,
/// riemann/ricci/scal/schouten through 1 and nabla_schouten through 0.
struct CurvatureJets {
  Vec3 point{};
  Matrix<Jet3> g;
  Matrix<Jet3> ginv;
  Tensor<Jet3, 3> gamma;
  Tensor<Jet3, 4> riemann;
  Matrix<Jet3> ricci;
  Jet3 scal;
  Matrix<Jet3> schouten;
  Tensor<Jet3, 3> nabla_schouten;  // (i, j, k) = (nabla_i Sch)_{jk}
};

CurvatureJets curvature_jets(const Matrix<Jet3>& g, const Vec3& p);
/// Only g, ginv and gamma are filled; the curvature fields stay zero.
CurvatureJets connection_only_jets(const Matrix<Jet3>& g, const Vec3& p);
CurvatureJets curvature_jets(const MetricSpec& m, const Vec3& p);

struct CurvaturePacket {
  Vec3 point{};
  int orientation = 1;
  SymMat3 g;
  Tensor<double, 3> gamma;
  Tensor<double, 4> riemann;
  SymMat3 ricci;
  double scal = 0.0;
  SymMat3 schouten;
  Tensor<double, 3> cotton_form;
  Mat3 cotton_tensor;
};

CurvaturePacket curvature_packet(const MetricSpec& m, const Vec3& p);
CurvaturePacket packet_from_jets(const CurvatureJets& j, int orientation);

Tensor<double, 3> christoffels(const MetricSpec& m, const Vec3& p);
Tensor<double, 4> riemann(const MetricSpec& m, const Vec3& p);
std::pair<SymMat3, double> ricci_scalar(const Tensor<double, 4>& r, const SymMat3& g);
SymMat3 schouten(const SymMat3& ricci, double scal, const SymMat3& g);
Tensor<double, 3> cotton_form(const MetricSpec& m, const Vec3& p);
Mat3 cotton_tensor(const Tensor<double, 3>& c, const SymMat3& g, int orientation);

/// g-norm of the Cotton form, sqrt(1/2 C_{ijk} C^{ijk}).
double cotton_form_norm(const Tensor<double, 3>& c, const SymMat3& g);

/// R(U, V) X as a vector.
Vec3 apply_riemann(const Tensor<double, 4>& r, const SymMat3& g, const Vec3& u, const Vec3& v,
                   const Vec3& x);

/// R(U,V)X = <X,V> Sch(U) + <Sch(X),V> U - <Sch(X),U> V - <U,X> Sch(V),
/// valid for every 3-metric; Sch(U) is the endomorphism g^{-1} Sch.
Vec3 curvature_from_schouten(const SymMat3& sch, const SymMat3& g, const Vec3& u, const Vec3& v,
                             const Vec3& x);

/// A symmetric 2-tensor field given as jets at a point (exact through at
/// least order 1).
using SymField = std::function<Matrix<Jet3>(const Vec3&)>;

/// (delta h)_j = -g^{ik} (nabla_k h)_{ij}. With this sign the contracted
/// Bianchi identity reads delta(Ric - scal/2 g) = 0.
Vec3 divergence_sym2(const MetricSpec& m, const SymField& field, const Vec3& p);

/// Jets of a tensor-valued function through order 1, from Richardson
/// extrapolated central differences with step h. Higher slots are zero.
template <std::size_t R>
Tensor<Jet3, R> fd_field_jets(const std::function<Tensor<double, R>(const Vec3&)>& f,
                              const Vec3& p, double h);

/// Cotton tensor field with first-derivative jets (needs fourth metric
/// derivatives, so it is differentiated numerically).
SymField cotton_tensor_field(const MetricSpec& m, double h = 1e-3);

/// Ric - scal/2 g, exact through order 1.
SymField einstein_field(const MetricSpec& m);

}  // namespace cottonlab::geometry
