#pragma once

#include "cottonlab/geometry/curvature.hpp"

namespace cottonlab::geometry {

// Identity residuals. Every value is normalized as residual / (1 + scale),
// where scale is the largest magnitude among the quantities entering the
// identity, so that the same tolerance applies to small and large metrics.

/// Pair symmetries R_ijkl = -R_jikl = -R_ijlk = R_klij.
double riemann_symmetry_defect(const Tensor<double, 4>& r);

/// R_ijkl + R_jkil + R_kijl.
double bianchi_first_defect(const Tensor<double, 4>& r);

/// Cyclic sum over (m, i, j) of (nabla_m R)_{ijkl}.
double bianchi_second_defect(const CurvatureJets& c);

/// d_k g_ij - Gamma^m_ki g_mj - Gamma^m_kj g_im, compared as jets through
/// order 2.
double metric_compatibility_defect(const CurvatureJets& c);

/// g^{ik} C_{ijk}.
double tr13_defect(const CurvaturePacket& p);

/// tr_g(Sch) - scal/4.
double schouten_trace_defect(const CurvaturePacket& p);

/// |Cott - Cott^T|.
double cotton_symmetry_defect(const CurvaturePacket& p);

/// |g^{ij} Cott_ij|.
double cotton_trace_defect(const CurvaturePacket& p);

/// |delta Cott| at p.
double cotton_divergence_defect(const MetricSpec& m, const Vec3& p);

/// |delta(Ric - scal/2 g)| at p.
double einstein_divergence_defect(const MetricSpec& m, const Vec3& p);

/// |R(U,V)X - curvature_from_schouten(U,V,X)| relative to the size of the
/// Riemann side.
double schouten_reconstruction_error(const CurvaturePacket& p, const Vec3& u, const Vec3& v,
                                     const Vec3& x);

/// max |C(e^{2f}g) - C(g)| over the components of the Cotton form at p.
double conformal_cotton_defect(const MetricSpec& m, const Expr& f, const Vec3& p);

}  // namespace cottonlab::geometry
