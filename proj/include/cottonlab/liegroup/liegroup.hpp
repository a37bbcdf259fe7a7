#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cottonlab/tensor/symmat.hpp"
#include "cottonlab/tensor/tensor.hpp"

namespace cottonlab::liegroup {

using tensor::Mat3;
using tensor::SymMat3;
using Table = tensor::Tensor<double, 3>;

/// A 3-dimensional Lie algebra with a left-invariant inner product.
/// c(k, i, j) is the coefficient of e_k in [e_i, e_j].
struct LieAlgebraData {
  std::string name;
  Table c;
  SymMat3 ip = SymMat3::identity();
  std::optional<double> total_volume;
};

/// [e1,e2] = 2e3 and cyclic; volume pi^2 (SO(3)).
LieAlgebraData so3();
/// Same bracket with the volume of S^3, 2 pi^2.
LieAlgebraData su2();
/// [e1,e2] = e3; not compact, no volume.
LieAlgebraData heisenberg();
LieAlgebraData abelian();
/// so(3) with inner product diag(t,1,1); volume pi^2 sqrt(t).
LieAlgebraData berger(double t);

/// "so3", "su2", "heisenberg", "abelian", "berger:t=<real>".
/// Throws InvalidArgument for other keys.
LieAlgebraData catalog(std::string_view key);

/// max |c(k,i,j) + c(k,j,i)| + max over the cyclic Jacobi sums.
double jacobi_defect(const LieAlgebraData& l);

/// Throws NotPositiveDefinite or JacobiViolation (defect above 1e-12).
void validate(const LieAlgebraData& l);

/// The same algebra in an ip-orthonormal basis (Gram-Schmidt of e, same
/// orientation); ip becomes the identity.
LieAlgebraData orthonormalize(const LieAlgebraData& l);

/// gamma(i, j, l) = coefficient of e_l in nabla_{e_i} e_j, from the Koszul
/// formula for left-invariant fields.
Table levi_civita_leftinv(const LieAlgebraData& l);

/// Curvature of the left-invariant metric, all components in the basis e.
struct LeftInvariantCurvature {
  Table gamma;
  tensor::Tensor<double, 4> riemann;  // R_{ijkl} = <R(e_i,e_j)e_l, e_k>
  Mat3 ricci;
  double scal = 0.0;
  Mat3 schouten;
  Table cotton_form;  // C_{ijk} = (nabla_i Sch)_{jk} - (nabla_j Sch)_{ik}
  Mat3 cotton;        // Cott(e_a, e_k), orientation of the basis e
};
LeftInvariantCurvature curvature_leftinv(const LieAlgebraData& l);

/// Cotton tensor components Cott(e_a, e_b).
Mat3 cotton_leftinv(const LieAlgebraData& l);

/// cs(omega) = density dvol for the frame connection of an orthonormal
/// left-invariant frame, with tr(omega ^ d omega) and tr(omega^3) reported
/// separately (as multiples of dvol).
struct CsDensity {
  double wedge_term = 0.0;
  double cube_term = 0.0;
  double density = 0.0;
};
CsDensity cs_density_leftinv(const LieAlgebraData& l);

/// -density * volume / (16 pi^2).
double cs_invariant_group(const LieAlgebraData& l, double volume);
/// Uses l.total_volume; throws InvalidArgument when it is absent.
double cs_invariant_group(const LieAlgebraData& l);

/// A matrix representation given by the images of the basis vectors.
struct Representation {
  int dim = 0;
  std::vector<std::vector<std::complex<double>>> images;  // three dim x dim row-major
};

/// The adjoint representation on the ip-orthonormal basis.
Representation adjoint(const LieAlgebraData& l);
/// Quaternion units i, j, k as 2x2 complex matrices ([i,j] = 2k).
Representation su2_defining();

/// tr(omega_MC^3) as a multiple of dvol: the antisymmetrized trace of
/// triple products of the images of an oriented orthonormal basis.
double mc_cube_trace(const Representation& r);
double mc_cube_trace(const LieAlgebraData& l);

/// Berger-family check of the variational formula: a centered difference
/// of cs_invariant_group in t against (1/8 pi^2) <gdot, Cott> vol with
/// gdot = diag(1,0,0) in the basis e. Both signs are reported; the stated
/// formula carries a minus sign.
struct VariationalReport {
  double t = 0.0;
  double step = 0.0;
  double finite_difference = 0.0;
  double cotton_pairing = 0.0;  // (1/8 pi^2) <gdot, Cott> vol
  double relative_error = 0.0;                // against -cotton_pairing
  double relative_error_opposite_sign = 0.0;  // against +cotton_pairing
};
VariationalReport berger_variational_check(double t, double step = 1e-4);

}  // namespace cottonlab::liegroup
