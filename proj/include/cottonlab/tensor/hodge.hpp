#pragma once

#include "cottonlab/tensor/forms.hpp"
#include "cottonlab/tensor/symmat.hpp"

namespace cottonlab::tensor {

/// Hodge star of a scalar k-form on an oriented 3-dimensional inner product
/// space with metric g (in the coordinate coframe dx^1, dx^2, dx^3).
///
/// Normative definition: in an oriented g-orthonormal coframe S^1, S^2, S^3,
///   *1 = S^1^S^2^S^3,  *S^1 = S^2^S^3,  *S^2 = S^3^S^1,  *S^3 = S^1^S^2,
/// extended linearly. The coordinate formula used here is
///   (*a)_J = orientation * sqrt(det g) * sum_I a^I eps(I, J)
/// with indices raised by g^{-1}. `orientation` is +1 when dx^1^dx^2^dx^3
/// is positively oriented and -1 otherwise.
ScalarForm<double> hodge_star(const SymMat3& g, int orientation, const ScalarForm<double>& a);

/// Induced inner product on k-forms, <a, b> = sum over increasing I of a^I b_I.
double form_inner(const SymMat3& g, const ScalarForm<double>& a, const ScalarForm<double>& b);

/// Components a^I with every index raised by g^{-1}.
ScalarForm<double> raise_all(const SymMat3& g, const ScalarForm<double>& a);

}  // namespace cottonlab::tensor
