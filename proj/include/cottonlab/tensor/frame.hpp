#pragma once

#include <cmath>

#include "cottonlab/error.hpp"
#include "cottonlab/jets/jet3.hpp"
#include "cottonlab/tensor/symmat.hpp"
#include "cottonlab/tensor/tensor.hpp"

namespace cottonlab::tensor {

/// Frame vectors S_1, S_2, S_3 stored as the columns of a matrix:
/// vectors(mu, a) is the mu-th chart component of S_a.
struct Frame {
  Mat3 vectors = identity<double>();

  Vec3 column(int a) const { return {vectors(0, a), vectors(1, a), vectors(2, a)}; }
  double determinant() const { return det(vectors); }
};

/// max |S^T g S - I|.
double orthonormality_defect(const SymMat3& g, const Frame& s);

namespace detail {
inline double sqrt_of(double x) { return std::sqrt(x); }
inline jets::Jet3 sqrt_of(const jets::Jet3& x) { return jets::sqrt(x); }
}  // namespace detail

/// Classical Gram-Schmidt on the columns of `seed` with respect to g.
/// Works on values and on jets, so frame fields built this way can be
/// differentiated. The caller checks the seed determinant.
template <class T>
Matrix<T> gram_schmidt_columns(const Matrix<T>& g, const Matrix<T>& seed) {
  Matrix<T> s = seed;
  auto ip = [&](int a, int b) {
    T r(0.0);
    for (int m = 0; m < 3; ++m) {
      for (int n = 0; n < 3; ++n) r += s(m, a) * g(m, n) * s(n, b);
    }
    return r;
  };
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < a; ++b) {
      const T c = ip(a, b);
      for (int m = 0; m < 3; ++m) s(m, a) -= c * s(m, b);
    }
    const T inv = T(1.0) / detail::sqrt_of(ip(a, a));
    for (int m = 0; m < 3; ++m) s(m, a) = s(m, a) * inv;
  }
  return s;
}

/// Orthonormal frame with S_1 parallel to seed column 0 and the same
/// orientation as the seed. Throws DegenerateSeed when |det seed| < 1e-12.
Frame gram_schmidt(const SymMat3& g, const Mat3& seed);

}  // namespace cottonlab::tensor
