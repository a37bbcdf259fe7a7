#include "cottonlab/tensor/frame.hpp"

#include <algorithm>

namespace cottonlab::tensor {

double orthonormality_defect(const SymMat3& g, const Frame& s) {
  const Mat3 m = transpose(s.vectors) * g.matrix() * s.vectors;
  double d = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(m(i, j) - (i == j ? 1.0 : 0.0)));
  }
  return d;
}

Frame gram_schmidt(const SymMat3& g, const Mat3& seed) {
  require_positive_definite(g, "in gram_schmidt");
  const double d = det(seed);
  if (!(std::abs(d) >= 1e-12)) throw DegenerateSeed(d);
  Frame f;
  f.vectors = gram_schmidt_columns(g.matrix(), seed);
  // One re-orthogonalization pass keeps the defect at rounding level for
  // badly conditioned seeds.
  f.vectors = gram_schmidt_columns(g.matrix(), f.vectors);
  return f;
}

}  // namespace cottonlab::tensor
