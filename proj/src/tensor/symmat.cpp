#include "cottonlab/tensor/symmat.hpp"

#include "cottonlab/error.hpp"

namespace cottonlab::tensor {

SymMat3::SymMat3(const Mat3& m) {
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) v_[slot(i, j)] = 0.5 * (m(i, j) + m(j, i));
  }
}

Mat3 SymMat3::matrix() const {
  Mat3 m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = (*this)(i, j);
  }
  return m;
}

bool SymMat3::is_positive_definite() const {
  const auto& a = *this;
  const double m1 = a(0, 0);
  const double m2 = a(0, 0) * a(1, 1) - a(0, 1) * a(0, 1);
  const double m3 = determinant();
  return m1 > 0.0 && m2 > 0.0 && m3 > 0.0;
}

void require_positive_definite(const SymMat3& g, const std::string& where) {
  if (!g.is_positive_definite()) throw NotPositiveDefinite(where);
}

}  // namespace cottonlab::tensor
