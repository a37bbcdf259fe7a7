#pragma once

#include <array>
#include <string>
#include <utility>

#include "cottonlab/tensor/tensor.hpp"

namespace cottonlab::tensor {

/// Symmetric 3x3 matrix holding its 6 independent entries, so symmetry is
/// exact by construction.
class SymMat3 {
 public:
  SymMat3() = default;
  /// Entries in the order (11, 12, 13, 22, 23, 33).
  explicit SymMat3(const std::array<double, 6>& upper) : v_(upper) {}
  /// Takes the symmetric part of `m`.
  explicit SymMat3(const Mat3& m);

  static SymMat3 identity() { return SymMat3({1, 0, 0, 1, 0, 1}); }
  static SymMat3 diagonal(double a, double b, double c) { return SymMat3({a, 0, 0, b, 0, c}); }

  double operator()(int i, int j) const { return v_[slot(i, j)]; }
  void set(int i, int j, double value) { v_[slot(i, j)] = value; }

  Mat3 matrix() const;
  const std::array<double, 6>& upper() const { return v_; }

  /// Leading principal minors all positive.
  bool is_positive_definite() const;
  double determinant() const { return det(matrix()); }

  static constexpr std::size_t slot(int i, int j) {
    if (i > j) std::swap(i, j);
    constexpr std::size_t row_start[3] = {0, 3, 5};
    return row_start[i] + static_cast<std::size_t>(j - i);
  }

  friend bool operator==(const SymMat3&, const SymMat3&) = default;

 private:
  std::array<double, 6> v_{};
};

/// Throws NotPositiveDefinite (mentioning `where`) unless g is SPD.
void require_positive_definite(const SymMat3& g, const std::string& where);

}  // namespace cottonlab::tensor
