#include "cottonlab/tensor/hodge.hpp"

#include <cmath>
#include <vector>

namespace cottonlab::tensor {
namespace {

std::vector<int> indices_of(unsigned mask) {
  std::vector<int> out;
  for (int i = 0; i < 3; ++i) {
    if (mask & (1u << i)) out.push_back(i);
  }
  return out;
}

// det of the submatrix of m with rows `rows` and columns `cols`.
double minor(const Mat3& m, unsigned rows, unsigned cols) {
  const auto r = indices_of(rows);
  const auto c = indices_of(cols);
  switch (r.size()) {
    case 0: return 1.0;
    case 1: return m(r[0], c[0]);
    case 2: return m(r[0], c[0]) * m(r[1], c[1]) - m(r[0], c[1]) * m(r[1], c[0]);
    default: return det(m);
  }
}

}  // namespace

ScalarForm<double> raise_all(const SymMat3& g, const ScalarForm<double>& a) {
  const Mat3 ginv = inverse(g.matrix());
  ScalarForm<double> out(a.degree());
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += minor(ginv, a.mask(i), a.mask(k)) * a[k];
    out[i] = s;
  }
  return out;
}

ScalarForm<double> hodge_star(const SymMat3& g, int orientation, const ScalarForm<double>& a) {
  require_positive_definite(g, "in hodge_star");
  using Basis = FormBasis<3>;
  const ScalarForm<double> up = raise_all(g, a);
  const double volume = orientation * std::sqrt(g.determinant());
  ScalarForm<double> out(3 - a.degree());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const unsigned complement = 0b111u & ~a.mask(i);
    out[Basis::position(complement)] += volume * Basis::shuffle_sign(a.mask(i), complement) * up[i];
  }
  return out;
}

double form_inner(const SymMat3& g, const ScalarForm<double>& a, const ScalarForm<double>& b) {
  const ScalarForm<double> up = raise_all(g, a);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += up[i] * b[i];
  return s;
}

}  // namespace cottonlab::tensor
