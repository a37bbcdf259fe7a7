#pragma once

#include <array>
#include <string>

#include "cottonlab/jets/expr.hpp"
#include "cottonlab/jets/jet3.hpp"
#include "cottonlab/tensor/symmat.hpp"
#include "cottonlab/tensor/tensor.hpp"

namespace cottonlab::geometry {

using jets::Expr;
using jets::Jet3;
using tensor::Mat3;
using tensor::Matrix;
using tensor::SymMat3;
using tensor::Vec3;

/// Axis-aligned box [min, max] in chart coordinates.
struct Box {
  Vec3 min{};
  Vec3 max{};

  bool contains(const Vec3& p) const;
  Vec3 center() const;
  Vec3 width() const;
};

/// A Riemannian metric on a chart: six component expressions
/// (g11, g12, g13, g22, g23, g33), a domain and an orientation sign for
/// dx1^dx2^dx3.
struct MetricSpec {
  std::string name;
  std::array<Expr, 6> g;
  Box domain;
  int orientation = 1;

  const Expr& entry(int i, int j) const { return g[SymMat3::slot(i, j)]; }
};

/// Parses the six component strings (in g11, g12, g13, g22, g23, g33 order).
MetricSpec make_metric(std::string name, const std::array<std::string, 6>& components,
                       const Box& domain, int orientation = 1);

/// Euclidean metric on the given box.
MetricSpec flat_metric(const Box& domain);

/// Metric value at p; throws NotPositiveDefinite with the point.
SymMat3 metric_at(const MetricSpec& m, const Vec3& p);

/// Order-3 jets of all nine components at p; checks positive definiteness.
Matrix<Jet3> metric_jets(const MetricSpec& m, const Vec3& p);

/// The metric e^{2f} g built at the expression level.
MetricSpec conformal_rescale(const MetricSpec& m, const Expr& f);

}  // namespace cottonlab::geometry
