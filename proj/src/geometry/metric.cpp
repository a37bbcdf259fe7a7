#include "cottonlab/geometry/metric.hpp"

#include "cottonlab/error.hpp"

namespace cottonlab::geometry {

bool Box::contains(const Vec3& p) const {
  for (int i = 0; i < 3; ++i) {
    if (p[i] < min[i] || p[i] > max[i]) return false;
  }
  return true;
}

Vec3 Box::center() const {
  return {0.5 * (min[0] + max[0]), 0.5 * (min[1] + max[1]), 0.5 * (min[2] + max[2])};
}

Vec3 Box::width() const { return {max[0] - min[0], max[1] - min[1], max[2] - min[2]}; }

MetricSpec make_metric(std::string name, const std::array<std::string, 6>& components,
                       const Box& domain, int orientation) {
  MetricSpec m;
  m.name = std::move(name);
  for (std::size_t i = 0; i < 6; ++i) m.g[i] = jets::parse(components[i]);
  m.domain = domain;
  m.orientation = orientation;
  return m;
}

MetricSpec flat_metric(const Box& domain) {
  return make_metric("flat", {"1", "0", "0", "1", "0", "1"}, domain, 1);
}

SymMat3 metric_at(const MetricSpec& m, const Vec3& p) {
  std::array<double, 6> v{};
  for (std::size_t i = 0; i < 6; ++i) v[i] = jets::eval(m.g[i], p);
  SymMat3 g(v);
  require_positive_definite(g, "at " + format_point(p));
  return g;
}

Matrix<Jet3> metric_jets(const MetricSpec& m, const Vec3& p) {
  std::array<Jet3, 6> v;
  std::array<double, 6> values{};
  for (std::size_t i = 0; i < 6; ++i) {
    v[i] = jets::eval_jet(m.g[i], p);
    values[i] = v[i].value();
  }
  require_positive_definite(SymMat3(values), "at " + format_point(p));
  Matrix<Jet3> g;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) g(i, j) = v[SymMat3::slot(i, j)];
  }
  return g;
}

MetricSpec conformal_rescale(const MetricSpec& m, const Expr& f) {
  if (f.is_constant(0.0)) return m;
  MetricSpec out = m;
  const Expr factor = jets::exp(Expr::constant(2.0) * f);
  for (auto& e : out.g) e = factor * e;
  return out;
}

}  // namespace cottonlab::geometry
