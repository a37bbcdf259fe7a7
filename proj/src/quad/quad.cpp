#include "cottonlab/quad/quad.hpp"

#include <cmath>
#include <numbers>

#include "cottonlab/error.hpp"
#include "cottonlab/parallel.hpp"

namespace cottonlab::quad {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

Rule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre needs at least one node");
  Rule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    r.nodes[lo] = mid - half * x;
    r.nodes[hi] = mid + half * x;
    r.weights[lo] = half * w;
    r.weights[hi] = half * w;
  }
  if (n % 2 == 1) r.nodes[static_cast<std::size_t>(n / 2)] = mid;
  return r;
}

Rule periodic_trapezoid(int n, double a, double b) {
  if (n < 1) throw InvalidArgument("trapezoid rule needs at least one node");
  Rule r;
  const double h = (b - a) / n;
  for (int i = 0; i < n; ++i) {
    r.nodes.push_back(a + i * h);
    r.weights.push_back(h);
  }
  return r;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double quadrature(const Integrand& f, const Domain& d, int order) {
  if (order < 2) throw InvalidArgument("quadrature order must be at least 2");
  std::array<Rule, 3> rules;
  for (int a = 0; a < 3; ++a) {
    rules[static_cast<std::size_t>(a)] =
        d.periodic[static_cast<std::size_t>(a)]
            ? periodic_trapezoid(order, d.min[static_cast<std::size_t>(a)], d.max[static_cast<std::size_t>(a)])
            : gauss_legendre(order, d.min[static_cast<std::size_t>(a)], d.max[static_cast<std::size_t>(a)]);
  }
  const auto n = static_cast<std::size_t>(order);
  std::vector<double> samples(n * n * n);
  parallel_for(samples.size(), [&](std::size_t idx) {
    const std::size_t i = idx / (n * n);
    const std::size_t j = (idx / n) % n;
    const std::size_t k = idx % n;
    const Vec3 p = {rules[0].nodes[i], rules[1].nodes[j], rules[2].nodes[k]};
    samples[idx] = f(p) * rules[0].weights[i] * rules[1].weights[j] * rules[2].weights[k];
  });
  for (std::size_t idx = 0; idx < samples.size(); ++idx) {
    if (!std::isfinite(samples[idx])) {
      const std::size_t i = idx / (n * n);
      const std::size_t j = (idx / n) % n;
      const std::size_t k = idx % n;
      throw NonFiniteSample({rules[0].nodes[i], rules[1].nodes[j], rules[2].nodes[k]});
    }
  }
  return pairwise_sum(samples);
}

double jacobian_density(const Parametrization& param, const Vec3& p) {
  const std::size_t dim = param.map.size();
  std::vector<std::array<double, 3>> j(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    const auto jet = jets::eval_jet(param.map[a], p);
    for (int mu = 0; mu < 3; ++mu) j[a][static_cast<std::size_t>(mu)] = jet.derivative(mu);
  }
  tensor::Mat3 gram;
  for (int mu = 0; mu < 3; ++mu) {
    for (int nu = 0; nu < 3; ++nu) {
      double s = 0.0;
      for (std::size_t a = 0; a < dim; ++a) {
        s += j[a][static_cast<std::size_t>(mu)] * j[a][static_cast<std::size_t>(nu)];
      }
      gram(mu, nu) = s;
    }
  }
  return std::sqrt(std::max(tensor::det(gram), 0.0));
}

double volume(const Parametrization& param, int order) {
  return quadrature([&](const Vec3& p) { return jacobian_density(param, p); }, param.domain, order);
}

double volume(const geometry::MetricSpec& m, const Domain& d, int order) {
  return quadrature([&](const Vec3& p) { return std::sqrt(geometry::metric_at(m, p).determinant()); },
                    d, order);
}

double integrate_3form(const Integrand& coefficient, int orientation, const Domain& d, int order) {
  return orientation * quadrature(coefficient, d, order);
}

double integrate_cs(const geometry::MetricSpec& m, const frames::FrameField& frame, const Domain& d,
                    int order) {
  return integrate_3form([&](const Vec3& p) { return frames::cs_three_form(m, frame, p); },
                         m.orientation, d, order);
}

double chern_simons_invariant(const geometry::MetricSpec& m, const frames::FrameField& frame,
                              const Domain& d, int order) {
  return -integrate_cs(m, frame, d, order) / (16.0 * kPi * kPi);
}

namespace {

using jets::Jet3;
using tensor::Matrix;

// Body angular velocity coframe of Rz(a) Ry(b) Rz(c): w[row][mu].
std::array<std::array<Expr, 3>, 3> euler_coframe() {
  const Expr b = Expr::variable(1);
  const Expr c = Expr::variable(2);
  const Expr zero;
  return {{
      {-(jets::sin(b) * jets::cos(c)), jets::sin(c), zero},
      {jets::sin(b) * jets::sin(c), jets::cos(c), zero},
      {jets::cos(b), zero, Expr::constant(1.0)},
  }};
}

Expr product(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr();
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  return a * b;
}

Expr sum(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  return a + b;
}

}  // namespace

GroupChart so3_euler_chart(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("Berger parameter must be positive");
  const auto w = euler_coframe();
  const std::array<double, 3> weight = {t, 1.0, 1.0};
  geometry::MetricSpec m;
  m.name = t == 1.0 ? "so3-euler" : "berger-euler";
  for (int mu = 0; mu < 3; ++mu) {
    for (int nu = mu; nu < 3; ++nu) {
      Expr s;
      for (int a = 0; a < 3; ++a) {
        s = sum(s, product(Expr::constant(weight[static_cast<std::size_t>(a)] / 4.0),
                           product(w[a][mu], w[a][nu])));
      }
      m.g[tensor::SymMat3::slot(mu, nu)] = s;
    }
  }
  m.domain = {{0.0, 0.0, 0.0}, {2 * kPi, kPi, 2 * kPi}};
  // The chart orientation is opposite to the left-invariant frame's.
  m.orientation = -1;

  // Dual frame E_a of the coframe, scaled to unit length: S_a = 2 E_a / sqrt(t_a).
  const Expr b = Expr::variable(1);
  const Expr c = Expr::variable(2);
  const Expr two = Expr::constant(2.0);
  const Expr s1 = Expr::constant(2.0 / std::sqrt(t));
  const std::array<Expr, 9> comps = {
      -(s1 * jets::cos(c) / jets::sin(b)), s1 * jets::sin(c), s1 * jets::cos(b) * jets::cos(c) / jets::sin(b),
      two * jets::sin(c) / jets::sin(b),  two * jets::cos(c), -(two * jets::cos(b) * jets::sin(c) / jets::sin(b)),
      Expr(),                             Expr(),             two,
  };
  return {m.name, m, frames::FrameField::from_expressions(comps),
          {{0.0, 0.0, 0.0}, {2 * kPi, kPi, 2 * kPi}, {true, false, true}}};
}

Parametrization s3_embedding() {
  const Expr chi = Expr::variable(0);
  const Expr theta = Expr::variable(1);
  const Expr phi = Expr::variable(2);
  return {"s3",
          {{0.0, 0.0, 0.0}, {kPi, kPi, 2 * kPi}, {false, false, true}},
          {jets::cos(chi), jets::sin(chi) * jets::cos(theta),
           jets::sin(chi) * jets::sin(theta) * jets::cos(phi),
           jets::sin(chi) * jets::sin(theta) * jets::sin(phi)}};
}

namespace {

// eta i, eta j, eta k for eta = (w, x, y, z): right multiplication, so
// the fields are left-invariant.
std::array<std::array<Jet3, 4>, 3> quaternion_fields(const std::array<Jet3, 4>& q) {
  const Jet3& w = q[0];
  const Jet3& x = q[1];
  const Jet3& y = q[2];
  const Jet3& z = q[3];
  return {{{-x, w, z, -y}, {-y, -z, w, x}, {-z, y, -x, w}}};
}

Matrix<Jet3> s3_frame_jets(const Parametrization& emb, const Vec3& p, const Matrix<Jet3>& g) {
  std::array<Jet3, 4> eta;
  for (std::size_t a = 0; a < 4; ++a) eta[a] = jets::eval_jet(emb.map[a], p);
  const auto v = quaternion_fields(eta);
  const auto ginv = tensor::inverse(g);
  Matrix<Jet3> s;
  for (int a = 0; a < 3; ++a) {
    std::array<Jet3, 3> lowered;
    for (int nu = 0; nu < 3; ++nu) {
      Jet3 acc(0.0);
      for (std::size_t k = 0; k < 4; ++k) acc += eta[k].partial(nu) * v[static_cast<std::size_t>(a)][k];
      lowered[static_cast<std::size_t>(nu)] = acc;
    }
    for (int mu = 0; mu < 3; ++mu) {
      Jet3 acc(0.0);
      for (int nu = 0; nu < 3; ++nu) acc += ginv(mu, nu) * lowered[static_cast<std::size_t>(nu)];
      s(mu, a) = acc;
    }
  }
  return s;
}

}  // namespace

GroupChart s3_hyperspherical_chart() {
  const auto emb = s3_embedding();
  auto m = geometry::make_metric("s3-hyperspherical",
                                 {"1", "0", "0", "sin(x1)^2", "0", "sin(x1)^2*sin(x2)^2"},
                                 {{0.0, 0.0, 0.0}, {kPi, kPi, 2 * kPi}});
  frames::FrameField frame(
      [emb](const Vec3& p, const Matrix<Jet3>& g) { return s3_frame_jets(emb, p, g); },
      "left-invariant quaternion frame eta i, eta j, eta k");
  const Vec3 probe = {1.0, 1.0, 1.0};
  const double d = tensor::det(tensor::values(frame.jets(probe, geometry::metric_jets(m, probe))));
  m.orientation = d > 0 ? 1 : -1;
  return {m.name, m, frame, emb.domain};
}

frames::MatrixField euler_rotation() {
  return [](const Vec3& p) {
    auto rz = [](const Jet3& t) {
      Matrix<Jet3> r = tensor::identity<Jet3>();
      r(0, 0) = jets::cos(t);
      r(0, 1) = -jets::sin(t);
      r(1, 0) = jets::sin(t);
      r(1, 1) = jets::cos(t);
      return r;
    };
    auto ry = [](const Jet3& t) {
      Matrix<Jet3> r = tensor::identity<Jet3>();
      r(0, 0) = jets::cos(t);
      r(0, 2) = jets::sin(t);
      r(2, 0) = -jets::sin(t);
      r(2, 2) = jets::cos(t);
      return r;
    };
    return rz(Jet3::variable(0, p[0])) * ry(Jet3::variable(1, p[1])) * rz(Jet3::variable(2, p[2]));
  };
}

}  // namespace cottonlab::quad
