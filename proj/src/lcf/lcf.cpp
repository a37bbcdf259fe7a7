#include "cottonlab/lcf/lcf.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <random>

#include "cottonlab/error.hpp"
#include "cottonlab/parallel.hpp"

namespace cottonlab::lcf {

namespace {

using tensor::Tensor;

struct NodeGeometry {
  SymMat3 g;
  Mat3 ginv;
  Tensor<double, 3> gamma;  // gamma(k, i, j) = Gamma^k_ij
  SymMat3 sch;
  double riemann_norm = 0.0;
};

NodeGeometry node_geometry(const MetricSpec& m, const Vec3& p) {
  const auto c = geometry::curvature_jets(m, p);
  NodeGeometry n;
  n.g = SymMat3(tensor::values(c.g));
  n.ginv = tensor::values(c.ginv);
  n.gamma = tensor::values(c.gamma);
  n.sch = SymMat3(tensor::values(c.schouten));
  n.riemann_norm = riemann_norm(tensor::values(c.riemann), n.g);
  return n;
}

double norm_g(const Mat3& ginv, const Vec3& x) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) s += ginv(k, l) * x[k] * x[l];
  }
  return std::sqrt(std::max(s, 0.0));
}

// dX_j/dx_axis from nabla X = Sch + X (x) X - 1/2 |X|^2 g.
Vec3 rhs(const NodeGeometry& n, int axis, const Vec3& x) {
  const double n2 = std::pow(norm_g(n.ginv, x), 2);
  Vec3 out{};
  for (int j = 0; j < 3; ++j) {
    double s = n.sch(axis, j) + x[axis] * x[j] - 0.5 * n2 * n.g(axis, j);
    for (int k = 0; k < 3; ++k) s += n.gamma(k, axis, j) * x[k];
    out[j] = s;
  }
  return out;
}

Vec3 axpy(const Vec3& x, double a, const Vec3& y) {
  return {x[0] + a * y[0], x[1] + a * y[1], x[2] + a * y[2]};
}

Vec3 rk4_step(const NodeGeometry& a, const NodeGeometry& mid, const NodeGeometry& b, int axis,
              const Vec3& x, double h) {
  const Vec3 k1 = rhs(a, axis, x);
  const Vec3 k2 = rhs(mid, axis, axpy(x, 0.5 * h, k1));
  const Vec3 k3 = rhs(mid, axis, axpy(x, 0.5 * h, k2));
  const Vec3 k4 = rhs(b, axis, axpy(x, h, k3));
  Vec3 out{};
  for (int j = 0; j < 3; ++j) out[j] = x[j] + h / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
  return out;
}

Vec3 shifted(Vec3 p, int axis, double d) {
  p[static_cast<std::size_t>(axis)] += d;
  return p;
}

struct LineContext {
  const MetricSpec& m;
  const GridSpec& grid;
  double blowup;
};

// Integrates along `axis` outward from the center index, starting with x
// at node `start`. Writes X (and node geometry when `cache` is non-null)
// for every node of the line. With estimate_tol > 0 each step is also
// taken as two half steps; returns the largest error estimate and throws
// StepTooLarge as soon as one exceeds the tolerance.
double integrate_line(const LineContext& ctx, std::array<int, 3> start, int axis, const Vec3& x0,
                      std::vector<Vec3>& xs, std::vector<NodeGeometry>* cache, double estimate_tol) {
  const int n = ctx.grid.resolution;
  const int c = (n - 1) / 2;
  const double h = ctx.grid.spacing();
  auto node_point = [&](int t) {
    auto idx = start;
    idx[static_cast<std::size_t>(axis)] = t;
    return std::make_pair(ctx.grid.index(idx[0], idx[1], idx[2]), ctx.grid.node(idx[0], idx[1], idx[2]));
  };
  double worst = 0.0;
  const auto [i0, p0] = node_point(c);
  const NodeGeometry g0 = node_geometry(ctx.m, p0);
  xs[i0] = x0;
  if (cache) (*cache)[i0] = g0;
  for (const int dir : {1, -1}) {
    Vec3 x = x0;
    NodeGeometry ga = g0;
    for (int t = c; t + dir >= 0 && t + dir < n; t += dir) {
      const auto [ia, pa] = node_point(t);
      const auto [ib, pb] = node_point(t + dir);
      const double step = dir * h;
      const NodeGeometry gm = node_geometry(ctx.m, shifted(pa, axis, 0.5 * step));
      const NodeGeometry gb = node_geometry(ctx.m, pb);
      const Vec3 next = rk4_step(ga, gm, gb, axis, x, step);
      if (estimate_tol > 0.0) {
        const NodeGeometry q1 = node_geometry(ctx.m, shifted(pa, axis, 0.25 * step));
        const NodeGeometry q3 = node_geometry(ctx.m, shifted(pa, axis, 0.75 * step));
        const Vec3 half = rk4_step(gm, q3, gb, axis, rk4_step(ga, q1, gm, axis, x, 0.5 * step), 0.5 * step);
        double e = 0.0;
        for (int j = 0; j < 3; ++j) e = std::max(e, std::abs(next[j] - half[j]));
        worst = std::max(worst, e / 15.0 / (1.0 + tensor::max_abs(next)));
        if (worst > estimate_tol) throw StepTooLarge(worst, estimate_tol);
      }
      const double size = norm_g(gb.ginv, next);
      if (!(size <= ctx.blowup)) throw BlowUp(size, pb);
      xs[ib] = next;
      if (cache) (*cache)[ib] = gb;
      x = next;
      ga = gb;
      (void)ia;
    }
  }
  return worst;
}

// Runs body(line) for every line and rethrows the failure of the lowest
// line index, so errors do not depend on scheduling.
void for_each_line(std::size_t count, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(count);
  parallel_for(count, [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Lagrange weights on the nodes 0..N-1 (unit spacing): the derivative at
// node x0, and the integral over [a, a + 1].
template <int N>
std::array<double, N> basis_polynomial(int m) {
  std::array<double, N> c{};
  c[0] = 1.0;
  double denom = 1.0;
  for (int k = 0; k < N; ++k) {
    if (k == m) continue;
    for (int d = N - 1; d >= 1; --d) c[d] = c[d - 1] - k * c[d];
    c[0] = -k * c[0];
    denom *= m - k;
  }
  for (double& v : c) v /= denom;
  return c;
}

template <int N>
std::array<double, N> derivative_weights(int x0) {
  std::array<double, N> w{};
  for (int m = 0; m < N; ++m) {
    const auto c = basis_polynomial<N>(m);
    double s = 0.0;
    for (int d = N - 1; d >= 1; --d) s = s * x0 + d * c[d];
    w[m] = s;
  }
  return w;
}

template <int N>
std::array<double, N> interval_weights(int a) {
  std::array<double, N> w{};
  for (int m = 0; m < N; ++m) {
    const auto c = basis_polynomial<N>(m);
    double s = 0.0;
    for (int d = 0; d < N; ++d) s += c[d] * (std::pow(a + 1.0, d + 1) - std::pow(a, d + 1)) / (d + 1);
    w[m] = s;
  }
  return w;
}

constexpr int kStencil = 7;  // sixth-order first derivatives
constexpr int kInterval = 6;  // sixth-order interval integrals

// Window of `width` nodes holding index i, centered where the grid allows.
int window_start(int i, int n, int width) { return std::clamp(i - (width - 1) / 2, 0, n - width); }

double derivative(const std::function<double(int)>& v, int n, int i, double h) {
  static const auto table = [] {
    std::array<std::array<double, kStencil>, kStencil> t{};
    for (int x0 = 0; x0 < kStencil; ++x0) t[x0] = derivative_weights<kStencil>(x0);
    return t;
  }();
  const int s = window_start(i, n, kStencil);
  const auto& w = table[static_cast<std::size_t>(i - s)];
  double d = 0.0;
  for (int m = 0; m < kStencil; ++m) d += w[m] * v(s + m);
  return d / h;
}

// Integral of the samples over [x_i, x_{i+1}].
double interval_integral(const std::function<double(int)>& v, int n, int i, double h) {
  static const auto table = [] {
    std::array<std::array<double, kInterval>, kInterval - 1> t{};
    for (int a = 0; a < kInterval - 1; ++a) t[a] = interval_weights<kInterval>(a);
    return t;
  }();
  const int s = std::clamp(i - (kInterval / 2 - 1), 0, n - kInterval);
  const auto& w = table[static_cast<std::size_t>(i - s)];
  double r = 0.0;
  for (int m = 0; m < kInterval; ++m) r += w[m] * v(s + m);
  return r * h;
}

// d/dx_axis of a scalar grid quantity at node (i, j, k).
double grid_derivative(const GridSpec& grid, const std::function<double(std::size_t)>& q,
                       std::array<int, 3> at, int axis) {
  const int t0 = at[static_cast<std::size_t>(axis)];
  return derivative(
      [&](int t) {
        auto idx = at;
        idx[static_cast<std::size_t>(axis)] = t;
        return q(grid.index(idx[0], idx[1], idx[2]));
      },
      grid.resolution, t0, grid.spacing());
}

// Signed integral of the samples over [x_b, x_t], summed interval by
// interval in a fixed direction so the error varies smoothly with t.
double line_integral(const std::function<double(int)>& v, int n, int b, int t, double h) {
  double s = 0.0;
  for (int i = std::min(b, t); i < std::max(b, t); ++i) s += interval_integral(v, n, i, h);
  return t > b ? s : -s;
}

std::vector<NodeGeometry> grid_geometry(const MetricSpec& m, const GridSpec& grid) {
  std::vector<NodeGeometry> out(grid.size());
  const int n = grid.resolution;
  parallel_for(grid.size(), [&](std::size_t idx) {
    const int i = static_cast<int>(idx / (static_cast<std::size_t>(n) * n));
    const int j = static_cast<int>((idx / n) % n);
    const int k = static_cast<int>(idx % n);
    out[idx] = node_geometry(m, grid.node(i, j, k));
  });
  return out;
}

double a_defect_with(const std::vector<NodeGeometry>& geo, const GridField& field) {
  const auto& grid = field.grid;
  const int n = grid.resolution;
  double xmax = 0.0;
  for (std::size_t idx = 0; idx < field.x.size(); ++idx) {
    xmax = std::max(xmax, norm_g(geo[idx].ginv, field.x[idx]));
  }
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const std::size_t idx = grid.index(i, j, k);
        const auto& ng = geo[idx];
        const Vec3& x = field.x[idx];
        const double n2 = std::pow(norm_g(ng.ginv, x), 2);
        for (int a = 0; a < 3; ++a) {
          for (int b = 0; b < 3; ++b) {
            double d = grid_derivative(
                grid, [&](std::size_t q) { return field.x[q][static_cast<std::size_t>(b)]; }, {i, j, k}, a);
            for (int c = 0; c < 3; ++c) d -= ng.gamma(c, a, b) * x[c];
            d -= ng.sch(a, b) + x[a] * x[b] - 0.5 * n2 * ng.g(a, b);
            worst = std::max(worst, std::abs(d));
          }
        }
      }
    }
  }
  return worst / (1.0 + xmax);
}

double flatness_with(const std::vector<NodeGeometry>& geo, const GridField& field) {
  const auto& grid = field.grid;
  const int n = grid.resolution;
  std::array<std::vector<double>, 3> df;
  for (int a = 0; a < 3; ++a) {
    auto& out = df[static_cast<std::size_t>(a)];
    out.resize(grid.size());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          out[grid.index(i, j, k)] =
              grid_derivative(grid, [&](std::size_t q) { return field.f[q]; }, {i, j, k}, a);
        }
      }
    }
  }
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const std::size_t idx = grid.index(i, j, k);
        const auto& ng = geo[idx];
        Vec3 d1{};
        Mat3 d2;
        for (int a = 0; a < 3; ++a) d1[a] = df[static_cast<std::size_t>(a)][idx];
        for (int a = 0; a < 3; ++a) {
          for (int b = 0; b < 3; ++b) {
            d2(a, b) = grid_derivative(
                grid, [&](std::size_t q) { return df[static_cast<std::size_t>(b)][q]; }, {i, j, k}, a);
          }
        }
        for (int a = 0; a < 3; ++a) {
          for (int b = a + 1; b < 3; ++b) d2(a, b) = d2(b, a) = 0.5 * (d2(a, b) + d2(b, a));
        }
        const SymMat3 sch1 = conformal_schouten(ng.sch, ng.g, ng.gamma, d1, d2);
        const double e2f = std::exp(2.0 * field.f[idx]);
        std::array<double, 6> up = ng.g.upper();
        for (double& v : up) v *= e2f;
        const SymMat3 g1(up);
        const double r1 = riemann_norm(riemann_from_schouten(sch1, g1), g1);
        worst = std::max(worst, r1 / (1.0 + ng.riemann_norm));
      }
    }
  }
  return worst;
}

void check_grid(const MetricSpec& m, const GridSpec& grid) {
  if (grid.resolution < kStencil || grid.resolution % 2 == 0) {
    throw InvalidArgument("grid resolution must be odd and at least 7");
  }
  if (!(grid.half_width > 0.0)) throw InvalidArgument("grid half-width must be positive");
  for (int a = 0; a < 3; ++a) {
    const double lo = grid.center[static_cast<std::size_t>(a)] - grid.half_width;
    const double hi = grid.center[static_cast<std::size_t>(a)] + grid.half_width;
    if (lo < m.domain.min[static_cast<std::size_t>(a)] || hi > m.domain.max[static_cast<std::size_t>(a)]) {
      throw InvalidArgument("grid box leaves the metric domain on axis x" + std::to_string(a + 1));
    }
  }
}

}  // namespace

Vec3 GridSpec::node(int i, int j, int k) const {
  const double h = spacing();
  const int c = (resolution - 1) / 2;
  return {center[0] + (i - c) * h, center[1] + (j - c) * h, center[2] + (k - c) * h};
}

CottonCheck check_cotton_zero(const MetricSpec& m, const Box& box, int samples, double tol) {
  if (samples < 1) throw InvalidArgument("at least one Cotton sample is required");
  std::mt19937_64 rng(0);
  std::vector<Vec3> pts(static_cast<std::size_t>(samples));
  for (auto& p : pts) {
    for (int a = 0; a < 3; ++a) {
      std::uniform_real_distribution<double> u(box.min[static_cast<std::size_t>(a)],
                                               box.max[static_cast<std::size_t>(a)]);
      p[static_cast<std::size_t>(a)] = u(rng);
    }
  }
  std::vector<double> norms(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const auto c = geometry::curvature_jets(m, pts[i]);
    const SymMat3 g(tensor::values(c.g));
    const auto packet = geometry::packet_from_jets(c, m.orientation);
    // |nabla Sch|_g as the scale.
    const Mat3 ginv = tensor::values(c.ginv);
    const auto ns = tensor::values(c.nabla_schouten);
    double scale = 0.0;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        for (int d = 0; d < 3; ++d) {
          for (int a2 = 0; a2 < 3; ++a2) {
            for (int b2 = 0; b2 < 3; ++b2) {
              for (int d2 = 0; d2 < 3; ++d2) {
                scale += ginv(a, a2) * ginv(b, b2) * ginv(d, d2) * ns(a, b, d) * ns(a2, b2, d2);
              }
            }
          }
        }
      }
    }
    norms[i] = geometry::cotton_form_norm(packet.cotton_form, g) / (1.0 + std::sqrt(scale));
  });
  CottonCheck out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!std::isfinite(norms[i])) throw NonFiniteSample(pts[i]);
    if (norms[i] > out.max_norm || i == 0) {
      out.max_norm = norms[i];
      out.worst_point = pts[i];
    }
  }
  out.vanishes = out.max_norm < tol;
  return out;
}

namespace {

// Integration plus the node geometry it visited.
std::pair<GridField, std::vector<NodeGeometry>> integrate_with_geometry(const MetricSpec& m,
                                                                         const GridSpec& grid,
                                                                         const Vec3& x0,
                                                                         const SolverOptions& options) {
  check_grid(m, grid);
  const Box box{{grid.center[0] - grid.half_width, grid.center[1] - grid.half_width,
                 grid.center[2] - grid.half_width},
                {grid.center[0] + grid.half_width, grid.center[1] + grid.half_width,
                 grid.center[2] + grid.half_width}};
  const auto cotton = check_cotton_zero(m, box, options.cotton_samples, options.cotton_tol);
  if (!cotton.vanishes) throw CottonNotZero(cotton.max_norm, options.cotton_tol);

  GridField field;
  field.grid = grid;
  field.x.assign(grid.size(), Vec3{});
  field.diagnostics.cotton_norm = cotton.max_norm;
  const int n = grid.resolution;
  const int c = (n - 1) / 2;
  const LineContext ctx{m, grid, options.blowup_bound};

  field.diagnostics.rk4_error_estimate =
      integrate_line(ctx, {c, c, c}, 0, x0, field.x, nullptr, options.rk4_tol);

  for_each_line(static_cast<std::size_t>(n), [&](std::size_t i) {
    const int ii = static_cast<int>(i);
    integrate_line(ctx, {ii, c, c}, 1, field.x[grid.index(ii, c, c)], field.x, nullptr, 0.0);
  });
  std::vector<NodeGeometry> geo(grid.size());
  // The x3 lines visit every node, so they also fill the geometry cache.
  for_each_line(static_cast<std::size_t>(n) * n, [&](std::size_t line) {
    const int i = static_cast<int>(line / n);
    const int j = static_cast<int>(line % n);
    integrate_line(ctx, {i, j, c}, 2, field.x[grid.index(i, j, c)], field.x, &geo, 0.0);
  });
  field.diagnostics.a_defect = a_defect_with(geo, field);
  field.diagnostics.closedness_defect = closedness_defect(field);
  return {std::move(field), std::move(geo)};
}

}  // namespace

GridField integrate_conformal_system(const MetricSpec& m, const GridSpec& grid, const Vec3& x0,
                                     const SolverOptions& options) {
  return integrate_with_geometry(m, grid, x0, options).first;
}

double a_defect(const MetricSpec& m, const GridField& field) {
  return a_defect_with(grid_geometry(m, field.grid), field);
}

double closedness_defect(const GridField& field, Vec3* where) {
  const auto& grid = field.grid;
  const int n = grid.resolution;
  double xmax = 0.0;
  for (const auto& x : field.x) xmax = std::max(xmax, tensor::max_abs(x));
  double worst = -1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int a = 0; a < 3; ++a) {
          for (int b = a + 1; b < 3; ++b) {
            auto comp = [&](int axis) {
              return [&field, axis](std::size_t q) { return field.x[q][static_cast<std::size_t>(axis)]; };
            };
            const double d = grid_derivative(grid, comp(b), {i, j, k}, a) -
                             grid_derivative(grid, comp(a), {i, j, k}, b);
            if (std::abs(d) > worst) {
              worst = std::abs(d);
              if (where) *where = grid.node(i, j, k);
            }
          }
        }
      }
    }
  }
  return std::max(worst, 0.0) / (1.0 + xmax);
}

void potential_from_closed_form(GridField& field, const std::array<int, 3>& basepoint, double tol,
                                const std::array<int, 3>& axis_order) {
  const auto& grid = field.grid;
  const int n = grid.resolution;
  for (int b : basepoint) {
    if (b < 0 || b >= n) throw InvalidArgument("basepoint index outside the grid");
  }
  {
    std::array<int, 3> sorted = axis_order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<int, 3>{0, 1, 2}) throw InvalidArgument("axis order must permute 0,1,2");
  }
  Vec3 where{};
  const double defect = closedness_defect(field, &where);
  if (defect > tol) throw NotClosed(defect, where);

  const double h = grid.spacing();
  field.f.assign(grid.size(), 0.0);
  auto at = [&](const std::array<int, 3>& idx) { return grid.index(idx[0], idx[1], idx[2]); };
  // Running value along the path: stage s integrates along axis_order[s]
  // with the earlier axes at their targets and the later ones at the base.
  std::vector<double> partial(grid.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const std::array<int, 3> target = {i, j, k};
        std::array<int, 3> cur = basepoint;
        double f = 0.0;
        for (int s = 0; s < 3; ++s) {
          const int axis = axis_order[static_cast<std::size_t>(s)];
          const auto ax = static_cast<std::size_t>(axis);
          f += line_integral(
              [&](int t) {
                auto idx = cur;
                idx[ax] = t;
                return field.x[at(idx)][ax];
              },
              n, cur[ax], target[ax], h);
          cur[ax] = target[ax];
        }
        field.f[at(target)] = f;
      }
    }
  }
}

SymMat3 conformal_schouten(const SymMat3& sch, const SymMat3& g, const Tensor<double, 3>& gamma,
                           const Vec3& df, const Mat3& second) {
  const Mat3 ginv = tensor::inverse(g.matrix());
  const double n2 = std::pow(norm_g(ginv, df), 2);
  SymMat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      double hess = second(i, j);
      for (int k = 0; k < 3; ++k) hess -= gamma(k, i, j) * df[k];
      out.set(i, j, sch(i, j) - hess + df[i] * df[j] - 0.5 * n2 * g(i, j));
    }
  }
  return out;
}

double riemann_norm(const Tensor<double, 4>& r, const SymMat3& g) {
  const Mat3 gi = tensor::inverse(g.matrix());
  Tensor<double, 4> up = r;
  // Raise one slot at a time.
  for (int slot = 0; slot < 4; ++slot) {
    Tensor<double, 4> next;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        for (int c = 0; c < 3; ++c) {
          for (int d = 0; d < 3; ++d) {
            std::array<int, 4> idx = {a, b, c, d};
            double s = 0.0;
            for (int m = 0; m < 3; ++m) {
              auto src = idx;
              src[static_cast<std::size_t>(slot)] = m;
              s += gi(idx[static_cast<std::size_t>(slot)], m) * up(src[0], src[1], src[2], src[3]);
            }
            next(a, b, c, d) = s;
          }
        }
      }
    }
    up = next;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r[i] * up[i];
  return std::sqrt(std::max(s, 0.0));
}

Tensor<double, 4> riemann_from_schouten(const SymMat3& sch, const SymMat3& g) {
  Tensor<double, 4> r;
  const Mat3 gm = g.matrix();
  auto e = [](int i) {
    Vec3 v{};
    v[static_cast<std::size_t>(i)] = 1.0;
    return v;
  };
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int l = 0; l < 3; ++l) {
        const Vec3 v = geometry::curvature_from_schouten(sch, g, e(i), e(j), e(l));
        for (int k = 0; k < 3; ++k) r(i, j, k, l) = tensor::dot(tensor::matvec(gm, v), e(k));
      }
    }
  }
  return r;
}

double flatness_residual(const MetricSpec& m, const jets::Expr& f, const std::vector<Vec3>& samples) {
  const MetricSpec m1 = geometry::conformal_rescale(m, f);
  std::vector<double> res(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const auto a = geometry::curvature_packet(m, samples[i]);
    const auto b = geometry::curvature_packet(m1, samples[i]);
    res[i] = riemann_norm(b.riemann, b.g) / (1.0 + riemann_norm(a.riemann, a.g));
  });
  double worst = 0.0;
  for (double r : res) worst = std::max(worst, r);
  return worst;
}

double flatness_residual(const MetricSpec& m, const GridField& field) {
  if (field.f.size() != field.grid.size()) throw InvalidArgument("grid field has no potential");
  return flatness_with(grid_geometry(m, field.grid), field);
}

GridField solve(const MetricSpec& m, const GridSpec& grid, const Vec3& x0, const SolverOptions& options) {
  auto [field, geo] = integrate_with_geometry(m, grid, x0, options);
  const int c = (grid.resolution - 1) / 2;
  potential_from_closed_form(field, {c, c, c}, options.closedness_tol);
  GridField permuted = field;
  potential_from_closed_form(permuted, {c, c, c}, options.closedness_tol, {2, 1, 0});
  double d = 0.0;
  for (std::size_t i = 0; i < field.f.size(); ++i) d = std::max(d, std::abs(field.f[i] - permuted.f[i]));
  field.diagnostics.path_consistency = d;
  field.diagnostics.flatness_residual = flatness_with(geo, field);
  return field;
}

}  // namespace cottonlab::lcf
