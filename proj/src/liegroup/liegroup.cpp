#include "cottonlab/liegroup/liegroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cottonlab/error.hpp"
#include "cottonlab/frames/frames.hpp"
#include "cottonlab/tensor/forms.hpp"
#include "cottonlab/tensor/frame.hpp"

namespace cottonlab::liegroup {

namespace {

constexpr double kPi = std::numbers::pi;

int levi(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

Table su2_brackets() {
  Table c;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) c(k, i, j) = 2.0 * levi(i, j, k);
    }
  }
  return c;
}

}  // namespace

LieAlgebraData so3() { return {"so3", su2_brackets(), SymMat3::identity(), kPi * kPi}; }

LieAlgebraData su2() { return {"su2", su2_brackets(), SymMat3::identity(), 2 * kPi * kPi}; }

LieAlgebraData heisenberg() {
  Table c;
  c(2, 0, 1) = 1.0;
  c(2, 1, 0) = -1.0;
  return {"heisenberg", c, SymMat3::identity(), std::nullopt};
}

LieAlgebraData abelian() { return {"abelian", Table{}, SymMat3::identity(), std::nullopt}; }

LieAlgebraData berger(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw InvalidArgument("berger parameter t must be positive");
  }
  return {"berger:t=" + std::to_string(t), su2_brackets(), SymMat3::diagonal(t, 1, 1),
          kPi * kPi * std::sqrt(t)};
}

LieAlgebraData catalog(std::string_view key) {
  if (key == "so3") return so3();
  if (key == "su2") return su2();
  if (key == "heisenberg") return heisenberg();
  if (key == "abelian") return abelian();
  constexpr std::string_view prefix = "berger:t=";
  if (key.substr(0, prefix.size()) == prefix) {
    const std::string rest(key.substr(prefix.size()));
    std::size_t used = 0;
    double t = 0.0;
    try {
      t = std::stod(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != rest.size()) {
      throw InvalidArgument("malformed Berger parameter in '" + std::string(key) + "'");
    }
    auto l = berger(t);
    l.name = std::string(key);
    return l;
  }
  throw InvalidArgument("unknown group '" + std::string(key) +
                        "' (expected so3, su2, heisenberg, abelian or berger:t=<real>)");
}

double jacobi_defect(const LieAlgebraData& l) {
  const auto& c = l.c;
  double anti = 0.0;
  double jac = 0.0;
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) anti = std::max(anti, std::abs(c(k, i, j) + c(k, j, i)));
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int q = 0; q < 3; ++q) {
          double s = 0.0;
          for (int m = 0; m < 3; ++m) {
            s += c(m, i, j) * c(q, m, k) + c(m, j, k) * c(q, m, i) + c(m, k, i) * c(q, m, j);
          }
          jac = std::max(jac, std::abs(s));
        }
      }
    }
  }
  return anti + jac;
}

void validate(const LieAlgebraData& l) {
  tensor::require_positive_definite(l.ip, "for the algebra inner product");
  const double d = jacobi_defect(l);
  if (!(d <= 1e-12)) throw JacobiViolation(d);
}

LieAlgebraData orthonormalize(const LieAlgebraData& l) {
  validate(l);
  const Mat3 t = tensor::gram_schmidt(l.ip, tensor::identity<double>()).vectors;
  const Mat3 tinv = tensor::inverse(t);
  LieAlgebraData out = l;
  out.ip = SymMat3::identity();
  out.c = Table{};
  // [u_a, u_b] = T_ia T_jb c^k_ij e_k and e_k = (T^{-1})_ck u_c.
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          const double w = t(i, a) * t(j, b);
          if (w == 0.0) continue;
          for (int k = 0; k < 3; ++k) {
            for (int cc = 0; cc < 3; ++cc) out.c(cc, a, b) += w * l.c(k, i, j) * tinv(cc, k);
          }
        }
      }
    }
  }
  return out;
}

Table levi_civita_leftinv(const LieAlgebraData& l) {
  validate(l);
  const Mat3 g = l.ip.matrix();
  const Mat3 ginv = tensor::inverse(g);
  // b(i,j,k) = <[e_i,e_j], e_k>
  Table b;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int m = 0; m < 3; ++m) b(i, j, k) += l.c(m, i, j) * g(m, k);
      }
    }
  }
  Table gamma;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const double lower = 0.5 * (b(i, j, k) + b(k, i, j) + b(k, j, i));
        for (int q = 0; q < 3; ++q) gamma(i, j, q) += ginv(q, k) * lower;
      }
    }
  }
  return gamma;
}

LeftInvariantCurvature curvature_leftinv(const LieAlgebraData& l) {
  LeftInvariantCurvature out;
  out.gamma = levi_civita_leftinv(l);
  const auto& gm = out.gamma;
  const Mat3 g = l.ip.matrix();
  const Mat3 ginv = tensor::inverse(g);

  // up(m, i, j, k): coefficient of e_m in R(e_i, e_j) e_k.
  tensor::Tensor<double, 4> up;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int m = 0; m < 3; ++m) {
          double s = 0.0;
          for (int q = 0; q < 3; ++q) {
            s += gm(j, k, q) * gm(i, q, m) - gm(i, k, q) * gm(j, q, m);
            s -= l.c(q, i, j) * gm(q, k, m);
          }
          up(m, i, j, k) = s;
        }
      }
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int q = 0; q < 3; ++q) {
          double s = 0.0;
          for (int m = 0; m < 3; ++m) s += up(m, i, j, q) * g(m, k);
          out.riemann(i, j, k, q) = s;
        }
      }
    }
  }
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) s += ginv(i, k) * out.riemann(i, u, k, v);
      }
      out.ricci(u, v) = s;
    }
  }
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) out.scal += ginv(u, v) * out.ricci(u, v);
  }
  for (std::size_t i = 0; i < 9; ++i) out.schouten[i] = out.ricci[i] - out.scal / 4.0 * g[i];

  // Left-invariant tensors have no directional derivative part.
  Table nabla;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        double s = 0.0;
        for (int q = 0; q < 3; ++q) {
          s -= gm(i, j, q) * out.schouten(q, k) + gm(i, k, q) * out.schouten(j, q);
        }
        nabla(i, j, k) = s;
      }
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) out.cotton_form(i, j, k) = nabla(i, j, k) - nabla(j, i, k);
    }
  }
  const double vol = std::sqrt(tensor::det(g));
  for (int a = 0; a < 3; ++a) {
    for (int k = 0; k < 3; ++k) {
      double s = 0.0;
      for (int b = 0; b < 3; ++b) {
        for (int c = 0; c < 3; ++c) {
          const int e = levi(b, c, a);
          if (e == 0) continue;
          for (int b2 = 0; b2 < 3; ++b2) {
            for (int c2 = 0; c2 < 3; ++c2) {
              s += e * ginv(b, b2) * ginv(c, c2) * out.cotton_form(b2, c2, k);
            }
          }
        }
      }
      out.cotton(a, k) = 0.5 * vol * s;
    }
  }
  return out;
}

Mat3 cotton_leftinv(const LieAlgebraData& l) { return curvature_leftinv(l).cotton; }

CsDensity cs_density_leftinv(const LieAlgebraData& l) {
  const auto u = orthonormalize(l);
  const Table gm = levi_civita_leftinv(u);
  // The frame coordinates serve as the form basis: omega[a](i,j) = omega_ij(u_a).
  tensor::MatrixForm<double> omega(1);
  for (int a = 0; a < 3; ++a) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) omega[static_cast<std::size_t>(a)](i, j) = gm(a, j, i);
    }
  }
  // Cartan: d omega(X, Y) = -omega([X, Y]) for constant omega.
  tensor::MatrixForm<double> domega(2);
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      Mat3 v;
      for (int k = 0; k < 3; ++k) {
        Mat3 t = omega[static_cast<std::size_t>(k)];
        t *= -u.c(k, a, b);
        v += t;
      }
      domega.at({a, b}) = v;
    }
  }
  CsDensity out;
  out.wedge_term = tensor::trace_form(tensor::wedge(omega, domega))[0];
  out.cube_term = tensor::trace_form(tensor::wedge(tensor::wedge(omega, omega), omega))[0];
  out.density = frames::chern_simons(omega, domega)[0];
  return out;
}

double cs_invariant_group(const LieAlgebraData& l, double volume) {
  if (!(volume > 0.0)) throw InvalidArgument("group volume must be positive");
  return -cs_density_leftinv(l).density * volume / (16.0 * kPi * kPi);
}

double cs_invariant_group(const LieAlgebraData& l) {
  if (!l.total_volume) {
    throw InvalidArgument("algebra '" + l.name + "' has no total volume; supply one");
  }
  return cs_invariant_group(l, *l.total_volume);
}

Representation adjoint(const LieAlgebraData& l) {
  const auto u = orthonormalize(l);
  Representation r;
  r.dim = 3;
  r.images.resize(3);
  for (int a = 0; a < 3; ++a) {
    auto& m = r.images[static_cast<std::size_t>(a)];
    m.assign(9, 0.0);
    // ad(u_a) u_b = [u_a, u_b], column b.
    for (int b = 0; b < 3; ++b) {
      for (int k = 0; k < 3; ++k) m[static_cast<std::size_t>(3 * k + b)] = u.c(k, a, b);
    }
  }
  return r;
}

Representation su2_defining() {
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  return {2, {{i, 0.0, 0.0, -i}, {0.0, 1.0, -1.0, 0.0}, {0.0, i, i, 0.0}}};
}

namespace {

using CMatrix = std::vector<std::complex<double>>;

CMatrix multiply(const CMatrix& a, const CMatrix& b, int n) {
  CMatrix c(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        c[static_cast<std::size_t>(i * n + j)] +=
            a[static_cast<std::size_t>(i * n + k)] * b[static_cast<std::size_t>(k * n + j)];
      }
    }
  }
  return c;
}

}  // namespace

double mc_cube_trace(const Representation& r) {
  const int n = r.dim;
  // Cyclicity folds the six orderings into 3 tr(A [B, C]).
  const CMatrix bc = multiply(r.images[1], r.images[2], n);
  const CMatrix cb = multiply(r.images[2], r.images[1], n);
  std::complex<double> tr = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const auto ik = static_cast<std::size_t>(i * n + k);
      const auto ki = static_cast<std::size_t>(k * n + i);
      tr += r.images[0][ik] * (bc[ki] - cb[ki]);
    }
  }
  return 3.0 * tr.real();
}

double mc_cube_trace(const LieAlgebraData& l) { return mc_cube_trace(adjoint(l)); }

VariationalReport berger_variational_check(double t, double step) {
  VariationalReport r;
  r.t = t;
  r.step = step;
  r.finite_difference =
      (cs_invariant_group(berger(t + step)) - cs_invariant_group(berger(t - step))) / (2.0 * step);
  const auto l = berger(t);
  const Mat3 cott = cotton_leftinv(l);
  const Mat3 ginv = tensor::inverse(l.ip.matrix());
  // <gdot, Cott> = g^{ac} g^{bd} gdot_ab Cott_cd with gdot = e^1 (x) e^1.
  double pairing = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (int d = 0; d < 3; ++d) pairing += ginv(0, c) * ginv(0, d) * cott(c, d);
  }
  r.cotton_pairing = pairing * (*l.total_volume) / (8.0 * kPi * kPi);
  auto rel = [&](double target) {
    // At t = 1 both sides vanish; the floor turns the ratio into an
    // absolute error against an O(1) derivative scale.
    const double scale = std::max({std::abs(target), std::abs(r.finite_difference), 1e-6});
    return std::abs(r.finite_difference - target) / scale;
  };
  r.relative_error = rel(-r.cotton_pairing);
  r.relative_error_opposite_sign = rel(r.cotton_pairing);
  return r;
}

}  // namespace cottonlab::liegroup
