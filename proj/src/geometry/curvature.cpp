#include "cottonlab/geometry/curvature.hpp"

#include <cmath>

#include "cottonlab/error.hpp"
#include "cottonlab/tensor/forms.hpp"

namespace cottonlab::geometry {
namespace {

// Levi-Civita symbol eps_{abc}.
int levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

template <std::size_t R>
Tensor<double, R> value_tensor(const Tensor<Jet3, R>& t) {
  return tensor::values(t);
}

SymMat3 sym_values(const Matrix<Jet3>& m) {
  Mat3 v = tensor::values(m);
  return SymMat3(v);
}

}  // namespace

CurvatureJets connection_only_jets(const Matrix<Jet3>& g, const Vec3& p) {
  CurvatureJets c;
  c.point = p;
  c.g = g;
  c.ginv = tensor::inverse(g);

  Tensor<Jet3, 3> dg;  // dg(l, i, j) = d_l g_ij
  for (int l = 0; l < 3; ++l) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i; j < 3; ++j) {
        dg(l, i, j) = g(i, j).partial(l);
        dg(l, j, i) = dg(l, i, j);
      }
    }
  }
  // Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      Tensor<Jet3, 1> lower;
      for (int l = 0; l < 3; ++l) lower(l) = 0.5 * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
      for (int k = 0; k < 3; ++k) {
        Jet3 s = c.ginv(k, 0) * lower(0);
        s += c.ginv(k, 1) * lower(1);
        s += c.ginv(k, 2) * lower(2);
        c.gamma(k, i, j) = s;
        c.gamma(k, j, i) = s;
      }
    }
  }

  return c;
}

CurvatureJets curvature_jets(const Matrix<Jet3>& g, const Vec3& p) {
  CurvatureJets c = connection_only_jets(g, p);

  // (R(d_i, d_j) d_k)^l = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik
  Tensor<Jet3, 4> up;  // up(l, k, i, j)
  for (int l = 0; l < 3; ++l) {
    for (int k = 0; k < 3; ++k) {
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
          Jet3 s = c.gamma(l, j, k).partial(i) - c.gamma(l, i, k).partial(j);
          for (int m = 0; m < 3; ++m) {
            s += c.gamma(l, i, m) * c.gamma(m, j, k) - c.gamma(l, j, m) * c.gamma(m, i, k);
          }
          up(l, k, i, j) = s;
          up(l, k, j, i) = -s;
        }
      }
    }
  }
  // R_ijkl = g(R(d_i,d_j) d_l, d_k) = g_km up(m, l, i, j)
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          Jet3 s = g(k, 0) * up(0, l, i, j);
          s += g(k, 1) * up(1, l, i, j);
          s += g(k, 2) * up(2, l, i, j);
          c.riemann(i, j, k, l) = s;
        }
      }
    }
  }

  for (int u = 0; u < 3; ++u) {
    for (int v = u; v < 3; ++v) {
      Jet3 s;
      for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) s += c.ginv(i, k) * c.riemann(i, u, k, v);
      }
      c.ricci(u, v) = s;
      c.ricci(v, u) = s;
    }
  }
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) c.scal += c.ginv(u, v) * c.ricci(u, v);
  }
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) c.schouten(u, v) = c.ricci(u, v) - (c.scal * 0.25) * g(u, v);
  }

  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = j; k < 3; ++k) {
        Jet3 s = c.schouten(j, k).partial(i);
        for (int m = 0; m < 3; ++m) {
          s -= c.gamma(m, i, j) * c.schouten(m, k) + c.gamma(m, i, k) * c.schouten(j, m);
        }
        c.nabla_schouten(i, j, k) = s;
        c.nabla_schouten(i, k, j) = s;
      }
    }
  }
  return c;
}

CurvatureJets curvature_jets(const MetricSpec& m, const Vec3& p) {
  return curvature_jets(metric_jets(m, p), p);
}

CurvaturePacket packet_from_jets(const CurvatureJets& j, int orientation) {
  CurvaturePacket out;
  out.point = j.point;
  out.orientation = orientation;
  out.g = sym_values(j.g);
  out.gamma = value_tensor(j.gamma);
  out.riemann = value_tensor(j.riemann);
  out.ricci = sym_values(j.ricci);
  out.scal = j.scal.value();
  out.schouten = sym_values(j.schouten);
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      for (int l = 0; l < 3; ++l) {
        out.cotton_form(i, k, l) =
            j.nabla_schouten(i, k, l).value() - j.nabla_schouten(k, i, l).value();
      }
    }
  }
  out.cotton_tensor = cotton_tensor(out.cotton_form, out.g, orientation);
  return out;
}

CurvaturePacket curvature_packet(const MetricSpec& m, const Vec3& p) {
  return packet_from_jets(curvature_jets(m, p), m.orientation);
}

Tensor<double, 3> christoffels(const MetricSpec& m, const Vec3& p) {
  return curvature_packet(m, p).gamma;
}

Tensor<double, 4> riemann(const MetricSpec& m, const Vec3& p) {
  return curvature_packet(m, p).riemann;
}

std::pair<SymMat3, double> ricci_scalar(const Tensor<double, 4>& r, const SymMat3& g) {
  const Mat3 ginv = tensor::inverse(g.matrix());
  Mat3 ric;
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) s += ginv(i, k) * r(i, u, k, v);
      }
      ric(u, v) = s;
    }
  }
  double scal = 0.0;
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) scal += ginv(u, v) * ric(u, v);
  }
  return {SymMat3(ric), scal};
}

SymMat3 schouten(const SymMat3& ricci, double scal, const SymMat3& g) {
  std::array<double, 6> v{};
  for (std::size_t i = 0; i < 6; ++i) v[i] = ricci.upper()[i] - 0.25 * scal * g.upper()[i];
  return SymMat3(v);
}

Tensor<double, 3> cotton_form(const MetricSpec& m, const Vec3& p) {
  return curvature_packet(m, p).cotton_form;
}

Mat3 cotton_tensor(const Tensor<double, 3>& c, const SymMat3& g, int orientation) {
  const Mat3 ginv = tensor::inverse(g.matrix());
  const double volume = orientation * std::sqrt(g.determinant());
  Mat3 out;
  for (int k = 0; k < 3; ++k) {
    // Raise both form indices of C(., ., k).
    Mat3 up;
    for (int b = 0; b < 3; ++b) {
      for (int cc = 0; cc < 3; ++cc) {
        double s = 0.0;
        for (int b1 = 0; b1 < 3; ++b1) {
          for (int c1 = 0; c1 < 3; ++c1) s += ginv(b, b1) * ginv(cc, c1) * c(b1, c1, k);
        }
        up(b, cc) = s;
      }
    }
    for (int a = 0; a < 3; ++a) {
      double s = 0.0;
      for (int b = 0; b < 3; ++b) {
        for (int cc = 0; cc < 3; ++cc) s += levi_civita(b, cc, a) * up(b, cc);
      }
      out(a, k) = 0.5 * volume * s;
    }
  }
  return out;
}

double cotton_form_norm(const Tensor<double, 3>& c, const SymMat3& g) {
  const Mat3 ginv = tensor::inverse(g.matrix());
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        double raised = 0.0;
        for (int a = 0; a < 3; ++a) {
          for (int b = 0; b < 3; ++b) {
            for (int d = 0; d < 3; ++d) raised += ginv(i, a) * ginv(j, b) * ginv(k, d) * c(a, b, d);
          }
        }
        s += raised * c(i, j, k);
      }
    }
  }
  return std::sqrt(std::max(0.0, 0.5 * s));
}

Vec3 apply_riemann(const Tensor<double, 4>& r, const SymMat3& g, const Vec3& u, const Vec3& v,
                   const Vec3& x) {
  // Lowered result: g(R(U,V)X, d_k) = R_{ijkl} U^i V^j X^l.
  Vec3 lower{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) lower[k] += r(i, j, k, l) * u[i] * v[j] * x[l];
      }
    }
  }
  return tensor::matvec(tensor::inverse(g.matrix()), lower);
}

Vec3 curvature_from_schouten(const SymMat3& sch, const SymMat3& g, const Vec3& u, const Vec3& v,
                             const Vec3& x) {
  const Mat3 gm = g.matrix();
  const Mat3 s = sch.matrix();
  const Mat3 endo = tensor::inverse(gm) * s;
  const Vec3 sch_u = tensor::matvec(endo, u);
  const Vec3 sch_v = tensor::matvec(endo, v);
  const double xv = tensor::inner(gm, x, v);
  const double sxv = tensor::inner(s, x, v);
  const double sxu = tensor::inner(s, x, u);
  const double ux = tensor::inner(gm, u, x);
  Vec3 out{};
  for (int i = 0; i < 3; ++i) out[i] = xv * sch_u[i] + sxv * u[i] - sxu * v[i] - ux * sch_v[i];
  return out;
}

Vec3 divergence_sym2(const MetricSpec& m, const SymField& field, const Vec3& p) {
  const CurvatureJets c = curvature_jets(m, p);
  const Matrix<Jet3> h = field(p);
  Vec3 out{};
  for (int j = 0; j < 3; ++j) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) {
        // (nabla_k h)_ij
        double nk = h(i, j).derivative(k);
        for (int a = 0; a < 3; ++a) {
          nk -= c.gamma(a, k, i).value() * h(a, j).value() + c.gamma(a, k, j).value() * h(i, a).value();
        }
        s += c.ginv(i, k).value() * nk;
      }
    }
    out[j] = -s;
  }
  return out;
}

template <std::size_t R>
Tensor<Jet3, R> fd_field_jets(const std::function<Tensor<double, R>(const Vec3&)>& f,
                              const Vec3& p, double h) {
  const Tensor<double, R> centre = f(p);
  Tensor<Jet3, R> out;
  for (std::size_t i = 0; i < Tensor<double, R>::kSize; ++i) out[i] = Jet3(centre[i]);
  for (int a = 0; a < 3; ++a) {
    auto diff = [&](double step) {
      Vec3 plus = p;
      Vec3 minus = p;
      plus[a] += step;
      minus[a] -= step;
      Tensor<double, R> d = f(plus);
      d -= f(minus);
      d *= 1.0 / (2.0 * step);
      return d;
    };
    const Tensor<double, R> coarse = diff(h);
    const Tensor<double, R> fine = diff(0.5 * h);
    for (std::size_t i = 0; i < Tensor<double, R>::kSize; ++i) {
      out[i][static_cast<std::size_t>(1 + a)] = (4.0 * fine[i] - coarse[i]) / 3.0;
    }
  }
  return out;
}

template Tensor<Jet3, 1> fd_field_jets<1>(const std::function<Tensor<double, 1>(const Vec3&)>&,
                                          const Vec3&, double);
template Tensor<Jet3, 2> fd_field_jets<2>(const std::function<Tensor<double, 2>(const Vec3&)>&,
                                          const Vec3&, double);

SymField cotton_tensor_field(const MetricSpec& m, double h) {
  return [m, h](const Vec3& p) {
    const std::function<Mat3(const Vec3&)> cott = [&m](const Vec3& q) {
      return curvature_packet(m, q).cotton_tensor;
    };
    return fd_field_jets<2>(cott, p, h);
  };
}

SymField einstein_field(const MetricSpec& m) {
  return [m](const Vec3& p) {
    const CurvatureJets c = curvature_jets(m, p);
    Matrix<Jet3> e;
    for (int u = 0; u < 3; ++u) {
      for (int v = 0; v < 3; ++v) e(u, v) = c.ricci(u, v) - (c.scal * 0.5) * c.g(u, v);
    }
    return e;
  };
}

}  // namespace cottonlab::geometry
