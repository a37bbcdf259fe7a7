#include "cottonlab/frames/frames.hpp"

#include <algorithm>
#include <cmath>

#include "cottonlab/error.hpp"

namespace cottonlab::frames {
namespace {

double so3_defect(const Mat3& a) {
  const Mat3 q = tensor::transpose(a) * a;
  double d = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(q(i, j) - (i == j ? 1.0 : 0.0)));
  }
  return std::max(d, std::abs(tensor::det(a) - 1.0));
}

MatrixForm<double> form_values(const MatrixForm<Jet3>& f) {
  MatrixForm<double> out(f.degree());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = tensor::values(f[i]);
  return out;
}

// d_mu of every entry of a matrix of jets.
Matrix<Jet3> partial(const Matrix<Jet3>& m, int mu) {
  Matrix<Jet3> out;
  for (std::size_t i = 0; i < 9; ++i) out[i] = m[i].partial(mu);
  return out;
}

}  // namespace

FrameField FrameField::from_expressions(const std::array<Expr, 9>& components) {
  return FrameField(
      [components](const Vec3& p, const Matrix<Jet3>&) {
        Matrix<Jet3> s;
        for (int a = 0; a < 3; ++a) {
          for (int mu = 0; mu < 3; ++mu) s(mu, a) = jets::eval_jet(components[3 * a + mu], p);
        }
        return s;
      },
      "expressions");
}

FrameField FrameField::gram_schmidt_coordinate() {
  return FrameField(
      [](const Vec3&, const Matrix<Jet3>& g) {
        return tensor::gram_schmidt_columns(g, tensor::identity<Jet3>());
      },
      "gram-schmidt");
}

FrameField FrameField::gauge(const MatrixField& a) const {
  Builder inner = build_;
  return FrameField(
      [inner, a](const Vec3& p, const Matrix<Jet3>& g) { return inner(p, g) * a(p); },
      description_ + " (gauged)");
}

MatrixForm<Jet3> connection_jets(const CurvatureJets& c, const Matrix<Jet3>& s) {
  MatrixForm<Jet3> omega(1);
  for (int mu = 0; mu < 3; ++mu) {
    // nabla_mu S_j as chart components: d_mu S_j^l + Gamma^l_{mu nu} S_j^nu
    const Matrix<Jet3> ds = partial(s, mu);
    Matrix<Jet3> nabla;
    for (int l = 0; l < 3; ++l) {
      for (int j = 0; j < 3; ++j) {
        Jet3 v = ds(l, j);
        for (int nu = 0; nu < 3; ++nu) v += c.gamma(l, mu, nu) * s(nu, j);
        nabla(l, j) = v;
      }
    }
    // omega_ij = S^T g nabla
    omega[static_cast<std::size_t>(mu)] = tensor::transpose(s) * c.g * nabla;
  }
  return omega;
}

ConnectionForm connection_one_form(const MetricSpec& m, const FrameField& frame, const Vec3& p,
                                   double tol) {
  const CurvatureJets c = geometry::curvature_jets(m, p);
  const Matrix<Jet3> s = frame.jets(p, c.g);
  tensor::Frame values;
  values.vectors = tensor::values(s);
  ConnectionForm out;
  out.orthonormality_defect =
      tensor::orthonormality_defect(SymMat3(tensor::values(c.g)), values);
  if (out.orthonormality_defect > tol) throw FrameNotOrthonormal(out.orthonormality_defect, p);
  const MatrixForm<double> raw = form_values(connection_jets(c, s));
  for (std::size_t mu = 0; mu < 3; ++mu) {
    Mat3 w = raw[mu];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        out.antisymmetry_defect = std::max(out.antisymmetry_defect, std::abs(w(i, j) + w(j, i)));
        out.omega[mu](i, j) = 0.5 * (w(i, j) - w(j, i));
      }
    }
  }
  return out;
}

template <class V>
tensor::Form<V, 3> exterior_derivative(const tensor::Form<V, 3>& a) {
  using Basis = tensor::FormBasis<3>;
  tensor::Form<V, 3> out(a.degree() + 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const unsigned mi = a.mask(i);
    for (int mu = 0; mu < 3; ++mu) {
      const unsigned bit = 1u << mu;
      if (mi & bit) continue;
      V d = a[i];
      if constexpr (std::is_same_v<V, Jet3>) {
        d = a[i].partial(mu);
      } else {
        for (auto& x : d) x = x.partial(mu);
      }
      if (Basis::shuffle_sign(bit, mi) < 0) d *= -1.0;
      out[Basis::position(mi | bit)] += d;
    }
  }
  return out;
}

template tensor::Form<Jet3, 3> exterior_derivative(const tensor::Form<Jet3, 3>&);
template tensor::Form<Matrix<Jet3>, 3> exterior_derivative(const tensor::Form<Matrix<Jet3>, 3>&);

MatrixForm<double> curvature_two_form(const MetricSpec& m, const FrameField& frame, const Vec3& p) {
  const CurvatureJets c = geometry::curvature_jets(m, p);
  const MatrixForm<Jet3> omega = connection_jets(c, frame.jets(p, c.g));
  return form_values(curvature_from(omega, exterior_derivative(omega)));
}

MatrixForm<double> frame_riemann(const geometry::CurvaturePacket& packet, const Mat3& s) {
  MatrixForm<double> out(2);
  for (std::size_t pos = 0; pos < 3; ++pos) {
    const unsigned mask = out.mask(pos);
    const int a = std::countr_zero(mask);
    const int b = 31 - std::countl_zero(mask);
    Mat3 v;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double sum = 0.0;
        for (int k = 0; k < 3; ++k) {
          for (int l = 0; l < 3; ++l) sum += s(k, i) * s(l, j) * packet.riemann(a, b, k, l);
        }
        v(i, j) = sum;
      }
    }
    out[pos] = v;
  }
  return out;
}

double cs_coefficient(const MatrixForm<Jet3>& omega) {
  // Only values and first derivatives of omega enter at the point.
  MatrixForm<double> w(1);
  MatrixForm<double> dw(2);
  for (std::size_t mu = 0; mu < 3; ++mu) w[mu] = tensor::values(omega[mu]);
  for (int mu = 0; mu < 3; ++mu) {
    for (int nu = mu + 1; nu < 3; ++nu) {
      Mat3 d;
      for (std::size_t e = 0; e < 9; ++e) {
        d[e] = omega[static_cast<std::size_t>(nu)][e].derivative(mu) -
               omega[static_cast<std::size_t>(mu)][e].derivative(nu);
      }
      dw.at({mu, nu}) = d;
    }
  }
  return chern_simons(w, dw)[0];
}

double cs_three_form(const MetricSpec& m, const FrameField& frame, const Vec3& p) {
  const CurvatureJets c = geometry::connection_only_jets(geometry::metric_jets(m, p), p);
  const Matrix<Jet3> s = frame.jets(p, c.g);
  tensor::Frame values;
  values.vectors = tensor::values(s);
  const double defect = tensor::orthonormality_defect(SymMat3(tensor::values(c.g)), values);
  if (defect > 1e-10) throw FrameNotOrthonormal(defect, p);
  return cs_coefficient(connection_jets(c, s));
}

double torsion_defect(const MetricSpec& m, const FrameField& frame, const Vec3& p) {
  const CurvatureJets c = geometry::curvature_jets(m, p);
  const Matrix<Jet3> s = frame.jets(p, c.g);
  const MatrixForm<Jet3> omega = connection_jets(c, s);
  const Mat3 sv = tensor::values(s);
  // With nabla S_j = sum_i omega_ij S_i, the torsion in frame components is
  //   T(S_a, S_b)^i = omega_ib(S_a) - omega_ia(S_b) - ([S_a, S_b] in the frame)^i.
  double d = 0.0;
  const Mat3 sinv = tensor::inverse(sv);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      Mat3 wa, wb;  // omega evaluated on S_a, S_b
      for (int mu = 0; mu < 3; ++mu) {
        wa += tensor::values(omega[static_cast<std::size_t>(mu)]) * sv(mu, a);
        wb += tensor::values(omega[static_cast<std::size_t>(mu)]) * sv(mu, b);
      }
      Vec3 bracket{};  // [S_a, S_b]^l = S_a^mu d_mu S_b^l - S_b^mu d_mu S_a^l
      for (int l = 0; l < 3; ++l) {
        for (int mu = 0; mu < 3; ++mu) {
          bracket[l] += sv(mu, a) * s(l, b).derivative(mu) - sv(mu, b) * s(l, a).derivative(mu);
        }
      }
      const Vec3 bf = tensor::matvec(sinv, bracket);
      for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(wa(i, b) - wb(i, a) - bf[i]));
    }
  }
  return d;
}

MatrixForm<Jet3> gauge_transform(const MatrixForm<Jet3>& omega, const Matrix<Jet3>& a,
                                 const Vec3& p) {
  const double defect = so3_defect(tensor::values(a));
  if (defect > 1e-10) throw NotSpecialOrthogonal(defect, p);
  // a^{-1} as a jet: a^T is exact only on the orthogonal locus, so use the
  // adjugate-based inverse to keep the identity exact for any input field.
  const Matrix<Jet3> ainv = tensor::inverse(a);
  MatrixForm<Jet3> out(1);
  for (int mu = 0; mu < 3; ++mu) {
    const auto m = static_cast<std::size_t>(mu);
    out[m] = ainv * omega[m] * a + ainv * partial(a, mu);
  }
  return out;
}

double winding_density(const Matrix<Jet3>& a) {
  const Matrix<Jet3> ainv = tensor::inverse(a);
  MatrixForm<Jet3> mc(1);
  for (int mu = 0; mu < 3; ++mu) mc[static_cast<std::size_t>(mu)] = ainv * partial(a, mu);
  return tensor::trace_form(tensor::wedge(tensor::wedge(mc, mc), mc))[0].value();
}

GaugeResidual gauge_cs_residual(const MatrixForm<Jet3>& omega, const Matrix<Jet3>& a,
                                const Vec3& p) {
  GaugeResidual r;
  const MatrixForm<Jet3> omega2 = gauge_transform(omega, a, p);
  r.cs_before = cs_coefficient(omega);
  r.cs_after = cs_coefficient(omega2);
  const Matrix<Jet3> ainv = tensor::inverse(a);
  MatrixForm<Jet3> left(1), da(1);
  for (int mu = 0; mu < 3; ++mu) {
    const auto m = static_cast<std::size_t>(mu);
    left[m] = ainv * omega[m];
    da[m] = partial(a, mu);
  }
  const ScalarForm<Jet3> t = tensor::trace_form(tensor::wedge(left, da));
  r.exact_term = exterior_derivative(t)[0].value();
  r.winding_term = winding_density(a);
  r.residual = r.cs_after - r.cs_before - r.exact_term + r.winding_term / 3.0;
  return r;
}

Matrix<Jet3> rotation_jets(const std::array<Jet3, 3>& v) {
  // exp(K) = I + sin(t)/t K + (1 - cos t)/t^2 K^2 with t = |v|; the
  // coefficient functions are evaluated through their even Taylor series
  // in t^2 so that v = 0 is regular.
  Matrix<Jet3> k;
  k(0, 1) = -v[2];
  k(0, 2) = v[1];
  k(1, 0) = v[2];
  k(1, 2) = -v[0];
  k(2, 0) = -v[1];
  k(2, 1) = v[0];
  const Jet3 t2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  const double t2v = t2.value();
  Jet3 c1, c2;
  if (t2v > 1e-4) {
    const Jet3 t = jets::sqrt(t2);
    c1 = jets::sin(t) / t;
    c2 = (1.0 - jets::cos(t)) / t2;
  } else {
    // Series through t^8 is exact to rounding for t^2 <= 1e-4.
    c1 = 1.0 - t2 / 6.0 + t2 * t2 / 120.0 - t2 * t2 * t2 / 5040.0 + t2 * t2 * t2 * t2 / 362880.0;
    c2 = 0.5 - t2 / 24.0 + t2 * t2 / 720.0 - t2 * t2 * t2 / 40320.0 +
         t2 * t2 * t2 * t2 / 3628800.0;
  }
  Matrix<Jet3> r = tensor::identity<Jet3>();
  const Matrix<Jet3> k2 = k * k;
  for (std::size_t i = 0; i < 9; ++i) r[i] += c1 * k[i] + c2 * k2[i];
  return r;
}

}  // namespace cottonlab::frames
