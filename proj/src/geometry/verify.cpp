#include "cottonlab/geometry/verify.hpp"

#include <algorithm>
#include <cmath>

namespace cottonlab::geometry {
namespace {

double normalized(double residual, double scale) { return residual / (1.0 + scale); }

double max_abs_vec(const Vec3& v) { return tensor::max_abs(v); }

}  // namespace

double riemann_symmetry_defect(const Tensor<double, 4>& r) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          const double x = r(i, j, k, l);
          d = std::max({d, std::abs(x + r(j, i, k, l)), std::abs(x + r(i, j, l, k)),
                        std::abs(x - r(k, l, i, j))});
        }
      }
    }
  }
  return normalized(d, tensor::max_abs(r));
}

double bianchi_first_defect(const Tensor<double, 4>& r) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          d = std::max(d, std::abs(r(i, j, k, l) + r(j, k, i, l) + r(k, i, j, l)));
        }
      }
    }
  }
  return normalized(d, tensor::max_abs(r));
}

double bianchi_second_defect(const CurvatureJets& c) {
  Tensor<double, 3> gamma = tensor::values(c.gamma);
  Tensor<double, 4> r = tensor::values(c.riemann);
  auto nabla = [&](int m, int i, int j, int k, int l) {
    double s = c.riemann(i, j, k, l).derivative(m);
    for (int a = 0; a < 3; ++a) {
      s -= gamma(a, m, i) * r(a, j, k, l) + gamma(a, m, j) * r(i, a, k, l) +
           gamma(a, m, k) * r(i, j, a, l) + gamma(a, m, l) * r(i, j, k, a);
    }
    return s;
  };
  double d = 0.0;
  double scale = tensor::max_abs(r);
  for (int m = 0; m < 3; ++m) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          for (int l = 0; l < 3; ++l) {
            scale = std::max(scale, std::abs(c.riemann(i, j, k, l).derivative(m)));
            d = std::max(d, std::abs(nabla(m, i, j, k, l) + nabla(i, j, m, k, l) +
                                     nabla(j, m, i, k, l)));
          }
        }
      }
    }
  }
  return normalized(d, scale);
}

double metric_compatibility_defect(const CurvatureJets& c) {
  double d = 0.0;
  double scale = 0.0;
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const Jet3 lhs = c.g(i, j).partial(k);
        Jet3 rhs;
        for (int m = 0; m < 3; ++m) rhs += c.gamma(m, k, i) * c.g(m, j) + c.gamma(m, k, j) * c.g(i, m);
        for (std::size_t a = 0; a < jets::kJetSize; ++a) {
          if (jets::monomial_degree(a) > 2) continue;
          scale = std::max(scale, std::abs(lhs[a]));
          d = std::max(d, std::abs(lhs[a] - rhs[a]));
        }
      }
    }
  }
  return normalized(d, scale);
}

double tr13_defect(const CurvaturePacket& p) {
  const Mat3 ginv = tensor::inverse(p.g.matrix());
  double d = 0.0;
  for (int j = 0; j < 3; ++j) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) s += ginv(i, k) * p.cotton_form(i, j, k);
    }
    d = std::max(d, std::abs(s));
  }
  return normalized(d, tensor::max_abs(p.cotton_form));
}

double schouten_trace_defect(const CurvaturePacket& p) {
  const Mat3 ginv = tensor::inverse(p.g.matrix());
  double tr = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) tr += ginv(i, j) * p.schouten(i, j);
  }
  return normalized(std::abs(tr - p.scal / 4.0), std::abs(p.scal));
}

double cotton_symmetry_defect(const CurvaturePacket& p) {
  const Mat3& c = p.cotton_tensor;
  double d = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(c(i, j) - c(j, i)));
  }
  return normalized(d, tensor::max_abs(c));
}

double cotton_trace_defect(const CurvaturePacket& p) {
  const Mat3 ginv = tensor::inverse(p.g.matrix());
  double tr = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) tr += ginv(i, j) * p.cotton_tensor(i, j);
  }
  return normalized(std::abs(tr), tensor::max_abs(p.cotton_tensor));
}

double cotton_divergence_defect(const MetricSpec& m, const Vec3& p) {
  const SymField field = cotton_tensor_field(m);
  const Matrix<Jet3> h = field(p);
  double scale = 0.0;
  for (const auto& x : h) {
    for (std::size_t a = 0; a < 4; ++a) scale = std::max(scale, std::abs(x[a]));
  }
  return normalized(max_abs_vec(divergence_sym2(m, field, p)), scale);
}

double einstein_divergence_defect(const MetricSpec& m, const Vec3& p) {
  const SymField field = einstein_field(m);
  const Matrix<Jet3> h = field(p);
  double scale = 0.0;
  for (const auto& x : h) {
    for (std::size_t a = 0; a < 4; ++a) scale = std::max(scale, std::abs(x[a]));
  }
  return normalized(max_abs_vec(divergence_sym2(m, field, p)), scale);
}

double schouten_reconstruction_error(const CurvaturePacket& p, const Vec3& u, const Vec3& v,
                                     const Vec3& x) {
  const Vec3 direct = apply_riemann(p.riemann, p.g, u, v, x);
  const Vec3 rebuilt = curvature_from_schouten(p.schouten, p.g, u, v, x);
  const double scale = max_abs_vec(direct);
  const double d = max_abs_vec({direct[0] - rebuilt[0], direct[1] - rebuilt[1],
                                direct[2] - rebuilt[2]});
  return normalized(d, scale);
}

double conformal_cotton_defect(const MetricSpec& m, const Expr& f, const Vec3& p) {
  const Tensor<double, 3> a = cotton_form(m, p);
  const Tensor<double, 3> b = cotton_form(conformal_rescale(m, f), p);
  return tensor::max_abs(a - b);
}

}  // namespace cottonlab::geometry
