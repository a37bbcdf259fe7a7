#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "cottonlab/error.hpp"
#include "cottonlab/tensor/forms.hpp"
#include "cottonlab/tensor/frame.hpp"
#include "cottonlab/tensor/hodge.hpp"
#include "support/random_tensor.hpp"

using namespace cottonlab;
using namespace cottonlab::tensor;

namespace {

// Brute-force evaluation of a k-form on k coordinate vectors, from the
// antisymmetric extension of its stored coefficients.
template <class V>
V evaluate_on_indices(const Form<V>& f, std::vector<int> idx) {
  V zero{};
  if (static_cast<int>(idx.size()) != f.degree()) return zero;
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (idx[i] == idx[j]) return zero;
      if (idx[i] > idx[j]) sign = -sign;
    }
  }
  std::sort(idx.begin(), idx.end());
  unsigned m = 0;
  for (int i : idx) m |= 1u << i;
  V v = f[FormBasis<3>::position(m)];
  if (sign < 0) v *= -1.0;
  return v;
}

int permutation_sign(const std::vector<int>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] > p[j]) s = -s;
    }
  }
  return s;
}

// (a^b)(e_I) = 1/(k! l!) sum_sigma sign(sigma) a(e_sigma...) b(e_sigma...).
Mat3 brute_wedge(const MatrixForm<double>& a, const MatrixForm<double>& b,
                 const std::vector<int>& idx) {
  const int k = a.degree();
  const int n = static_cast<int>(idx.size());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Mat3 sum;
  double norm = 1.0;
  for (int i = 2; i <= k; ++i) norm *= i;
  for (int i = 2; i <= n - k; ++i) norm *= i;
  do {
    std::vector<int> ia, ib;
    for (int i = 0; i < k; ++i) ia.push_back(idx[static_cast<std::size_t>(perm[i])]);
    for (int i = k; i < n; ++i) ib.push_back(idx[static_cast<std::size_t>(perm[i])]);
    Mat3 term = evaluate_on_indices(a, ia) * evaluate_on_indices(b, ib);
    term *= permutation_sign(perm) / norm;
    sum += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

}  // namespace

TEST(FormBasis, LexOrder) {
  EXPECT_EQ(FormBasis<3>::count(2), 3);
  EXPECT_EQ(FormBasis<3>::masks(2)[0], 0b011u);
  EXPECT_EQ(FormBasis<3>::masks(2)[1], 0b101u);
  EXPECT_EQ(FormBasis<3>::masks(2)[2], 0b110u);
  EXPECT_EQ(FormBasis<4>::count(2), 6);
  EXPECT_EQ(FormBasis<3>::shuffle_sign(0b010, 0b001), -1);
  EXPECT_EQ(FormBasis<3>::shuffle_sign(0b100, 0b011), 1);
}

TEST(Wedge, ZeroAndScalarExamples) {
  std::mt19937_64 rng(1);
  const MatrixForm<double> zero(1);
  const auto any = testkit::random_integer_matrix_form(rng, 2);
  const auto w = wedge(zero, any);
  EXPECT_EQ(w.degree(), 3);
  EXPECT_EQ(w[0], Mat3());

  MatrixForm<double> dx1(1), dx2(1);
  dx1.at({0}) = identity<double>();
  dx2.at({1}) = identity<double>();
  const auto w12 = wedge(dx1, dx2);
  EXPECT_EQ(w12.at({0, 1}), identity<double>());
  EXPECT_EQ(w12.at({0, 2}), Mat3());
  EXPECT_EQ(wedge(dx2, dx1).at({0, 1}), -1.0 * identity<double>());
}

TEST(Wedge, DegreeErrorPastDimension) {
  const MatrixForm<double> a(2), b(2);
  EXPECT_THROW(wedge(a, b), DegreeError);
}

TEST(Wedge, MatchesBruteForceAntisymmetrization) {
  std::mt19937_64 rng(2);
  for (int k = 0; k <= 3; ++k) {
    for (int l = 0; k + l <= 3; ++l) {
      const auto a = testkit::random_integer_matrix_form(rng, k);
      const auto b = testkit::random_integer_matrix_form(rng, l);
      const auto w = wedge(a, b);
      for (std::size_t i = 0; i < w.size(); ++i) {
        std::vector<int> idx;
        for (int bit = 0; bit < 3; ++bit) {
          if (w.mask(i) & (1u << bit)) idx.push_back(bit);
        }
        const Mat3 expect = brute_wedge(a, b, idx);
        for (std::size_t c = 0; c < 9; ++c) EXPECT_NEAR(w[i][c], expect[c], 1e-12);
      }
    }
  }
}

TEST(Wedge, Associative) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testkit::random_integer_matrix_form(rng, 1);
    const auto b = testkit::random_integer_matrix_form(rng, 1);
    const auto c = testkit::random_integer_matrix_form(rng, 1);
    EXPECT_EQ(wedge(wedge(a, b), c)[0], wedge(a, wedge(b, c))[0]);
    const auto z = testkit::random_integer_matrix_form(rng, 0);
    const auto t = testkit::random_integer_matrix_form(rng, 2);
    EXPECT_EQ(wedge(wedge(z, a), b)[0].begin()[0], wedge(z, wedge(a, b))[0].begin()[0]);
    for (std::size_t i = 0; i < 1; ++i) EXPECT_EQ(wedge(wedge(z, a), t)[i], wedge(z, wedge(a, t))[i]);
  }
}

TEST(TraceForm, IdentityAndGradedCommutativity) {
  const auto one = zero_form(identity<double>());
  EXPECT_EQ(trace_form(one)[0], 3.0);
  std::mt19937_64 rng(4);
  for (int k = 0; k <= 3; ++k) {
    for (int l = 0; k + l <= 3; ++l) {
      for (int trial = 0; trial < 10; ++trial) {
        const auto a = testkit::random_integer_matrix_form(rng, k);
        const auto b = testkit::random_integer_matrix_form(rng, l);
        const auto lhs = trace_form(wedge(a, b));
        const auto rhs = trace_form(wedge(b, a));
        const double sign = (k * l) % 2 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < lhs.size(); ++i) EXPECT_EQ(lhs[i] - sign * rhs[i], 0.0);
      }
    }
  }
}

TEST(Hodge, EuclideanAndOrthonormalFrameImages) {
  const SymMat3 g = SymMat3::identity();
  ScalarForm<double> dx1(1);
  dx1.at({0}) = 1.0;
  const auto s = hodge_star(g, 1, dx1);
  EXPECT_EQ(s.at({1, 2}), 1.0);
  EXPECT_EQ(s.at({0, 1}), 0.0);
  EXPECT_EQ(s.at({0, 2}), 0.0);

  ScalarForm<double> dx2(1);
  dx2.at({1}) = 1.0;
  EXPECT_EQ(hodge_star(g, 1, dx2).at({0, 2}), -1.0);  // *dx2 = dx3^dx1
  const auto one = zero_form<double>(1.0);
  EXPECT_EQ(hodge_star(g, 1, one)[0], 1.0);
  EXPECT_EQ(hodge_star(g, -1, one)[0], -1.0);
}

TEST(Hodge, AnisotropicMetric) {
  // Orthonormal coframe (2dx1, dx2, dx3) for g = diag(4,1,1): dx1 = S^1/2 and
  // *S^1 = S^2^S^3 = dx2^dx3, so *(dx1) = (1/2) dx2^dx3.
  const SymMat3 g = SymMat3::diagonal(4, 1, 1);
  ScalarForm<double> dx1(1);
  dx1.at({0}) = 1.0;
  const auto s = hodge_star(g, 1, dx1);
  EXPECT_DOUBLE_EQ(s.at({1, 2}), 0.5);
  EXPECT_EQ(s.at({0, 1}), 0.0);
}

TEST(Hodge, MatchesOrthonormalFrameDefinition) {
  // Express the orthonormal coframe theta^a = (S^{-1})^a_mu dx^mu and check
  // the defining images on random metrics.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const SymMat3 g = testkit::random_spd(rng);
    Mat3 seed = testkit::random_matrix(rng);
    if (det(seed) < 0) seed *= -1.0;
    const Frame f = gram_schmidt(g, seed);
    const Mat3 co = inverse(f.vectors);  // rows are the coframe 1-forms
    auto theta = [&](int a) {
      ScalarForm<double> t(1);
      for (int m = 0; m < 3; ++m) t[static_cast<std::size_t>(m)] = co(a, m);
      return t;
    };
    const int orientation = 1;  // det seed > 0 so the frame is positively oriented
    const auto vol = wedge(wedge(theta(0), theta(1)), theta(2));
    EXPECT_NEAR(hodge_star(g, orientation, zero_form<double>(1.0))[0], vol[0], 1e-12);
    for (int a = 0; a < 3; ++a) {
      const auto lhs = hodge_star(g, orientation, theta(a));
      const auto rhs = wedge(theta((a + 1) % 3), theta((a + 2) % 3));
      for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(lhs[i], rhs[i], 1e-11);
    }
  }
}

TEST(Hodge, InvolutionAndIsometry) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const SymMat3 g = testkit::random_spd(rng);
    const int orientation = trial % 2 ? 1 : -1;
    for (int k = 0; k <= 3; ++k) {
      const auto a = testkit::random_scalar_form(rng, k);
      const auto ss = hodge_star(g, orientation, hodge_star(g, orientation, a));
      for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(ss[i], a[i], 1e-12 * (1 + std::abs(a[i])));
      const auto s = hodge_star(g, orientation, a);
      const double na = form_inner(g, a, a);
      EXPECT_NEAR(form_inner(g, s, s), na, 1e-12 * (1.0 + na));
    }
  }
}

TEST(Hodge, RejectsIndefiniteMetric) {
  EXPECT_THROW(hodge_star(SymMat3::diagonal(1, -1, 1), 1, zero_form<double>(1.0)),
               NotPositiveDefinite);
}

TEST(GramSchmidt, Examples) {
  const Frame a = gram_schmidt(SymMat3::identity(), identity<double>());
  EXPECT_EQ(a.vectors, identity<double>());
  const Frame b = gram_schmidt(SymMat3::diagonal(4, 1, 1), identity<double>());
  EXPECT_EQ(b.vectors, mat3({{0.5, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_THROW(gram_schmidt(SymMat3::identity(), mat3({{1, 2, 3}, {1, 2, 3}, {0, 0, 1}})),
               DegenerateSeed);
}

TEST(GramSchmidt, RandomMetricsAndSeeds) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    const SymMat3 g = testkit::random_spd(rng);
    const Mat3 seed = testkit::random_matrix(rng);
    const Frame f = gram_schmidt(g, seed);
    EXPECT_LT(orthonormality_defect(g, f), 1e-12);
    EXPECT_EQ(f.determinant() > 0, det(seed) > 0);
    // First vector parallel to the first seed column.
    const Vec3 s0 = f.column(0);
    const Vec3 seed0 = {seed(0, 0), seed(1, 0), seed(2, 0)};
    const double c = dot(s0, seed0) / dot(seed0, seed0);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(s0[i], c * seed0[i], 1e-12 * std::abs(c) * 10);
    EXPECT_GT(c, 0.0);
  }
}
