#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <type_traits>

namespace cottonlab::tensor {

using Vec3 = std::array<double, 3>;

constexpr std::size_t ipow3(std::size_t rank) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < rank; ++i) n *= 3;
  return n;
}

/// Dense rank-R array over {0,1,2}^R in row-major order. T is double or a
/// jet type; the same algebra runs on values and on Taylor jets.
template <class T, std::size_t Rank>
class Tensor {
 public:
  static constexpr std::size_t kSize = ipow3(Rank);

  constexpr Tensor() { data_.fill(T(0.0)); }

  template <class... I>
    requires(sizeof...(I) == Rank)
  constexpr T& operator()(I... idx) {
    return data_[flat(static_cast<std::size_t>(idx)...)];
  }
  template <class... I>
    requires(sizeof...(I) == Rank)
  constexpr const T& operator()(I... idx) const {
    return data_[flat(static_cast<std::size_t>(idx)...)];
  }

  constexpr T& operator[](std::size_t i) { return data_[i]; }
  constexpr const T& operator[](std::size_t i) const { return data_[i]; }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }
  static constexpr std::size_t size() { return kSize; }

  Tensor& operator+=(const Tensor& o) {
    for (std::size_t i = 0; i < kSize; ++i) data_[i] += o.data_[i];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    for (std::size_t i = 0; i < kSize; ++i) data_[i] -= o.data_[i];
    return *this;
  }
  template <class S>
  Tensor& operator*=(const S& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator-(Tensor a) { return a *= -1.0; }
  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  template <class... I>
  static constexpr std::size_t flat(I... idx) {
    std::size_t f = 0;
    ((f = f * 3 + idx), ...);
    return f;
  }

  std::array<T, kSize> data_;
};

template <class T, std::size_t R, class S>
Tensor<T, R> operator*(Tensor<T, R> a, const S& s)
  requires(!std::is_same_v<S, Tensor<T, R>>)
{
  return a *= s;
}
template <class T, std::size_t R>
Tensor<T, R> operator*(double s, Tensor<T, R> a) {
  return a *= s;
}

template <class T>
using Matrix = Tensor<T, 2>;
using Mat3 = Matrix<double>;

template <class T>
Matrix<T> identity() {
  Matrix<T> m;
  for (int i = 0; i < 3; ++i) m(i, i) = T(1.0);
  return m;
}

/// Row-major construction: rows {{a,b,c},{d,e,f},{g,h,i}}.
inline Mat3 mat3(std::initializer_list<std::initializer_list<double>> rows) {
  Mat3 m;
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (const double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

template <class T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      T s = a(i, 0) * b(0, j);
      s += a(i, 1) * b(1, j);
      s += a(i, 2) * b(2, j);
      c(i, j) = s;
    }
  }
  return c;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  return matmul(a, b);
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) t(i, j) = a(j, i);
  }
  return t;
}

template <class T>
T trace(const Matrix<T>& a) {
  return a(0, 0) + a(1, 1) + a(2, 2);
}

template <class T>
T det(const Matrix<T>& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

template <class T>
Matrix<T> adjugate(const Matrix<T>& a) {
  Matrix<T> c;
  c(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  c(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
  c(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
  c(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
  c(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
  c(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
  c(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
  c(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
  c(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return c;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  const T inv_det = T(1.0) / det(a);
  Matrix<T> c = adjugate(a);
  for (auto& x : c) x = x * inv_det;
  return c;
}

inline Vec3 matvec(const Mat3& a, const Vec3& v) {
  Vec3 r{};
  for (int i = 0; i < 3; ++i) r[i] = a(i, 0) * v[0] + a(i, 1) * v[1] + a(i, 2) * v[2];
  return r;
}

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// g(u, v).
inline double inner(const Mat3& g, const Vec3& u, const Vec3& v) { return dot(u, matvec(g, v)); }

template <class T, std::size_t R>
double max_abs(const Tensor<T, R>& t) {
  double m = 0.0;
  for (const auto& x : t) m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs(const Vec3& v) {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

/// Componentwise value extraction from a jet tensor.
template <class J, std::size_t R>
Tensor<double, R> values(const Tensor<J, R>& t) {
  Tensor<double, R> out;
  for (std::size_t i = 0; i < Tensor<J, R>::kSize; ++i) out[i] = t[i].value();
  return out;
}

}  // namespace cottonlab::tensor
