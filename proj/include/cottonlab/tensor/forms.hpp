#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>

#include "cottonlab/error.hpp"
#include "cottonlab/tensor/tensor.hpp"

namespace cottonlab::tensor {

/// Canonical basis of k-forms in dimension Dim: strictly increasing index
/// tuples in lexicographic order, encoded as bit masks.
template <int Dim>
struct FormBasis {
  static_assert(Dim >= 1 && Dim <= 4);

  static constexpr int count(int k) {
    int n = 0;
    for (unsigned m = 0; m < (1u << Dim); ++m) n += std::popcount(m) == k;
    return n;
  }

  static constexpr bool lex_less(unsigned a, unsigned b) {
    // Both masks have the same popcount; compare the sorted tuples.
    for (int i = 0; i < Dim; ++i) {
      const unsigned bit = 1u << i;
      if ((a & bit) != (b & bit)) return (a & bit) != 0;
    }
    return false;
  }

  static constexpr std::array<unsigned, 6> masks(int k) {
    std::array<unsigned, 6> out{};
    int n = 0;
    for (unsigned m = 0; m < (1u << Dim); ++m) {
      if (std::popcount(m) == k) out[static_cast<std::size_t>(n++)] = m;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (lex_less(out[static_cast<std::size_t>(j)], out[static_cast<std::size_t>(i)])) {
          std::swap(out[static_cast<std::size_t>(i)], out[static_cast<std::size_t>(j)]);
        }
      }
    }
    return out;
  }

  static constexpr std::size_t position(unsigned mask) {
    const auto ms = masks(std::popcount(mask));
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (ms[i] == mask) return i;
    }
    return 0;
  }

  /// (-1)^(number of pairs i in a, j in b with i > j): the sign of the
  /// shuffle that sorts the concatenated index tuple (a, b).
  static constexpr int shuffle_sign(unsigned a, unsigned b) {
    int inversions = 0;
    for (int i = 0; i < Dim; ++i) {
      if (!(a & (1u << i))) continue;
      for (int j = 0; j < i; ++j) inversions += (b & (1u << j)) != 0;
    }
    return (inversions % 2) ? -1 : 1;
  }
};

/// A differential k-form whose coefficients are values of type V (a scalar,
/// a jet, or a 3x3 matrix of either). Coefficient i multiplies
/// dx^{I_i} where I_i is the i-th increasing index tuple.
template <class V, int Dim = 3>
class Form {
 public:
  using Basis = FormBasis<Dim>;

  explicit Form(int degree = 0) : degree_(degree) {
    if (degree < 0 || degree > Dim) throw std::out_of_range("form degree out of range");
    c_.fill(V{});
  }

  int degree() const { return degree_; }
  std::size_t size() const { return static_cast<std::size_t>(Basis::count(degree_)); }
  unsigned mask(std::size_t pos) const { return Basis::masks(degree_)[pos]; }

  V& operator[](std::size_t pos) { return c_[pos]; }
  const V& operator[](std::size_t pos) const { return c_[pos]; }

  /// Coefficient of dx^{i1} ^ ... ^ dx^{ik} for a strictly increasing
  /// 0-based tuple.
  V& at(std::initializer_list<int> indices) { return c_[position(indices)]; }
  const V& at(std::initializer_list<int> indices) const { return c_[position(indices)]; }

  Form& operator+=(const Form& o) {
    check_same_degree(o);
    for (std::size_t i = 0; i < size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Form& operator-=(const Form& o) {
    check_same_degree(o);
    for (std::size_t i = 0; i < size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  template <class S>
  Form& operator*=(const S& s) {
    for (std::size_t i = 0; i < size(); ++i) c_[i] *= s;
    return *this;
  }

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }

 private:
  std::size_t position(std::initializer_list<int> indices) const {
    if (static_cast<int>(indices.size()) != degree_) {
      throw std::invalid_argument("index tuple length does not match form degree");
    }
    unsigned m = 0;
    int prev = -1;
    for (const int i : indices) {
      if (i <= prev || i >= Dim) throw std::invalid_argument("indices must increase within range");
      m |= 1u << i;
      prev = i;
    }
    return Basis::position(m);
  }

  void check_same_degree(const Form& o) const {
    if (o.degree_ != degree_) throw std::invalid_argument("adding forms of different degree");
  }

  int degree_;
  std::array<V, 6> c_;
};

template <class T, int Dim = 3>
using MatrixForm = Form<Matrix<T>, Dim>;
template <class T, int Dim = 3>
using ScalarForm = Form<T, Dim>;

/// Wedge product; values multiply in order (matrix product for matrix
/// values), so a ^ b and b ^ a differ for matrix-valued forms.
template <class V, int Dim>
auto wedge(const Form<V, Dim>& a, const Form<V, Dim>& b) {
  using Basis = FormBasis<Dim>;
  const int k = a.degree() + b.degree();
  if (k > Dim) throw DegreeError(a.degree(), b.degree());
  Form<V, Dim> out(k);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const unsigned ma = a.mask(i);
      const unsigned mb = b.mask(j);
      if (ma & mb) continue;
      V term = a[i] * b[j];
      if (Basis::shuffle_sign(ma, mb) < 0) term *= -1.0;
      out[Basis::position(ma | mb)] += term;
    }
  }
  return out;
}

/// Applies the matrix trace to every coefficient.
template <class T, int Dim>
ScalarForm<T, Dim> trace_form(const MatrixForm<T, Dim>& a) {
  ScalarForm<T, Dim> out(a.degree());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = trace(a[i]);
  return out;
}

/// Coefficientwise map to a form of the same degree.
template <int Dim, class V, class F>
auto map_form(const Form<V, Dim>& a, F&& f) {
  using W = decltype(f(a[0]));
  Form<W, Dim> out(a.degree());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i]);
  return out;
}

/// The 0-form with value v.
template <class V, int Dim = 3>
Form<V, Dim> zero_form(const V& v) {
  Form<V, Dim> f(0);
  f[0] = v;
  return f;
}

}  // namespace cottonlab::tensor
