#ifndef MATRING_MAT2_HPP
#define MATRING_MAT2_HPP

// 2x2 matrices over any commutative ring whose elements support +, -, *.

#include <array>
#include <cstdint>
#include <string>

namespace matring {

template <class T>
struct Mat2 {
  T a{}, b{}, c{}, d{};  // [[a, b], [c, d]]

  static Mat2 identity(const T& one) {
    T zero = one - one;
    return {one, zero, zero, one};
  }
  static Mat2 scalar(const T& v, const T& zero) { return {v, zero, zero, v}; }
  static Mat2 zero_matrix(const T& zero) { return {zero, zero, zero, zero}; }

  /// Row-major entry access, r and k in {0, 1}.
  const T& at(int r, int k) const { return r == 0 ? (k == 0 ? a : b) : (k == 0 ? c : d); }
  T& at(int r, int k) { return r == 0 ? (k == 0 ? a : b) : (k == 0 ? c : d); }

  T trace() const { return a + d; }
  T det() const { return a * d - b * c; }

  Mat2 operator-() const { return {-a, -b, -c, -d}; }
  friend Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  /// Scalar on the left.
  friend Mat2 operator*(const T& s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
  Mat2& operator+=(const Mat2& o) { return *this = *this + o; }
  Mat2& operator-=(const Mat2& o) { return *this = *this - o; }
  Mat2& operator*=(const Mat2& o) { return *this = *this * o; }

  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }

  bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }

  template <class Fmt>
  std::array<std::array<std::string, 2>, 2> rows(Fmt fmt) const {
    return {{{fmt(a), fmt(b)}, {fmt(c), fmt(d)}}};
  }
};

/// Square-and-multiply; e = 0 gives the identity built from `one`.
template <class T>
Mat2<T> mat_pow(const Mat2<T>& m, std::uint64_t e, const T& one) {
  Mat2<T> result = Mat2<T>::identity(one);
  Mat2<T> base = m;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

/// Commutator xy - yx.
template <class T>
Mat2<T> commutator(const Mat2<T>& x, const Mat2<T>& y) {
  return x * y - y * x;
}

}  // namespace matring

#endif  // MATRING_MAT2_HPP
