#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <optional>
#include <ostream>
#include <string>

namespace curvhom {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using cplx = std::complex<double>;

/// Exact square root of a nonnegative rational, if it is a perfect square.
std::optional<Rational> exact_sqrt(const Rational& x);
/// Exact real cube root of a rational, if it exists.
std::optional<Rational> exact_cbrt(const Rational& x);

/// Element a + b*sqrt(3) of the real quadratic field Q(sqrt 3).
class QSqrt3 {
public:
  QSqrt3() = default;
  QSqrt3(int a) : a_(a) {}
  QSqrt3(long a) : a_(a) {}
  QSqrt3(long long a) : a_(a) {}
  QSqrt3(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {}

  static QSqrt3 sqrt3() { return QSqrt3(Rational(0), Rational(1)); }
  /// Exact conversion of a binary double (every finite double is rational).
  static QSqrt3 from_double(double x) { return QSqrt3(Rational(x)); }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt3_part() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  int sign() const;
  double to_double() const;

  /// Galois conjugate a - b*sqrt(3).
  QSqrt3 conjugate() const { return QSqrt3(a_, -b_); }
  /// Field norm a^2 - 3 b^2.
  Rational norm() const { return a_ * a_ - 3 * b_ * b_; }

  QSqrt3 operator-() const { return QSqrt3(-a_, -b_); }
  QSqrt3& operator+=(const QSqrt3& o) { a_ += o.a_; b_ += o.b_; return *this; }
  QSqrt3& operator-=(const QSqrt3& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  QSqrt3& operator*=(const QSqrt3& o);
  QSqrt3& operator/=(const QSqrt3& o);

  friend QSqrt3 operator+(QSqrt3 x, const QSqrt3& y) { return x += y; }
  friend QSqrt3 operator-(QSqrt3 x, const QSqrt3& y) { return x -= y; }
  friend QSqrt3 operator*(QSqrt3 x, const QSqrt3& y) { return x *= y; }
  friend QSqrt3 operator/(QSqrt3 x, const QSqrt3& y) { return x /= y; }
  friend bool operator==(const QSqrt3& x, const QSqrt3& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const QSqrt3& x, const QSqrt3& y) { return !(x == y); }
  friend bool operator<(const QSqrt3& x, const QSqrt3& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QSqrt3& x, const QSqrt3& y) { return y < x; }
  friend bool operator<=(const QSqrt3& x, const QSqrt3& y) { return !(y < x); }
  friend bool operator>=(const QSqrt3& x, const QSqrt3& y) { return !(x < y); }

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const QSqrt3& x) { return os << x.str(); }

private:
  Rational a_{0};
  Rational b_{0};
};

/// Exact square root in Q(sqrt 3) of a nonnegative element, if one exists.
std::optional<QSqrt3> exact_sqrt(const QSqrt3& x);

inline QSqrt3 abs(const QSqrt3& x) { return x.sign() < 0 ? -x : x; }

/// Element re + i*im of Q(sqrt 3, i); the arithmetic is that of C restricted to the field.
class QSqrt3i {
public:
  QSqrt3i() = default;
  QSqrt3i(int a) : re_(a) {}
  QSqrt3i(long a) : re_(a) {}
  QSqrt3i(long long a) : re_(a) {}
  QSqrt3i(const Rational& a) : re_(a) {}
  QSqrt3i(QSqrt3 re, QSqrt3 im = QSqrt3()) : re_(std::move(re)), im_(std::move(im)) {}

  static QSqrt3i i() { return QSqrt3i(QSqrt3(0), QSqrt3(1)); }
  static QSqrt3i from_double(double x) { return QSqrt3i(QSqrt3::from_double(x)); }

  const QSqrt3& real() const { return re_; }
  const QSqrt3& imag() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  QSqrt3i conj() const { return QSqrt3i(re_, -im_); }
  QSqrt3 abs2() const { return re_ * re_ + im_ * im_; }
  cplx to_complex() const { return {re_.to_double(), im_.to_double()}; }

  QSqrt3i operator-() const { return QSqrt3i(-re_, -im_); }
  QSqrt3i& operator+=(const QSqrt3i& o) { re_ += o.re_; im_ += o.im_; return *this; }
  QSqrt3i& operator-=(const QSqrt3i& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  QSqrt3i& operator*=(const QSqrt3i& o) {
    QSqrt3 r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  QSqrt3i& operator/=(const QSqrt3i& o);

  friend QSqrt3i operator+(QSqrt3i x, const QSqrt3i& y) { return x += y; }
  friend QSqrt3i operator-(QSqrt3i x, const QSqrt3i& y) { return x -= y; }
  friend QSqrt3i operator*(QSqrt3i x, const QSqrt3i& y) { return x *= y; }
  friend QSqrt3i operator/(QSqrt3i x, const QSqrt3i& y) { return x /= y; }
  friend bool operator==(const QSqrt3i& x, const QSqrt3i& y) { return x.re_ == y.re_ && x.im_ == y.im_; }
  friend bool operator!=(const QSqrt3i& x, const QSqrt3i& y) { return !(x == y); }

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const QSqrt3i& x) { return os << x.str(); }

private:
  QSqrt3 re_;
  QSqrt3 im_;
};

/// Principal-branch exact square root in Q(sqrt 3, i), if one exists.
std::optional<QSqrt3i> exact_sqrt(const QSqrt3i& z);

/// Uniform scalar interface used by the templated algorithms.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr bool complex = false;
  static double sqrt3() { return std::sqrt(3.0); }
  static double from_double(double x) { return x; }
  static double magnitude(double x) { return std::abs(x); }
  static cplx to_complex(double x) { return {x, 0.0}; }
};

template <>
struct ScalarTraits<cplx> {
  static constexpr bool exact = false;
  static constexpr bool complex = true;
  static cplx sqrt3() { return {std::sqrt(3.0), 0.0}; }
  static cplx i() { return {0.0, 1.0}; }
  static cplx from_double(double x) { return {x, 0.0}; }
  static double magnitude(const cplx& x) { return std::abs(x); }
  static cplx to_complex(const cplx& x) { return x; }
};

template <>
struct ScalarTraits<QSqrt3> {
  static constexpr bool exact = true;
  static constexpr bool complex = false;
  static QSqrt3 sqrt3() { return QSqrt3::sqrt3(); }
  static QSqrt3 from_double(double x) { return QSqrt3::from_double(x); }
  static double magnitude(const QSqrt3& x) { return std::abs(x.to_double()); }
  static cplx to_complex(const QSqrt3& x) { return {x.to_double(), 0.0}; }
};

template <>
struct ScalarTraits<QSqrt3i> {
  static constexpr bool exact = true;
  static constexpr bool complex = true;
  static QSqrt3i sqrt3() { return QSqrt3i(QSqrt3::sqrt3()); }
  static QSqrt3i i() { return QSqrt3i::i(); }
  static QSqrt3i from_double(double x) { return QSqrt3i::from_double(x); }
  static double magnitude(const QSqrt3i& x) { return std::abs(x.to_complex()); }
  static cplx to_complex(const QSqrt3i& x) { return x.to_complex(); }
};

template <class S>
inline double magnitude(const S& x) { return ScalarTraits<S>::magnitude(x); }

template <class S>
inline cplx to_complex(const S& x) { return ScalarTraits<S>::to_complex(x); }

/// Zero test: exact for field elements, thresholded for floating point.
template <class S>
inline bool is_negligible(const S& x, double threshold) {
  if constexpr (ScalarTraits<S>::exact)
    return x == S(0);
  else
    return magnitude(x) <= threshold;
}

}  // namespace curvhom

namespace Eigen {

template <>
struct NumTraits<curvhom::QSqrt3> : GenericNumTraits<curvhom::QSqrt3> {
  using Real = curvhom::QSqrt3;
  using NonInteger = curvhom::QSqrt3;
  using Literal = curvhom::QSqrt3;
  using Nested = curvhom::QSqrt3;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 20,
    MulCost = 60
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<curvhom::QSqrt3i> : GenericNumTraits<curvhom::QSqrt3i> {
  using Real = curvhom::QSqrt3i;
  using NonInteger = curvhom::QSqrt3i;
  using Literal = curvhom::QSqrt3i;
  using Nested = curvhom::QSqrt3i;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 40,
    MulCost = 240
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
