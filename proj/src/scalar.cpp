#include "curvhom/scalar.hpp"

#include <sstream>
#include <stdexcept>

namespace curvhom {

namespace {

std::optional<BigInt> integer_sqrt(const BigInt& n) {
  if (n < 0) return std::nullopt;
  BigInt r = boost::multiprecision::sqrt(n);
  if (r * r != n) return std::nullopt;
  return r;
}

std::optional<BigInt> integer_cbrt(const BigInt& n) {
  if (n < 0) {
    auto r = integer_cbrt(-n);
    if (!r) return std::nullopt;
    return BigInt(-*r);
  }
  if (n < 2) return n;
  BigInt lo = 0;
  BigInt hi = BigInt(1) << (boost::multiprecision::msb(n) / 3 + 2);
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (mid * mid * mid < n)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo * lo * lo != n) return std::nullopt;
  return lo;
}

}  // namespace

std::optional<Rational> exact_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  auto n = integer_sqrt(BigInt(boost::multiprecision::numerator(x)));
  auto d = integer_sqrt(BigInt(boost::multiprecision::denominator(x)));
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

std::optional<Rational> exact_cbrt(const Rational& x) {
  auto n = integer_cbrt(BigInt(boost::multiprecision::numerator(x)));
  auto d = integer_cbrt(BigInt(boost::multiprecision::denominator(x)));
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

int QSqrt3::sign() const {
  int sa = a_.sign();
  int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with 3 b^2
  return a_ * a_ > 3 * b_ * b_ ? sa : sb;
}

double QSqrt3::to_double() const {
  return a_.convert_to<double>() + b_.convert_to<double>() * std::sqrt(3.0);
}

QSqrt3& QSqrt3::operator*=(const QSqrt3& o) {
  Rational a = a_ * o.a_ + 3 * b_ * o.b_;
  b_ = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  return *this;
}

QSqrt3& QSqrt3::operator/=(const QSqrt3& o) {
  Rational n = o.norm();
  if (n == 0) throw std::domain_error("QSqrt3: division by zero");
  *this *= o.conjugate();
  a_ /= n;
  b_ /= n;
  return *this;
}

std::string QSqrt3::str() const {
  std::ostringstream os;
  if (b_ == 0) {
    os << a_;
  } else if (a_ == 0) {
    os << b_ << "*sqrt3";
  } else {
    os << a_ << (b_ > 0 ? "+" : "-") << (b_ > 0 ? b_ : Rational(-b_)) << "*sqrt3";
  }
  return os.str();
}

std::optional<QSqrt3> exact_sqrt(const QSqrt3& x) {
  if (x.is_zero()) return QSqrt3(0);
  if (x.sign() < 0) return std::nullopt;
  const Rational& a = x.rational_part();
  const Rational& b = x.sqrt3_part();
  if (b == 0) {
    if (auto r = exact_sqrt(a)) return QSqrt3(*r);
    if (auto r = exact_sqrt(Rational(a / 3))) return QSqrt3(Rational(0), *r);
    return std::nullopt;
  }
  // (m + n sqrt3)^2 = m^2 + 3n^2 + 2mn sqrt3
  auto d = exact_sqrt(Rational(a * a - 3 * b * b));
  if (!d) return std::nullopt;
  for (int s : {1, -1}) {
    Rational m2 = (a + s * *d) / 2;
    if (m2 <= 0) continue;
    auto m = exact_sqrt(m2);
    if (!m) continue;
    Rational n = b / (2 * *m);
    if (*m * *m + 3 * n * n != a) continue;
    QSqrt3 r(*m, n);
    return r.sign() < 0 ? -r : r;
  }
  return std::nullopt;
}

QSqrt3i& QSqrt3i::operator/=(const QSqrt3i& o) {
  QSqrt3 n = o.abs2();
  if (n.is_zero()) throw std::domain_error("QSqrt3i: division by zero");
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::string QSqrt3i::str() const {
  if (im_.is_zero()) return re_.str();
  return "(" + re_.str() + ")+i(" + im_.str() + ")";
}

std::optional<QSqrt3i> exact_sqrt(const QSqrt3i& z) {
  const QSqrt3& a = z.real();
  const QSqrt3& b = z.imag();
  if (b.is_zero()) {
    if (a.sign() >= 0) {
      if (auto r = exact_sqrt(a)) return QSqrt3i(*r);
      return std::nullopt;
    }
    if (auto r = exact_sqrt(-a)) return QSqrt3i(QSqrt3(0), *r);
    return std::nullopt;
  }
  auto r = exact_sqrt(a * a + b * b);
  if (!r) return std::nullopt;
  auto x = exact_sqrt((a + *r) / QSqrt3(2));
  if (!x || x->is_zero()) return std::nullopt;
  QSqrt3 y = b / (QSqrt3(2) * *x);
  return QSqrt3i(*x, y);
}

}  // namespace curvhom
