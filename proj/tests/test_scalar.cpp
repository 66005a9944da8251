#include "doctest.h"

#include "curvhom/linalg.hpp"

using namespace curvhom;

TEST_CASE("QSqrt3 field arithmetic") {
  const QSqrt3 r3 = QSqrt3::sqrt3();
  CHECK(r3 * r3 == QSqrt3(3));
  CHECK((QSqrt3(1) + r3) * (QSqrt3(1) - r3) == QSqrt3(-2));
  const QSqrt3 x(Rational(2, 3), Rational(-5, 7));
  CHECK(x / x == QSqrt3(1));
  CHECK((x * x) / x == x);
  CHECK_THROWS_AS(x / QSqrt3(0), std::domain_error);
}

TEST_CASE("QSqrt3 sign is exact") {
  CHECK((QSqrt3(2) - QSqrt3::sqrt3()).sign() == 1);
  CHECK((QSqrt3(1) - QSqrt3::sqrt3()).sign() == -1);
  CHECK((QSqrt3(-2) + QSqrt3::sqrt3()).sign() == -1);
  CHECK((QSqrt3(Rational(-1, 2)) + QSqrt3(Rational(0), Rational(1, 2))).sign() == 1);
  CHECK(QSqrt3(0).sign() == 0);
  CHECK(QSqrt3(1) < QSqrt3::sqrt3());
}

TEST_CASE("exact square roots") {
  CHECK(*exact_sqrt(Rational(9, 4)) == Rational(3, 2));
  CHECK_FALSE(exact_sqrt(Rational(2)).has_value());
  CHECK(*exact_sqrt(QSqrt3(3)) == QSqrt3::sqrt3());
  CHECK(*exact_sqrt(QSqrt3(4, 2)) == QSqrt3(1, 1));
  CHECK_FALSE(exact_sqrt(QSqrt3(2)).has_value());
  CHECK_FALSE(exact_sqrt(QSqrt3(-1)).has_value());

  const QSqrt3i i = QSqrt3i::i();
  auto s = exact_sqrt(i / QSqrt3i(2));
  REQUIRE(s.has_value());
  CHECK(*s * *s == i / QSqrt3i(2));
  CHECK(*exact_sqrt(QSqrt3i(-4)) == QSqrt3i(QSqrt3(0), QSqrt3(2)));
  auto t = exact_sqrt(QSqrt3i(QSqrt3(0), QSqrt3(-2)));
  REQUIRE(t.has_value());
  CHECK(*t == QSqrt3i(QSqrt3(1), QSqrt3(-1)));
  CHECK_FALSE(exact_sqrt(i).has_value());
}

TEST_CASE("exact cube roots") {
  CHECK(*exact_cbrt(Rational(-27, 8)) == Rational(-3, 2));
  CHECK(*exact_cbrt(Rational(1, 64)) == Rational(1, 4));
  CHECK_FALSE(exact_cbrt(Rational(2)).has_value());
}

TEST_CASE("Eigen matrices over Q(sqrt3) and Q(sqrt3, i)") {
  Mat<QSqrt3> rot(2, 2);
  const QSqrt3 h(Rational(-1, 2)), s(Rational(0), Rational(1, 2));
  rot << h, -s, s, h;
  const Mat<QSqrt3> cube = rot * rot * rot;
  CHECK(cube == Mat<QSqrt3>::Identity(2, 2));

  Mat<QSqrt3i> z(2, 2);
  z << QSqrt3i::i(), QSqrt3i(1), QSqrt3i(0), -QSqrt3i::i();
  const Mat<QSqrt3i> z2 = z * z;
  CHECK(z2 == -Mat<QSqrt3i>::Identity(2, 2));
  CHECK(determinant(z) == QSqrt3i(1));
}
