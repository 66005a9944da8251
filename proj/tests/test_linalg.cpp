#include "doctest.h"

#include "curvhom/petrov.hpp"
#include "curvhom/spectrum.hpp"
#include "oracles.hpp"

#include <Eigen/Eigenvalues>

using namespace curvhom;

namespace {

const cplx q(-0.5, std::sqrt(3.0) / 2.0);

SignPattern eigen_signs(const MatR& g) {
  Eigen::SelfAdjointEigenSolver<MatR> es(g);
  SignPattern p;
  for (int i = 0; i < g.rows(); ++i) p.signs.push_back(es.eigenvalues()(i) < 0 ? -1 : 1);
  std::sort(p.signs.begin(), p.signs.end());
  return p;
}

}  // namespace

TEST_CASE("signature_of examples") {
  CHECK(signature_of(SymBilinearForm<double>(MatR::Identity(4, 4))).str() == "++++");
  MatR g(3, 3);
  g << 0, 1, 0, 1, 0, 0, 0, 0, 1;
  CHECK(signature_of(SymBilinearForm<double>(g)).str() == "-++");
  MatR n = VecR((VecR(4) << -1, -1, 1, 1).finished()).asDiagonal();
  CHECK(signature_of(SymBilinearForm<double>(n)).str() == "--++");
  MatR d = MatR::Zero(3, 3);
  d(0, 1) = d(1, 0) = 1;
  CHECK_THROWS_AS(SymBilinearForm<double>{d}, Error);
  try {
    SymBilinearForm<double> bad(d);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateForm);
  }
}

TEST_CASE("signature_of is a congruence invariant") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = trial % 2 == 0 ? 3 : 4;
    Eigen::MatrixXi a = oracle::random_int_matrix(n, 3, rng);
    Eigen::MatrixXi g = a + a.transpose();
    auto ge = oracle::from_int(g);
    if (determinant(ge).is_zero()) continue;
    Eigen::MatrixXi p;
    do {
      p = oracle::random_int_matrix(n, 2, rng);
    } while (determinant(oracle::from_int(p)).is_zero());
    Eigen::MatrixXi gp = p.transpose() * g * p;
    const SignPattern exact = signature_of(SymBilinearForm<QSqrt3>(ge));
    CHECK(signature_of(SymBilinearForm<QSqrt3>(oracle::from_int(gp))) == exact);
    CHECK(signature_of(SymBilinearForm<double>(gp.cast<double>())) == exact);
    CHECK(eigen_signs(g.cast<double>()) == exact);
  }
}

TEST_CASE("is_self_adjoint examples") {
  const auto form = standard_inner_product<double>(1);
  CHECK(is_self_adjoint(MatR(MatR::Identity(3, 3)), form));
  CHECK(is_self_adjoint(diagonalizable_F<double>(1.0), form));
  MatR j(2, 2);
  j << 0, 1, 0, 0;
  CHECK_FALSE(is_self_adjoint(j, SymBilinearForm<double>(MatR::Identity(2, 2))));
  CHECK_THROWS_AS(is_self_adjoint(j, form), Error);
}

TEST_CASE("complex_spectrum examples") {
  MatC d = MatC::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = q;
  d(2, 2) = std::conj(q);
  auto s = complex_spectrum(d);
  REQUIRE(s.eigenvalues.size() == 3);
  CHECK(s.diagonalizable);
  CHECK(std::abs(s.eigenvalues[0].value - std::conj(q)) < 1e-12);
  CHECK(std::abs(s.eigenvalues[1].value - cplx(1.0)) < 1e-12);
  CHECK(std::abs(s.eigenvalues[2].value - q) < 1e-12);
  CHECK(multiset_distance(s.multiset(), {1.0, q, std::conj(q)}) < 1e-12);

  auto z = complex_spectrum(MatC::Zero(3, 3));
  REQUIRE(z.eigenvalues.size() == 1);
  CHECK(z.eigenvalues[0].algebraic == 3);
  CHECK(z.eigenvalues[0].geometric == 3);
  CHECK(z.diagonalizable);

  for (int sign : {1, -1}) {
    const MatR f = nondiagonalizable_F<double>(sign);
    auto sp = complex_spectrum(to_complex_matrix(MatR(f * f)));
    REQUIRE(sp.eigenvalues.size() == 1);
    CHECK(sp.eigenvalues[0].algebraic == 3);
    CHECK(sp.eigenvalues[0].geometric == 2);
    CHECK_FALSE(sp.diagonalizable);
  }
}

TEST_CASE("spectral ordering is |mu| descending then argument ascending") {
  MatC d = MatC::Zero(4, 4);
  d(0, 0) = cplx(0.5, 0.0);
  d(1, 1) = cplx(0.0, 2.0);
  d(2, 2) = cplx(-2.0, 0.0);
  d(3, 3) = cplx(2.0, 0.0);
  auto s = complex_spectrum(d);
  REQUIRE(s.eigenvalues.size() == 4);
  CHECK(std::abs(s.eigenvalues[0].value - cplx(2.0, 0.0)) < 1e-12);
  CHECK(std::abs(s.eigenvalues[1].value - cplx(0.0, 2.0)) < 1e-12);
  CHECK(std::abs(s.eigenvalues[2].value - cplx(-2.0, 0.0)) < 1e-12);
  CHECK(std::abs(s.eigenvalues[3].value - cplx(0.5, 0.0)) < 1e-12);
}

TEST_CASE("is_complex_diagonalizable examples") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  MatR a(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) a(i, j) = nd(rng);
  CHECK(is_complex_diagonalizable(MatR(a + a.transpose())));
  MatR rot(2, 2);
  rot << -0.5, -std::sqrt(3.0) / 2, std::sqrt(3.0) / 2, -0.5;
  CHECK(is_complex_diagonalizable(rot));
  MatR j(2, 2);
  j << 1, 1, 0, 1;
  CHECK_FALSE(is_complex_diagonalizable(j));
}

TEST_CASE("is_complex_diagonalizable agrees with the exact minimal-polynomial oracle") {
  std::mt19937_64 rng(11);
  int agree = 0, nondiag = 0, total = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = trial % 2 == 0 ? 3 : 6;
    Eigen::MatrixXi m;
    switch (trial % 4) {
      case 0:
      case 1: m = oracle::random_int_matrix(n, 4, rng); break;
      default: {
        auto [u, v] = oracle::random_unimodular(n, 2 * n, rng);
        m = u * oracle::random_jordan(n, trial % 4 == 2 ? 1 : 3, rng) * v;
      }
    }
    const bool expected = oracle::diagonalizable_exact(oracle::from_int(m));
    const bool got = is_complex_diagonalizable(m.cast<double>());
    nondiag += expected ? 0 : 1;
    agree += expected == got ? 1 : 0;
    ++total;
    CHECK_MESSAGE(expected == got, "matrix:\n" << m);
  }
  CHECK(agree == total);
  CHECK(nondiag > 20);
}

TEST_CASE("complex_spectrum is invariant under similarity") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 4;
    MatR m(n, n), p(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        m(i, j) = nd(rng);
        p(i, j) = (i == j ? 1.0 : 0.0) + 0.3 * nd(rng) / n;
      }
    const MatR conj = p * m * inverse(p);
    const double d = multiset_distance(complex_spectrum(to_complex_matrix(m)).multiset(),
                                       complex_spectrum(to_complex_matrix(conj)).multiset());
    CHECK(d <= 1e-9);
  }
}

TEST_CASE("row reduction rank, kernel and solve") {
  Mat<QSqrt3> a(3, 3);
  a << 1, 2, 3, 2, 4, 6, 1, 0, 1;
  CHECK(rank(a) == 2);
  const Mat<QSqrt3> k = kernel(a);
  REQUIRE(k.cols() == 1);
  CHECK(Mat<QSqrt3>(a * k) == Mat<QSqrt3>::Zero(3, 1));
  MatR b = MatR::Random(4, 4) + 4.0 * MatR::Identity(4, 4);
  MatR x = solve(b, MatR(MatR::Identity(4, 4)));
  CHECK(max_abs(MatR(b * x - MatR::Identity(4, 4))) < 1e-12);
  CHECK(std::abs(determinant(b) - b.determinant()) < 1e-10);
}
