#pragma once

// Independent reference computations used by the test suites.

#include "curvhom/linalg.hpp"

#include <random>
#include <vector>

namespace oracle {

using curvhom::Rational;
using RatMat = curvhom::Mat<curvhom::QSqrt3>;

/// Polynomial with rational coefficients, lowest degree first.
using Poly = std::vector<Rational>;

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly derivative(const Poly& p) {
  Poly d;
  for (size_t k = 1; k < p.size(); ++k) d.push_back(Rational(static_cast<long>(k)) * p[k]);
  trim(d);
  return d;
}

/// Remainder and quotient of polynomial division.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  trim(a);
  Poly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    const size_t shift = a.size() - b.size();
    const Rational f = a.back() / b.back();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

inline Rational rat(const curvhom::QSqrt3& x) { return x.rational_part(); }

/// Characteristic polynomial det(x I - A) by the Faddeev-LeVerrier recursion.
inline Poly char_poly(const RatMat& a) {
  const int n = static_cast<int>(a.rows());
  Poly c(n + 1, Rational(0));
  c[n] = 1;
  RatMat m = RatMat::Zero(n, n);
  const RatMat id = RatMat::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    m = a * m + curvhom::QSqrt3(c[n - k + 1]) * id;
    RatMat am = a * m;
    Rational tr = 0;
    for (int i = 0; i < n; ++i) tr += rat(am(i, i));
    c[n - k] = -tr / k;
  }
  return c;
}

inline RatMat poly_at(const Poly& p, const RatMat& a) {
  const int n = static_cast<int>(a.rows());
  RatMat acc = RatMat::Zero(n, n);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = a * acc + curvhom::QSqrt3(*it) * RatMat::Identity(n, n);
  return acc;
}

/// A is diagonalizable over C iff the square-free part of its characteristic polynomial annihilates A.
inline bool diagonalizable_exact(const RatMat& a) {
  const Poly p = char_poly(a);
  const Poly g = gcd(p, derivative(p));
  const Poly radical = divmod(p, g).first;
  const RatMat r = poly_at(radical, a);
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j)
      if (!r(i, j).is_zero()) return false;
  return true;
}

inline RatMat from_int(const Eigen::MatrixXi& m) {
  RatMat out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = curvhom::QSqrt3(m(i, j));
  return out;
}

inline Eigen::MatrixXi random_int_matrix(int n, int bound, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-bound, bound);
  Eigen::MatrixXi m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

/// Unimodular integer matrix from a few elementary row operations, with its exact inverse.
inline std::pair<Eigen::MatrixXi, Eigen::MatrixXi> random_unimodular(int n, int ops, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> idx(0, n - 1);
  std::uniform_int_distribution<int> mult(-2, 2);
  Eigen::MatrixXi u = Eigen::MatrixXi::Identity(n, n);
  Eigen::MatrixXi v = Eigen::MatrixXi::Identity(n, n);
  for (int k = 0; k < ops; ++k) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    int m = mult(rng);
    if (m == 0) m = 1;
    u.row(i) += m * u.row(j);      // u <- E u
    v.col(j) -= m * v.col(i);      // v <- v E^{-1}
  }
  return {u, v};
}

/// Block Jordan matrix with small integer eigenvalues; blocks of size up to max_block.
inline Eigen::MatrixXi random_jordan(int n, int max_block, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> ev(-2, 2);
  std::uniform_int_distribution<int> bs(1, max_block);
  Eigen::MatrixXi j = Eigen::MatrixXi::Zero(n, n);
  int pos = 0;
  while (pos < n) {
    int size = std::min(bs(rng), n - pos);
    int mu = ev(rng);
    for (int k = 0; k < size; ++k) {
      j(pos + k, pos + k) = mu;
      if (k + 1 < size) j(pos + k, pos + k + 1) = 1;
    }
    pos += size;
  }
  return j;
}

}  // namespace oracle
