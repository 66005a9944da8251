#pragma once

#include "curvhom/curvature.hpp"

#include <array>
#include <utility>

namespace curvhom {

/// Bivector basis X_a ^ X_b in the order (0,1), (0,2), (0,3), (2,3), (3,1), (1,2).
inline constexpr std::array<std::pair<int, int>, 6> kBivectorPairs = {
    {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}}};

/// Index of X_a ^ X_b in the bivector basis together with the sign relating the two.
std::pair<int, int> bivector_index(int a, int b);

/// Sign of the permutation (a, b, c, d) of (0, 1, 2, 3); zero if indices repeat.
int permutation_sign(int a, int b, int c, int d);

/// <X_a ^ X_b, X_c ^ X_d> = g_ac g_bd - g_ad g_bc.
template <class S>
Mat<S> bivector_gram(const Mat<S>& g) {
  Mat<S> out(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      auto [a, b] = kBivectorPairs[i];
      auto [c, d] = kBivectorPairs[j];
      out(i, j) = g(a, c) * g(b, d) - g(a, d) * g(b, c);
    }
  return out;
}

/// Coordinates of x ^ y in the bivector basis.
template <class T>
Vec<T> wedge(const Vec<T>& x, const Vec<T>& y) {
  Vec<T> out(6);
  for (int i = 0; i < 6; ++i) {
    auto [a, b] = kBivectorPairs[i];
    out(i) = x(a) * y(b) - x(b) * y(a);
  }
  return out;
}

/// Coefficient of X_0 ^ X_1 ^ X_2 ^ X_3 in alpha ^ beta.
template <class T>
T wedge4(const Vec<T>& alpha, const Vec<T>& beta) {
  T acc(0);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      auto [a, b] = kBivectorPairs[i];
      auto [c, d] = kBivectorPairs[j];
      int s = permutation_sign(a, b, c, d);
      if (s != 0) acc += T(s) * alpha(i) * beta(j);
    }
  return acc;
}

/// Skew-adjoint endomorphism of a bivector: (x ^ y) w = g(x, w) y - g(y, w) x.
template <class T, class S>
Mat<T> bivector_endomorphism(const Vec<T>& coords, const Mat<S>& g) {
  const Mat<T> gt = g.template cast<T>();
  Mat<T> m = Mat<T>::Zero(4, 4);
  for (int i = 0; i < 6; ++i) {
    if (coords(i) == T(0)) continue;
    auto [a, b] = kBivectorPairs[i];
    m.row(b) += coords(i) * gt.row(a);
    m.row(a) -= coords(i) * gt.row(b);
  }
  return m;
}

/// Bivector coordinates of a g-skew-adjoint endomorphism (inverse of bivector_endomorphism).
template <class T, class S>
Vec<T> endomorphism_bivector(const Mat<T>& m, const Mat<S>& g) {
  // m = sum_i c_i (e_b e_a^T - e_a e_b^T) g, so m g^{-1} is antisymmetric with entry (b,a) = c_i
  const Mat<T> k = m * inverse(g).template cast<T>();
  Vec<T> out(6);
  for (int i = 0; i < 6; ++i) {
    auto [a, b] = kBivectorPairs[i];
    out(i) = k(b, a);
  }
  return out;
}

/// Matrix of the curvature operator on bivectors: <R(X_a ^ X_b), X_c ^ X_d> = R_abcd.
template <class S>
Mat<S> curvature_form(const CurvatureTensor<S>& r) {
  Mat<S> form(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      auto [a, b] = kBivectorPairs[i];
      auto [c, d] = kBivectorPairs[j];
      form(i, j) = r.lowered(a, b, c, d);
    }
  return form;
}

template <class S>
Mat<S> curvature_operator(const CurvatureTensor<S>& r) {
  if (r.n != 4) throw Error(ErrorCode::WrongDimension, "bivector calculus requires dimension four");
  return solve(bivector_gram(r.gram), curvature_form(r));
}

/// Max of |<A x, y> - <x, A y>| for an operator on bivectors.
template <class S>
double bivector_self_adjoint_defect(const Mat<S>& op, const Mat<S>& gram6) {
  return max_abs(Mat<S>(op.transpose() * gram6 - gram6 * op));
}

struct BivectorSpace {
  MatR g;            ///< metric on the algebra
  MatR gram;         ///< induced metric on bivectors
  MatR frame;        ///< columns: g-orthonormal positively oriented frame
  std::vector<int> eps;  ///< g(f_a, f_a)
  int orientation = 1;
  double volume = 1.0;   ///< vol = volume * X_0 ^ X_1 ^ X_2 ^ X_3
  SignPattern signature;
};

/// Indefinite Gram-Schmidt with largest-|g(v,v)| pivoting; null remainders are repaired by pair sums.
MatR orthonormal_frame(const MatR& g, std::vector<int>& eps, double tol = kTol);

BivectorSpace bivector_space(const MetricLieAlgebra<double>& mla, int orientation);

struct HodgeStar {
  MatR star;
  int square_sign = 1;
  double square_defect = 0.0;
};

HodgeStar hodge_star(const BivectorSpace& space);

/// Max over basis pairs of |alpha ^ beta - <*alpha, beta> vol|.
double star_duality_defect(const BivectorSpace& space, const HodgeStar& star);

struct SelfDualSplit {
  bool lorentzian = false;
  MatR plus;   ///< 6x3, columns span Lambda+ (real case)
  MatR minus;  ///< 6x3, columns span Lambda- (real case)
  MatR J;      ///< the star, a complex structure in the Lorentzian case
};

SelfDualSplit selfdual_split(const BivectorSpace& space, const HodgeStar& star);

struct WeylDecomposition {
  MatR schouten;
  MatR kn_operator;  ///< (1/2) g ^ sigma as an operator on bivectors
  MatR weyl;         ///< Weyl operator on bivectors
  double einstein_witness = 0.0;  ///< max-abs of R - W - (s/12) Id
  double trace_defect = 0.0;      ///< max-abs of g^{ac} W_abcd
};

/// Kulkarni-Nomizu product of two symmetric forms, as a bivector form.
MatR kulkarni_nomizu_form(const MatR& h, const MatR& k);

WeylDecomposition schouten_weyl(const CurvatureTensor<double>& r, const CurvatureSummary<double>& summary);

struct ComplexE {
  bool lorentzian = false;
  MatC basis;  ///< 6x3 complex bivector coordinates spanning E
  MatC h;      ///< complex-bilinear fibre metric in that basis
  MatC gram6;  ///< complexified bivector metric
  MatC w_plus; ///< Weyl operator restricted to E
};

double commutator_with_star(const MatR& op, const HodgeStar& star);
double commutator_with_star(const MatC& op, const HodgeStar& star);

ComplexE build_E(const SelfDualSplit& split, const BivectorSpace& space, const HodgeStar& star,
                 const MatR& weyl, double tol = kTol);

/// Matrix of an E-preserving operator on bivectors in the basis of E.
MatC restrict_to_E(const MatC& op, const ComplexE& e, const HodgeStar& star, double tol = kTol);
MatC restrict_to_E(const MatR& op, const ComplexE& e, const HodgeStar& star, double tol = kTol);

struct HProjection {
  MatR basis;                      ///< 6x3 coordinates of u ^ u-perp
  MatR projection;                 ///< real case: H -> Lambda+ in the split basis
  double invariance_defect = 0.0;  ///< residual of W(H) in H
  double conjugation_defect = 0.0; ///< real case: |P W_H P^{-1} - W+|
  double condition = 0.0;          ///< real case: condition number of the projection
  int real_rank_with_star = 0;     ///< Lorentzian: real rank of H + *H
};

HProjection project_H_iso(const VecR& u, const BivectorSpace& space, const HodgeStar& star,
                          const SelfDualSplit& split, const MatR& weyl, double tol = kTol);

}  // namespace curvhom
