#include "curvhom/bivector.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace curvhom {

std::pair<int, int> bivector_index(int a, int b) {
  for (int i = 0; i < 6; ++i) {
    if (kBivectorPairs[i].first == a && kBivectorPairs[i].second == b) return {i, 1};
    if (kBivectorPairs[i].first == b && kBivectorPairs[i].second == a) return {i, -1};
  }
  throw Error(ErrorCode::InvalidArgument, "no bivector for a repeated index");
}

int permutation_sign(int a, int b, int c, int d) {
  int p[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] == p[j]) return 0;
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

MatR orthonormal_frame(const MatR& g, std::vector<int>& eps, double tol) {
  const int n = static_cast<int>(g.rows());
  const double scale = max_abs(g);
  std::vector<VecR> rest;
  for (int i = 0; i < n; ++i) rest.push_back(VecR::Unit(n, i));
  MatR frame(n, n);
  eps.clear();
  auto ip = [&](const VecR& x, const VecR& y) { return (x.transpose() * g * y).value(); };
  for (int k = 0; k < n; ++k) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(rest.size()); ++i)
      if (std::abs(ip(rest[i], rest[i])) > std::abs(ip(rest[best], rest[best]))) best = i;
    if (std::abs(ip(rest[best], rest[best])) <= tol * scale) {
      int bi = -1, bj = -1;
      double pairing = tol * scale;
      for (int i = 0; i < static_cast<int>(rest.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(rest.size()); ++j)
          if (std::abs(ip(rest[i], rest[j])) > pairing) {
            pairing = std::abs(ip(rest[i], rest[j]));
            bi = i;
            bj = j;
          }
      if (bi < 0) throw Error(ErrorCode::OrthonormalizationFailure, "remaining vectors are mutually null");
      rest[bi] += rest[bj];
      best = bi;
    }
    VecR v = rest[best];
    rest.erase(rest.begin() + best);
    const double q = ip(v, v);
    const int e = q > 0 ? 1 : -1;
    VecR f = v / std::sqrt(std::abs(q));
    frame.col(k) = f;
    eps.push_back(e);
    for (VecR& r : rest) r -= e * ip(f, r) * f;
  }
  return frame;
}

BivectorSpace bivector_space(const MetricLieAlgebra<double>& mla, int orientation) {
  if (mla.dim() != 4) throw Error(ErrorCode::WrongDimension, "bivector calculus requires dimension four");
  if (orientation != 1 && orientation != -1) throw Error(ErrorCode::InvalidArgument, "orientation must be +1 or -1");
  BivectorSpace s;
  s.g = mla.g.gram();
  s.gram = bivector_gram(s.g);
  s.signature = mla.g.signature();
  s.orientation = orientation;
  s.frame = orthonormal_frame(s.g, s.eps);
  if ((s.frame.determinant() > 0 ? 1 : -1) != orientation) s.frame.col(3) = -s.frame.col(3);
  s.volume = s.frame.determinant();
  return s;
}

namespace {

/// Columns: coordinates of f_a ^ f_b for the frame pairs, in the bivector basis.
MatR frame_bivectors(const MatR& frame) {
  MatR l(6, 6);
  for (int i = 0; i < 6; ++i) {
    auto [a, b] = kBivectorPairs[i];
    l.col(i) = wedge<double>(frame.col(a), frame.col(b));
  }
  return l;
}

}  // namespace

HodgeStar hodge_star(const BivectorSpace& space) {
  MatR star_f = MatR::Zero(6, 6);
  for (int i = 0; i < 6; ++i) {
    auto [a, b] = kBivectorPairs[i];
    int c = -1, d = -1;
    for (int k = 0; k < 4; ++k) {
      if (k == a || k == b) continue;
      if (c < 0)
        c = k;
      else
        d = k;
    }
    const auto [idx, sgn] = bivector_index(c, d);
    star_f(idx, i) = permutation_sign(a, b, c, d) * space.eps[c] * space.eps[d] * sgn;
  }
  const MatR l = frame_bivectors(space.frame);
  HodgeStar h;
  h.star = l * star_f * inverse(l);
  const MatR sq = h.star * h.star;
  const double dp = max_abs(MatR(sq - MatR::Identity(6, 6)));
  const double dm = max_abs(MatR(sq + MatR::Identity(6, 6)));
  h.square_sign = dp <= dm ? 1 : -1;
  h.square_defect = std::min(dp, dm);
  return h;
}

double star_duality_defect(const BivectorSpace& space, const HodgeStar& star) {
  double worst = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const VecR ei = VecR::Unit(6, i), ej = VecR::Unit(6, j);
      const double lhs = wedge4<double>(ei, ej);
      const double rhs = (VecR(star.star * ei).transpose() * space.gram * ej).value() * space.volume;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  return worst;
}

SelfDualSplit selfdual_split(const BivectorSpace& space, const HodgeStar& star) {
  SelfDualSplit split;
  split.J = star.star;
  split.lorentzian = star.square_sign < 0;
  if (split.lorentzian) return split;
  const MatR l = frame_bivectors(space.frame);
  const MatR id = MatR::Identity(6, 6);
  split.plus = (id + star.star) * l.leftCols(3);
  split.minus = (id - star.star) * l.leftCols(3);
  return split;
}

MatR kulkarni_nomizu_form(const MatR& h, const MatR& k) {
  MatR out(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      auto [a, b] = kBivectorPairs[i];
      auto [c, d] = kBivectorPairs[j];
      out(i, j) = h(a, c) * k(b, d) + h(b, d) * k(a, c) - h(a, d) * k(b, c) - h(b, c) * k(a, d);
    }
  return out;
}

WeylDecomposition schouten_weyl(const CurvatureTensor<double>& r, const CurvatureSummary<double>& summary) {
  if (r.n != 4) throw Error(ErrorCode::WrongDimension, "Weyl decomposition implemented for dimension four");
  WeylDecomposition w;
  const double s = summary.scalar;
  const MatR& g = r.gram;
  w.schouten = summary.ricci - (s / 6.0) * g;
  const MatR gram6 = bivector_gram(g);
  const MatR kn = 0.5 * kulkarni_nomizu_form(g, w.schouten);
  w.kn_operator = solve(gram6, kn);
  w.weyl = curvature_operator(r) - w.kn_operator;
  w.einstein_witness = max_abs(MatR(w.kn_operator - (s / 12.0) * MatR::Identity(6, 6)));

  const MatR ginv = inverse(g);
  auto kn4 = [&](int a, int b, int c, int d) {
    return 0.5 * (g(a, c) * w.schouten(b, d) + g(b, d) * w.schouten(a, c) - g(a, d) * w.schouten(b, c) -
                  g(b, c) * w.schouten(a, d));
  };
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) {
      double acc = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) acc += ginv(a, c) * (r.lowered(a, b, c, d) - kn4(a, b, c, d));
      w.trace_defect = std::max(w.trace_defect, std::abs(acc));
    }
  return w;
}

double commutator_with_star(const MatR& op, const HodgeStar& star) {
  return max_abs(MatR(op * star.star - star.star * op));
}

double commutator_with_star(const MatC& op, const HodgeStar& star) {
  const MatC s = to_complex_matrix(star.star);
  return max_abs(MatC(op * s - s * op));
}

MatC restrict_to_E(const MatC& op, const ComplexE& e, const HodgeStar& star, double tol) {
  const double comm = commutator_with_star(op, star);
  if (comm > tol * (1.0 + max_abs(op)))
    throw Error(ErrorCode::NotStarCommuting, "operator does not commute with the star (max-abs " +
                                                 std::to_string(comm) + ")");
  const MatC rhs = e.basis.transpose() * e.gram6 * op * e.basis;
  return solve(e.h, rhs);
}

MatC restrict_to_E(const MatR& op, const ComplexE& e, const HodgeStar& star, double tol) {
  return restrict_to_E(MatC(to_complex_matrix(op)), e, star, tol);
}

ComplexE build_E(const SelfDualSplit& split, const BivectorSpace& space, const HodgeStar& star,
                 const MatR& weyl, double tol) {
  ComplexE e;
  e.lorentzian = split.lorentzian;
  e.gram6 = to_complex_matrix(space.gram);
  if (!split.lorentzian) {
    e.basis = to_complex_matrix(split.plus);
  } else {
    const MatR l = frame_bivectors(space.frame).leftCols(3);
    const MatR sl = star.star * l;
    e.basis.resize(6, 3);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 6; ++i) e.basis(i, k) = cplx(l(i, k), -sl(i, k));
  }
  e.h = e.basis.transpose() * e.gram6 * e.basis;
  e.w_plus = restrict_to_E(weyl, e, star, tol);
  return e;
}

HProjection project_H_iso(const VecR& u, const BivectorSpace& space, const HodgeStar& star,
                          const SelfDualSplit& split, const MatR& weyl, double tol) {
  const double guu = (u.transpose() * space.g * u).value();
  if (std::abs(guu) <= tol * max_abs(space.g) * u.squaredNorm())
    throw Error(ErrorCode::NullVector, "g(u,u) vanishes");
  HProjection out;
  const MatR perp = kernel(MatR(u.transpose() * space.g));
  out.basis.resize(6, 3);
  for (int k = 0; k < 3; ++k) out.basis.col(k) = wedge<double>(u, perp.col(k));
  const MatR& b = out.basis;
  const MatR& gram = space.gram;
  const MatR wh = solve(MatR(b.transpose() * gram * b), MatR(b.transpose() * gram * weyl * b));
  out.invariance_defect = max_abs(MatR(weyl * b - b * wh));
  if (split.lorentzian) {
    MatR both(6, 6);
    both << b, star.star * b;
    out.real_rank_with_star = rank(both);
    return out;
  }
  const MatR& plus = split.plus;
  const MatR pg = plus.transpose() * gram;
  const MatR pgp = pg * plus;
  const MatR proj = 0.5 * (MatR::Identity(6, 6) + star.star) * b;
  out.projection = solve(pgp, MatR(pg * proj));
  const MatR wplus = solve(pgp, MatR(pg * weyl * plus));
  out.conjugation_defect = max_abs(MatR(out.projection * wh * inverse(out.projection) - wplus));
  Eigen::JacobiSVD<MatR> svd(out.projection);
  const VecR sv = svd.singularValues();
  out.condition = sv(0) / sv(sv.size() - 1);
  out.real_rank_with_star = 6;
  return out;
}

}  // namespace curvhom
