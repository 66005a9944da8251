#include "curvhom/frame.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace curvhom {

namespace {

const cplx kI(0.0, 1.0);

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double max_abs_vec(const std::array<VecC, 3>& v) {
  double m = 0.0;
  for (const VecC& x : v) m = std::max(m, max_abs(x));
  return m;
}

/// Right null vectors of a square complex matrix: the last `count` right singular vectors.
MatC null_vectors(const MatC& m, int count) {
  Eigen::JacobiSVD<MatC> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(count);
}

MatR null_vectors(const MatR& m, int count) {
  Eigen::JacobiSVD<MatR> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(count);
}

/// Argument in (-pi, pi] with near-real values snapped onto the real axis.
double canonical_arg(const cplx& z, double snap) {
  if (std::abs(z.imag()) <= snap) return z.real() < -snap ? std::numbers::pi : 0.0;
  return std::arg(z);
}

cplx bilinear(const VecC& x, const MatC& h, const VecC& y) { return (x.transpose() * h * y).value(); }

struct Candidate {
  VecC x;
  int eps = 1;
  cplx ev;
  bool real = false;
};

/// h-orthogonal basis of a complex eigenspace, each vector scaled to h(x, x) = 2.
std::vector<VecC> complex_orthogonal_basis(const MatC& span, const MatC& h, double tol) {
  std::vector<VecC> rest;
  for (Eigen::Index k = 0; k < span.cols(); ++k) rest.push_back(span.col(k));
  const double threshold = tol * (1.0 + max_abs(h));
  std::vector<VecC> out;
  while (!rest.empty()) {
    size_t best = 0;
    for (size_t i = 1; i < rest.size(); ++i)
      if (std::abs(bilinear(rest[i], h, rest[i])) > std::abs(bilinear(rest[best], h, rest[best]))) best = i;
    if (std::abs(bilinear(rest[best], h, rest[best])) <= threshold) {
      size_t bi = rest.size(), bj = rest.size();
      double pairing = threshold;
      for (size_t i = 0; i < rest.size(); ++i)
        for (size_t j = i + 1; j < rest.size(); ++j)
          if (std::abs(bilinear(rest[i], h, rest[j])) > pairing) {
            pairing = std::abs(bilinear(rest[i], h, rest[j]));
            bi = i;
            bj = j;
          }
      if (bi == rest.size())
        throw Error(ErrorCode::NullEigenvector, "W+ eigenspace is null for the fibre metric h");
      rest[bi] += rest[bj];
      best = bi;
    }
    VecC x = rest[best];
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
    x *= std::sqrt(2.0 / bilinear(x, h, x));
    for (VecC& r : rest) r -= 0.5 * bilinear(x, h, r) * x;
    out.push_back(x);
  }
  return out;
}

MatC endo_of(const VecC& bivector, const MatR& g) { return bivector_endomorphism<cplx, double>(bivector, g); }

/// 2-form of an endomorphism B: (a, b) -> g(B X_a, X_b).
MatC form_of(const MatC& b, const MatC& g) { return b.transpose() * g; }

/// Endomorphism x ^ y : z -> g(x, z) y - g(y, z) x.
MatC wedge_endo(const VecC& x, const VecC& y, const MatC& g) {
  return y * (g * x).transpose() - x * (g * y).transpose();
}

/// Covector wedge (xi ^ eta)(a, b) = xi(a) eta(b) - xi(b) eta(a).
MatC wedge_forms(const VecC& xi, const VecC& eta) { return xi * eta.transpose() - eta * xi.transpose(); }

/// d of a left-invariant 1-form: (d theta)(X_a, X_b) = -theta([X_a, X_b]).
MatC d_invariant(const VecC& theta, const MetricLieAlgebra<double>& mla) {
  const int n = mla.dim();
  MatC out = MatC::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      cplx acc = 0.0;
      for (int c = 0; c < n; ++c) acc += mla.c(c, a, b) * theta(c);
      out(a, b) = -acc;
    }
  return out;
}

std::array<std::array<VecC, 3>, 3> theta_forms(const MatC& w, const ConnectionOneForms& forms) {
  std::array<std::array<VecC, 3>, 3> theta;
  const Eigen::Index n = forms.xi[0].size();
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 3; ++l) {
      VecC t = VecC::Zero(n);
      for (int k = 0; k < 3; ++k) t += w(k, j) * forms.up[k][l] - w(l, k) * forms.up[j][k];
      theta[j][l] = t;
    }
  return theta;
}

}  // namespace

cplx endo_pairing(const MatC& a, const MatC& b) { return -0.5 * (a * b).trace(); }

OrthoEigenFrame frame_from_coords(const ComplexE& e, const MatR& g, const MatC& coords,
                                  const std::array<int, 3>& eps) {
  OrthoEigenFrame f;
  f.coords = coords;
  f.bivectors = e.basis * coords;
  for (int j = 0; j < 3; ++j) f.endo[j] = endo_of(f.bivectors.col(j), g);
  f.eps = eps;
  return f;
}

OrthoEigenFrame normalized_frame(const ComplexE& e, const MatR& g, double tol) {
  const MatC& w = e.w_plus;
  const double scale = 1.0 + max_abs(w);
  const ComplexSpectrum spec = complex_spectrum(w, tol);
  if (!spec.diagonalizable) throw Error(ErrorCode::NotDiagonalizable, "W+ is not diagonalizable");
  const bool real_fibre = !e.lorentzian;

  std::vector<Candidate> cands;
  for (const Eigenvalue& ev : spec.eigenvalues) {
    const MatC shifted = w - ev.value * MatC::Identity(3, 3);
    if (real_fibre && std::abs(ev.value.imag()) <= tol * scale) {
      const MatR span = null_vectors(MatR(shifted.real()), ev.algebraic);
      const MatR h_sub = span.transpose() * e.h.real() * span;
      std::vector<int> eps;
      MatR fr;
      try {
        fr = orthonormal_frame(h_sub, eps, tol);
      } catch (const Error&) {
        throw Error(ErrorCode::NullEigenvector, "W+ eigenspace is null for the fibre metric h");
      }
      for (int k = 0; k < ev.algebraic; ++k)
        cands.push_back({to_complex_matrix(VecR(std::sqrt(2.0) * span * fr.col(k))), eps[k],
                         cplx(ev.value.real(), 0.0), true});
    } else {
      const MatC span = null_vectors(shifted, ev.algebraic);
      for (const VecC& x : complex_orthogonal_basis(span, e.h, tol)) cands.push_back({x, 1, ev.value, false});
    }
  }

  const double snap = tol * scale;
  std::stable_sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
    return canonical_arg(a.ev, snap) < canonical_arg(b.ev, snap);
  });

  if (cands[0].eps * cands[1].eps * cands[2].eps < 0) {
    int pick = 2;
    for (int j = 2; j >= 0; --j)
      if (!cands[j].real) {
        pick = j;
        break;
      }
    cands[pick].x *= kI;
    cands[pick].eps = -cands[pick].eps;
  }

  MatC coords(3, 3);
  std::array<int, 3> eps{};
  for (int j = 0; j < 3; ++j) {
    VecC x = cands[j].x;
    const VecC b = e.basis * x;
    const double bmax = max_abs(b);
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      if (std::abs(b(i)) <= 1e-6 * bmax) continue;
      const bool use_real = std::abs(b(i).real()) > 1e-6 * std::abs(b(i));
      if ((use_real ? b(i).real() : b(i).imag()) < 0) x = -x;
      break;
    }
    coords.col(j) = x;
    eps[j] = cands[j].eps;
  }

  OrthoEigenFrame f = frame_from_coords(e, g, coords, eps);
  const MatC prod = f.endo[0] * f.endo[1];
  const double same = max_abs(MatC(prod - double(eps[2]) * f.endo[2]));
  const double flipped = max_abs(MatC(prod + double(eps[2]) * f.endo[2]));
  if (flipped < same) {
    MatC c = coords;
    c.col(2) = -c.col(2);
    f = frame_from_coords(e, g, c, eps);
  }
  for (int j = 0; j < 3; ++j) f.eigenvalues[j] = cands[j].ev;
  return f;
}

OrthoEigenFrame rotate_frame(const OrthoEigenFrame& frame, const ComplexE& e, const MatR& g, const MatC& o) {
  OrthoEigenFrame f = frame_from_coords(e, g, MatC(frame.coords * o), frame.eps);
  f.eigenvalues = {};
  return f;
}

double frame_product_defect(const OrthoEigenFrame& frame, const ComplexE& e) {
  const MatC id = MatC::Identity(4, 4);
  double worst = 0.0;
  for (int j = 0; j < 3; ++j) {
    const int k = cyc1(j), l = cyc2(j);
    const MatC& aj = frame.endo[j];
    const MatC& ak = frame.endo[k];
    const MatC& al = frame.endo[l];
    worst = std::max(worst, max_abs(MatC(double(frame.eps[j]) * aj * aj + id)));
    worst = std::max(worst, max_abs(MatC(aj * ak - double(frame.eps[l]) * al)));
    worst = std::max(worst, max_abs(MatC(ak * aj + double(frame.eps[l]) * al)));
  }
  MatC expected = MatC::Zero(3, 3);
  for (int j = 0; j < 3; ++j) expected(j, j) = 2.0 * frame.eps[j];
  worst = std::max(worst, max_abs(MatC(frame.coords.transpose() * e.h * frame.coords - expected)));
  if (frame.eps[0] * frame.eps[1] * frame.eps[2] != 1) worst = std::max(worst, 1.0);
  return worst;
}

ConnectionOneForms connection_forms(const OrthoEigenFrame& frame, const FrameConnection<double>& conn, double tol) {
  const int n = conn.dim();
  ConnectionOneForms out;
  for (auto& row : out.up)
    for (VecC& v : row) v = VecC::Zero(n);
  double gamma_scale = 0.0, endo_scale = 0.0;
  for (const MatR& ga : conn.gamma) gamma_scale = std::max(gamma_scale, max_abs(ga));
  for (const MatC& a : frame.endo) endo_scale = std::max(endo_scale, max_abs(a));

  for (int a = 0; a < n; ++a) {
    const MatC ga = to_complex_matrix(conn.gamma[a]);
    for (int j = 0; j < 3; ++j) {
      const MatC d = ga * frame.endo[j] - frame.endo[j] * ga;
      MatC rest = d;
      for (int l = 0; l < 3; ++l) {
        const cplx coef = endo_pairing(d, frame.endo[l]) / (2.0 * frame.eps[l]);
        out.up[j][l](a) = coef;
        rest -= coef * frame.endo[l];
      }
      out.expansion_residual = std::max(out.expansion_residual, max_abs(rest));
    }
  }
  if (out.expansion_residual > tol * (1.0 + gamma_scale) * (1.0 + endo_scale))
    throw Error(ErrorCode::FrameExpansionFailure,
                "nabla alpha_j leaves the span of the frame (residual " + num(out.expansion_residual) + ")");

  for (int j = 0; j < 3; ++j) {
    const int k = cyc1(j), l = cyc2(j);
    out.xi[l] = double(frame.eps[j]) * out.up[j][k];
  }
  for (int j = 0; j < 3; ++j) {
    const int k = cyc1(j), l = cyc2(j);
    out.consistency_defect = std::max(out.consistency_defect, max_abs(out.up[j][j]));
    out.consistency_defect =
        std::max(out.consistency_defect, max_abs(VecC(out.up[j][l] + double(frame.eps[j]) * out.xi[k])));
    for (int m = 0; m < 3; ++m) {
      const VecC xi_jm = 2.0 * frame.eps[m] * out.up[j][m];
      const VecC xi_mj = 2.0 * frame.eps[j] * out.up[m][j];
      out.skew_defect = std::max(out.skew_defect, max_abs(VecC(xi_jm + xi_mj)));
    }
  }
  return out;
}

WeylDiagonalData weyl_components(const MatC& w_frame, const std::array<int, 3>& eps,
                                 const ConnectionOneForms* forms) {
  WeylDiagonalData d;
  d.w = w_frame;
  for (int j = 0; j < 3; ++j) {
    const int k = cyc1(j), l = cyc2(j);
    d.lambda[j] = w_frame(j, j);
    d.mu[j] = double(eps[l]) * w_frame(l, k);
  }
  if (forms) d.theta = theta_forms(w_frame, *forms);
  return d;
}

WeylDiagonalData weyl_components(const OrthoEigenFrame& frame, const MatC& w_plus, const ConnectionOneForms* forms) {
  return weyl_components(solve(frame.coords, MatC(w_plus * frame.coords)), frame.eps, forms);
}

DivergenceResult divergence_check(const WeylDiagonalData& data, const ConnectionOneForms& forms,
                                  const OrthoEigenFrame& frame, const MatR& g, double tol) {
  const MatC ginv = to_complex_matrix(inverse(g));
  const auto theta = theta_forms(data.w, forms);
  const auto& eps = frame.eps;
  const auto& lam = data.lambda;
  const auto& mu = data.mu;
  const auto& xi = forms.xi;
  DivergenceResult r;
  for (int j = 0; j < 3; ++j) {
    VecC acc = VecC::Zero(g.rows());
    for (int k = 0; k < 3; ++k) acc += frame.endo[k] * (ginv * theta[j][k]);
    r.via_theta[j] = acc;
  }
  for (int j = 0; j < 3; ++j) {
    const int k = cyc1(j), l = cyc2(j);
    const VecC inner = double(eps[k] * eps[l]) * (lam[k] - lam[l]) * xi[j] + double(eps[k]) * mu[k] * xi[l] -
                       double(eps[l]) * mu[l] * xi[k];
    r.w_j[j] = ginv * (2.0 * mu[j] * xi[j]) + frame.endo[j] * (ginv * inner);
  }
  for (int j = 0; j < 3; ++j) {
    const int k = cyc1(j), l = cyc2(j);
    r.via_fields[j] = frame.endo[j] * (r.w_j[k] - r.w_j[l]);
    r.route_gap = std::max(r.route_gap, max_abs(VecC(r.via_theta[j] - r.via_fields[j])));
    r.spread = std::max(r.spread, max_abs(VecC(r.w_j[j] - r.w_j[k])));
  }
  r.w = (r.w_j[0] + r.w_j[1] + r.w_j[2]) / 3.0;
  r.theta_max = max_abs_vec(r.via_theta);
  r.fields_max = max_abs_vec(r.via_fields);

  double lm = 0.0, endo_scale = 0.0;
  for (int j = 0; j < 3; ++j) {
    lm = std::max({lm, std::abs(lam[j]), std::abs(mu[j])});
    endo_scale = std::max(endo_scale, max_abs(frame.endo[j]));
  }
  const double scale = (1.0 + lm) * (1.0 + max_abs_vec(xi)) * (1.0 + endo_scale) * (1.0 + max_abs(ginv));
  if (r.theta_max > tol * scale)
    throw Error(ErrorCode::DivergenceNotZero, "div W does not vanish (max-abs " + num(r.theta_max) + ")");
  return r;
}

double weyl_divergence_direct(const OrthoEigenFrame& frame, const std::vector<MatR>& nabla_w, const MatR& g) {
  const MatC ginv = to_complex_matrix(inverse(g));
  double worst = 0.0;
  for (int j = 0; j < 3; ++j) {
    VecC acc = VecC::Zero(g.rows());
    for (size_t a = 0; a < nabla_w.size(); ++a) {
      const VecC b = to_complex_matrix(nabla_w[a]) * frame.bivectors.col(j);
      acc += endo_of(b, g) * ginv.col(static_cast<Eigen::Index>(a));
    }
    worst = std::max(worst, max_abs(acc));
  }
  return worst;
}

ParallelCriterion parallel_criterion(const WeylDiagonalData& data, const ConnectionOneForms& forms,
                                     const std::array<int, 3>& eps, double tol) {
  const auto& lam = data.lambda;
  const auto& mu = data.mu;
  const auto& xi = forms.xi;
  ParallelCriterion out;
  out.residual = std::max(max_abs(VecC(mu[0] * xi[0] - mu[1] * xi[1])), max_abs(VecC(mu[1] * xi[1] - mu[2] * xi[2])));
  for (int j = 0; j < 3; ++j) {
    const int k = cyc1(j), l = cyc2(j);
    const VecC r = (lam[k] - lam[l]) * xi[j] + double(eps[l]) * mu[k] * xi[l] - double(eps[k]) * mu[l] * xi[k];
    out.residual = std::max(out.residual, max_abs(r));
  }
  double lm = 0.0;
  for (int j = 0; j < 3; ++j) lm = std::max({lm, std::abs(lam[j]), std::abs(mu[j])});
  out.parallel = out.residual <= tol * (1.0 + lm) * (1.0 + max_abs_vec(xi));
  return out;
}

double structure_equation_check(const ConnectionOneForms& forms, const OrthoEigenFrame& frame,
                                const MetricLieAlgebra<double>& mla, const MatR& weyl, double s) {
  const MatR g = mla.g.gram();
  const MatC gc = to_complex_matrix(g);
  const MatC op = to_complex_matrix(MatR(weyl + (s / 12.0) * MatR::Identity(6, 6)));
  double worst = 0.0;
  for (int j = 0; j < 3; ++j) {
    const int k = cyc1(j), l = cyc2(j);
    const MatC lhs = d_invariant(forms.xi[j], mla) + double(frame.eps[j]) * wedge_forms(forms.xi[k], forms.xi[l]);
    const MatC rhs = -form_of(endo_of(VecC(op * frame.bivectors.col(j)), g), gc);
    worst = std::max(worst, max_abs(MatC(lhs - rhs)));
  }
  return worst;
}

KillingStructure build_killing_structure(const MetricLieAlgebra<QSqrt3>& mla) {
  if (mla.dim() != 4) throw Error(ErrorCode::WrongDimension, "the Killing structure is built in dimension four");
  const Mat<QSqrt3> f = mla.ad[0].bottomRightCorner(3, 3);
  if (einstein_case(f).tag != EinsteinCase::Tag::TracelessCube)
    throw Error(ErrorCode::InvalidArgument, "ad u on V must be traceless with nonzero square and trace-free square");
  const QSqrt3 det = determinant(f);
  std::optional<Rational> p;
  if (det.is_rational()) p = exact_cbrt(det.rational_part());
  if (!p) throw Error(ErrorCode::InvalidArgument, "det F is not the cube of a rational number");

  const QSqrt3i pc{QSqrt3(*p)};
  const QSqrt3i q(QSqrt3(Rational(-1) / 2), QSqrt3(Rational(0), Rational(1) / 2));
  const std::array<QSqrt3i, 3> roots = {pc, pc * q, pc * q.conj()};
  const Mat<QSqrt3i> gram = mla.g.gram().template cast<QSqrt3i>();
  const Mat<QSqrt3i> fc = f.template cast<QSqrt3i>();

  KillingStructure ks;
  ks.w = Vec<QSqrt3i>::Constant(4, QSqrt3i(0));
  ks.w(0) = pc * pc * pc;
  ks.gamma = (ks.w.transpose() * gram * ks.w).value();
  for (int j = 0; j < 3; ++j) {
    const Mat<QSqrt3i> k = kernel(Mat<QSqrt3i>(fc - roots[j] * Mat<QSqrt3i>::Identity(3, 3)));
    if (k.cols() != 1) throw Error(ErrorCode::NotDiagonalizable, "eigenspace of F is not one-dimensional");
    Vec<QSqrt3i> x = Vec<QSqrt3i>::Constant(4, QSqrt3i(0));
    x.tail(3) = k.col(0);
    const QSqrt3i norm = (x.transpose() * gram * x).value();
    if (norm.is_zero()) throw Error(ErrorCode::NullEigenvectorNorm, "eigenvector of F is g-null");
    const auto c = exact_sqrt(ks.gamma / norm);
    if (!c) throw Error(ErrorCode::InvalidArgument, "scaling constant is not in Q(sqrt 3, i)");
    ks.v[j] = *c * x;
    const Vec<QSqrt3i> b = mla.bracket<QSqrt3i>(ks.w, ks.v[j]);
    for (int i = 0; i < 4; ++i)
      if (!ks.v[j](i).is_zero()) {
        ks.rho[j] = b(i) / ks.v[j](i);
        break;
      }
  }
  return ks;
}

KillingDefects killing_relations(const KillingStructure& ks, const MetricLieAlgebra<QSqrt3>& mla) {
  const Mat<QSqrt3i> gram = mla.g.gram().template cast<QSqrt3i>();
  auto inner = [&](const Vec<QSqrt3i>& x, const Vec<QSqrt3i>& y) { return QSqrt3i((x.transpose() * gram * y).value()); };
  KillingDefects d;
  double dev = 0.0;
  auto track = [&](const QSqrt3i& z) {
    dev = std::max(dev, std::abs(z.to_complex()));
    return z.is_zero();
  };
  bool ok_inner = track(inner(ks.w, ks.w) - ks.gamma);
  bool ok_br = true;
  for (int j = 0; j < 3; ++j) {
    ok_inner = track(inner(ks.v[j], ks.v[j]) - ks.gamma) && ok_inner;
    ok_inner = track(inner(ks.w, ks.v[j])) && ok_inner;
    for (int k = j + 1; k < 3; ++k) ok_inner = track(inner(ks.v[j], ks.v[k])) && ok_inner;
    const Vec<QSqrt3i> b = mla.bracket<QSqrt3i>(ks.w, ks.v[j]) - ks.rho[j] * ks.v[j];
    for (int i = 0; i < 4; ++i) ok_br = track(b(i)) && ok_br;
    for (int k = 0; k < 3; ++k) {
      const Vec<QSqrt3i> c = mla.bracket<QSqrt3i>(ks.v[j], ks.v[k]);
      for (int i = 0; i < 4; ++i) ok_br = track(c(i)) && ok_br;
    }
  }
  bool ok_cube = !ks.gamma.is_zero();
  const QSqrt3i g2 = ks.gamma * ks.gamma;
  for (int j = 0; j < 3; ++j) {
    ok_cube = track(ks.rho[j] * ks.rho[j] * ks.rho[j] - g2) && ok_cube;
    for (int k = j + 1; k < 3; ++k) ok_cube = ok_cube && ks.rho[j] != ks.rho[k];
  }
  d.inner_products = ok_inner;
  d.brackets = ok_br;
  d.cube_roots = ok_cube;
  d.max_float_deviation = dev;
  return d;
}

std::vector<IdentityRow> verify_frame_identities(const ModelAnalysis& a, const OrthoEigenFrame& frame,
                                                 const ConnectionOneForms& forms, const WeylDiagonalData& data,
                                                 const DivergenceResult& div, double tol) {
  const MetricLieAlgebra<double>& mla = a.mla;
  const MatR gr = mla.g.gram();
  const MatC g = to_complex_matrix(gr);
  const MatC ginv = to_complex_matrix(inverse(gr));
  const int n = mla.dim();
  const double s = a.summary.scalar;
  const auto& lam = data.lambda;
  const auto& eps = frame.eps;
  const auto& xi = forms.xi;
  const VecC& w = div.w;

  auto ip = [&](const VecC& x, const VecC& y) { return bilinear(x, g, y); };
  auto bracket = [&](const VecC& x, const VecC& y) { return VecC(mla.bracket<cplx>(x, y)); };

  std::array<VecC, 3> v;
  for (int j = 0; j < 3; ++j) v[j] = frame.endo[j] * w;
  MatC p(n, n);
  for (int b = 0; b < n; ++b) p.col(b) = to_complex_matrix(a.conn.gamma[b]) * w;
  const MatC pstar = ginv * p.transpose() * g;
  const cplx ww = ip(w, w);

  std::vector<IdentityRow> rows;
  auto add = [&](const std::string& name, double dev, double ref, std::string note = "") {
    rows.push_back({name, dev, dev <= tol * (1.0 + ref), std::move(note)});
  };
  auto skip = [&](const std::string& name) { rows.push_back({name, 0.0, true, "skipped: W+ is parallel"}); };

  double lmax = 0.0;
  for (const cplx& l : lam) lmax = std::max(lmax, std::abs(l));
  const double wmax = max_abs(w);
  const double amax = std::max({max_abs(frame.endo[0]), max_abs(frame.endo[1]), max_abs(frame.endo[2])});
  const double pmax = max_abs(p);
  const double ximax = max_abs_vec(xi);

  {
    double dev = 0.0;
    for (int j = 0; j < 3; ++j) {
      dev = std::max(dev, std::abs(ip(w, v[j])));
      for (int k = 0; k < 3; ++k)
        dev = std::max(dev, std::abs(ip(v[j], v[k]) - (j == k ? double(eps[j]) * ww : cplx(0.0))));
    }
    add("Eq13a_inner_products", dev, std::abs(ww) * amax * amax);
  }
  {
    double dev = 0.0;
    for (int j = 0; j < 3; ++j) {
      const int k = cyc1(j), l = cyc2(j);
      dev = std::max(dev, max_abs(VecC(frame.endo[j] * v[k] - double(eps[l]) * v[l])));
      dev = std::max(dev, max_abs(VecC(frame.endo[k] * v[j] + double(eps[l]) * v[l])));
      dev = std::max(dev, max_abs(VecC(frame.endo[j] * v[j] + double(eps[j]) * w)));
    }
    add("Eq13b_frame_action", dev, wmax * amax * amax);
  }
  std::array<MatC, 3> pj;
  for (int j = 0; j < 3; ++j) pj[j] = frame.endo[j] * p + pstar * frame.endo[j];
  {
    double dev = 0.0;
    for (int j = 0; j < 3; ++j) {
      const int k = cyc1(j), l = cyc2(j);
      const MatC dv = d_invariant(VecC(g * v[j]), mla);
      const MatC rhs = double(eps[j]) * wedge_forms(xi[l], VecC(g * v[k])) -
                       double(eps[j]) * wedge_forms(xi[k], VecC(g * v[l])) + form_of(pj[j], g);
      dev = std::max(dev, max_abs(MatC(dv - rhs)));
    }
    add("Eq17_dv_structure", dev, (ximax + pmax) * wmax * amax * (1.0 + max_abs(g)));
  }
  add("Eq8a_dw", max_abs(MatC(d_invariant(VecC(g * w), mla) - form_of(MatC(p - pstar), g))), pmax * max_abs(g));
  add("Eq8f_pstar_w", max_abs(VecC(pstar * w)), pmax * wmax);
  {
    double dev = 0.0;
    for (int j = 0; j < 3; ++j) {
      const int k = cyc1(j), l = cyc2(j);
      dev = std::max(dev, max_abs(VecC(v[j] - (lam[l] - lam[k]) * (ginv * xi[j]))));
    }
    add("proof_a_v_from_xi", dev, wmax * amax + lmax * ximax * max_abs(ginv));
  }
  const cplx phi = (lam[0] - lam[1]) * (lam[1] - lam[2]) * (lam[2] - lam[0]);
  {
    double dev = 0.0;
    for (int j = 0; j < 3; ++j) {
      const int k = cyc1(j), l = cyc2(j);
      dev = std::max(dev, std::abs((lam[j] - lam[k]) * (lam[k] - lam[l]) * (lam[l] - lam[j]) - phi));
    }
    add("Eq19_phi", dev, lmax * lmax * lmax, "phi=[" + num(phi.real()) + ", " + num(phi.imag()) + "]");
  }
  {
    double dev = 0.0;
    for (int j = 0; j < 3; ++j) {
      const int k = cyc1(j), l = cyc2(j);
      const MatC lhs = (lam[j] - lam[k]) * (lam[j] - lam[l]) * pj[j] +
                       2.0 * double(eps[j]) * (lam[k] - lam[l]) * wedge_endo(v[k], v[l], g);
      const MatC rhs = -(lam[j] + s / 12.0) * phi * frame.endo[j];
      dev = std::max(dev, max_abs(MatC(lhs - rhs)));
    }
    add("Eq20i_Pj", dev, lmax * lmax * (pmax * amax + wmax * wmax * amax * amax) + (lmax + std::abs(s)) * std::abs(phi) * amax);
  }
  const cplx divw = p.trace();
  {
    double dev = 0.0;
    for (int j = 0; j < 3; ++j) {
      const int k = cyc1(j), l = cyc2(j);
      const cplx lhs = (lam[j] - lam[k]) * (lam[j] - lam[l]) * divw + 2.0 * (lam[k] - lam[l]) * ww;
      dev = std::max(dev, std::abs(lhs + (2.0 * lam[j] + s / 6.0) * phi));
    }
    add("Eq20ii_div_w", dev, lmax * lmax * pmax + lmax * std::abs(ww) + (lmax + std::abs(s)) * std::abs(phi));
  }
  const double phi_scale = 1.0 + lmax * lmax * lmax;
  const bool phi_zero = std::abs(phi) <= tol * phi_scale;
  rows.push_back({"Eq21_phi_iff_parallel", phi_zero == a.parallel_w ? 0.0 : std::abs(phi), phi_zero == a.parallel_w,
                  std::string("phi_zero=") + (phi_zero ? "true" : "false") + " parallel=" + (a.parallel_w ? "true" : "false")});

  if (a.parallel_w) {
    for (const char* name : {"Eq22_distinct_lambda", "Eq23i_nabla_vj_w", "Eq23ii_div_w", "Eq23iii_scalar_zero",
                             "proof_lambda_cubed", "Eq24i_rotation", "Eq24ii_difference", "Eq24iii_bracket_w_vj",
                             "Eq24iv_bracket_vj_vk", "proof_nabla_w_w", "Eq18_inner_products", "Eq18_brackets",
                             "Eq18_cube_roots"})
      skip(name);
    return rows;
  }

  double gap = INFINITY;
  for (int j = 0; j < 3; ++j) gap = std::min(gap, std::abs(lam[j] - lam[cyc1(j)]));
  const bool distinct = gap > tol * (1.0 + lmax);
  rows.push_back({"Eq22_distinct_lambda", distinct ? 0.0 : 1.0, distinct, "min_gap=" + num(gap)});
  {
    double dev = 0.0;
    for (int j = 0; j < 3; ++j) {
      const int k = cyc1(j), l = cyc2(j);
      dev = std::max(dev, max_abs(VecC(p * v[j] - lam[j] * (lam[k] - lam[l]) * v[j])));
    }
    add("Eq23i_nabla_vj_w", dev, (pmax + lmax * lmax) * wmax * amax);
  }
  add("Eq23ii_div_w", std::abs(divw), pmax);
  add("Eq23iii_scalar_zero", std::abs(s), max_abs(a.summary.ricci));
  const cplx gamma = -ww / 3.0;
  {
    double dev = 0.0;
    for (int j = 0; j < 3; ++j) dev = std::max(dev, std::abs(lam[j] * lam[j] * lam[j] + gamma));
    add("proof_lambda_cubed", dev, lmax * lmax * lmax);
  }
  const cplx zplus = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  int sign = 0;
  {
    double dev = 0.0;
    const cplx z = lam[1] / lam[0];
    sign = z.imag() >= 0 ? 1 : -1;
    const cplx zc = sign > 0 ? zplus : std::conj(zplus);
    for (int j = 0; j < 3; ++j) {
      const int k = cyc1(j), l = cyc2(j);
      dev = std::max(dev, std::abs(lam[k] - zc * lam[j]));
      dev = std::max(dev, std::abs(lam[l] - std::conj(zc) * lam[j]));
    }
    add("Eq24i_rotation", dev, lmax, std::string("z_sign=") + (sign > 0 ? "+" : "-"));
  }
  {
    double dev = 0.0;
    for (int j = 0; j < 3; ++j) {
      const int k = cyc1(j), l = cyc2(j);
      dev = std::max(dev, std::abs(lam[k] - lam[l] - double(sign) * kI * std::sqrt(3.0) * lam[j]));
    }
    add("Eq24ii_difference", dev, lmax, std::string("sign=") + (sign > 0 ? "+" : "-"));
  }
  {
    double dev = 0.0;
    for (int j = 0; j < 3; ++j) {
      const int k = cyc1(j), l = cyc2(j);
      dev = std::max(dev, max_abs(VecC(bracket(w, v[j]) - lam[j] * (lam[l] - lam[k]) * v[j])));
    }
    add("Eq24iii_bracket_w_vj", dev, lmax * lmax * wmax * amax);
  }
  {
    double dev = 0.0;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) dev = std::max(dev, max_abs(bracket(v[j], v[k])));
    add("Eq24iv_bracket_vj_vk", dev, wmax * wmax * amax * amax);
  }
  {
    double dev = max_abs(VecC(p * w));
    for (int j = 0; j < 3; ++j) dev = std::max(dev, std::abs((xi[j].transpose() * w).value()));
    add("proof_nabla_w_w", dev, pmax * wmax + ximax * wmax);
  }
  const cplx tw = double(sign) * kI / std::sqrt(3.0);
  const VecC wt = tw * w;
  std::array<VecC, 3> vt;
  for (int j = 0; j < 3; ++j) vt[j] = (eps[j] > 0 ? kI : cplx(1.0)) / std::sqrt(3.0) * v[j];
  {
    double dev = std::abs(ip(wt, wt) - gamma);
    for (int j = 0; j < 3; ++j) {
      dev = std::max(dev, std::abs(ip(vt[j], vt[j]) - gamma));
      dev = std::max(dev, std::abs(ip(wt, vt[j])));
      for (int k = j + 1; k < 3; ++k) dev = std::max(dev, std::abs(ip(vt[j], vt[k])));
    }
    add("Eq18_inner_products", dev, std::abs(gamma) * amax * amax);
  }
  {
    double dev = 0.0;
    for (int j = 0; j < 3; ++j) {
      dev = std::max(dev, max_abs(VecC(bracket(wt, vt[j]) - lam[j] * lam[j] * vt[j])));
      for (int k = 0; k < 3; ++k) dev = std::max(dev, max_abs(bracket(vt[j], vt[k])));
    }
    add("Eq18_brackets", dev, lmax * lmax * wmax * amax);
  }
  {
    double dev = 0.0;
    for (int j = 0; j < 3; ++j) {
      const cplx rho = lam[j] * lam[j];
      dev = std::max(dev, std::abs(rho * rho * rho - gamma * gamma));
    }
    add("Eq18_cube_roots", dev, std::abs(gamma * gamma));
  }
  return rows;
}

RealFormWitness extract_real_form(const KillingStructure& ks, const MetricLieAlgebra<QSqrt3>& mla,
                                  const Mat<QSqrt3>& x_basis) {
  using MatQ = Mat<QSqrt3>;
  using MatQi = Mat<QSqrt3i>;
  if (x_basis.rows() != 4 || x_basis.cols() != 4 || rank(x_basis) != 4)
    throw Error(ErrorCode::NotARealForm, "the real form must be spanned by four independent vectors");
  const MatQ gram = mla.g.gram();

  RealFormWitness r;
  MatQi z(4, 4);
  z.col(0) = ks.w;
  for (int j = 0; j < 3; ++j) z.col(j + 1) = ks.v[j];
  r.psi = inverse(z).topRows(1);

  const MatQi psi_x = r.psi * x_basis.template cast<QSqrt3i>();
  MatQ re_im(2, 4);
  for (int i = 0; i < 4; ++i) {
    re_im(0, i) = psi_x(0, i).real();
    re_im(1, i) = psi_x(0, i).imag();
  }
  const MatQ coeffs = kernel(re_im);
  if (coeffs.cols() != 3) throw Error(ErrorCode::NotARealForm, "X intersected with ker psi is not three-dimensional");
  r.V = x_basis * coeffs;

  if (!ks.gamma.is_real()) throw Error(ErrorCode::GammaNotReal, "gamma = g(w, w) is not real");
  r.gamma = ks.gamma.real();
  r.delta = r.gamma.sign();
  const auto root = exact_sqrt(abs(r.gamma));
  if (!root) throw Error(ErrorCode::InvalidArgument, "|gamma| has no square root in Q(sqrt 3)");

  const MatQi wx = solve(MatQi(x_basis.template cast<QSqrt3i>()), MatQi(ks.w));
  Vec<QSqrt3> w_real(4);
  for (int i = 0; i < 4; ++i) {
    if (!wx(i, 0).is_real()) throw Error(ErrorCode::NotARealForm, "w does not lie in X");
    w_real(i) = wx(i, 0).real();
  }
  r.u = x_basis * w_real / *root;

  const MatQ adu = mla.ad_of<QSqrt3>(r.u);
  const MatQ image = adu * r.V;
  r.F = solve(MatQ(r.V.transpose() * r.V), MatQ(r.V.transpose() * image));
  const MatQ residual = image - r.V * r.F;
  for (Eigen::Index i = 0; i < residual.size(); ++i)
    if (!residual(i).is_zero()) throw Error(ErrorCode::NotARealForm, "V is not invariant under ad u");
  r.v_form = r.V.transpose() * gram * r.V;

  const QSqrt3 det = determinant(r.F);
  std::optional<Rational> p;
  if (det.is_rational()) p = exact_cbrt(det.rational_part());
  if (!p) throw Error(ErrorCode::InvalidArgument, "det F is not the cube of a rational number");
  r.p = QSqrt3(*p);
  r.roots_match = trace(r.F).is_zero() && trace(MatQ(r.F * r.F)).is_zero() && !r.p.is_zero();

  const MatQ zeta_k = kernel(MatQ(r.F - r.p * MatQ::Identity(3, 3)));
  if (zeta_k.cols() != 1) throw Error(ErrorCode::NotARealForm, "the real root of F is not simple");
  const MatR vf = to_real_matrix(r.v_form);
  VecR zeta = to_real_matrix(zeta_k).col(0);
  const double zz = (zeta.transpose() * vf * zeta).value();
  r.pm_sign = zz > 0 ? 1 : -1;
  zeta /= std::sqrt(std::abs(zz));
  r.zeta = to_complex_matrix(zeta);

  const double pd = r.p.to_double();
  const cplx q = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const MatC fd = to_complex_matrix(r.F);
  VecC x = null_vectors(MatC(fd - pd * q * MatC::Identity(3, 3)), 1).col(0);
  const MatC vfc = to_complex_matrix(vf);
  const cplx g0 = bilinear(x, vfc, x);
  x *= std::polar(1.0, 0.5 * (std::numbers::pi / 4.0 - std::arg(g0)));
  const cplx gx = bilinear(x, vfc, x);
  r.xi = x.real().cast<cplx>();
  r.eta = x.imag().cast<cplx>();
  r.c = std::sqrt(kI * gx / 2.0);
  r.c_relation_defect = std::abs(2.0 * std::conj(r.c) * std::conj(r.c) + gx);

  MatR basis(3, 3);
  basis.col(0) = x.real();
  basis.col(1) = x.imag();
  basis.col(2) = zeta;
  const double ca = r.c.real(), cb = r.c.imag();
  MatR images(3, 3);
  images << ca, cb, 0.0, cb, -ca, 0.0, 0.0, 0.0, 1.0;
  r.identification = images * inverse(basis);
  const MatR tinv = inverse(r.identification);
  const MatR transported_form = tinv.transpose() * vf * tinv;
  const MatR transported_f = r.identification * to_real_matrix(r.F) * tinv;
  r.form_defect = max_abs(MatR(transported_form - standard_inner_product<double>(r.pm_sign).gram()));
  r.operator_defect = max_abs(MatR(transported_f - diagonalizable_F<double>(pd)));
  return r;
}

}  // namespace curvhom
