#include "curvhom/classifier.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace curvhom {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string num(const cplx& z) { return "[" + num(z.real()) + ", " + num(z.imag()) + "]"; }

std::string flag(bool b) { return b ? "true" : "false"; }

std::string spectrum_string(const ComplexSpectrum& s) {
  std::string out = "[";
  bool first = true;
  for (const auto& ev : s.eigenvalues) {
    for (int k = 0; k < ev.algebraic; ++k) {
      if (!first) out += ", ";
      out += num(ev.value);
      first = false;
    }
  }
  return out + "]";
}

}  // namespace

std::string pattern_name(PatternKind k) {
  switch (k) {
    case PatternKind::CubeRootTriple: return "cube_root_triple";
    case PatternKind::MultipleEigenvalue: return "multiple_eigenvalue";
    case PatternKind::AllEqual: return "all_equal";
    case PatternKind::Other: return "other";
  }
  return "unknown";
}

std::string case_name(ClassCase c) {
  switch (c) {
    case ClassCase::ConstantCurvature: return "constant_curvature";
    case ClassCase::LocallySymmetricProduct: return "locally_symmetric_product";
    case ClassCase::PetrovRicciFlatLorentz: return "petrov_ricci_flat_lorentz";
    case ClassCase::PetrovRicciFlatNeutral: return "petrov_ricci_flat_neutral";
    case ClassCase::RiemannianLocallySymmetric: return "riemannian_locally_symmetric";
    case ClassCase::Flat: return "flat";
    case ClassCase::NotCDiagonalizable: return "not_cdiagonalizable";
    case ClassCase::OutOfScope: return "out_of_scope";
  }
  return "unknown";
}

EigenPattern eigen_pattern(const ComplexSpectrum& spec, double tol) {
  if (spec.dim() != 3) throw Error(ErrorCode::DimensionMismatch, "eigen_pattern expects a three-dimensional spectrum");
  const std::vector<cplx> ms = spec.multiset();
  double scale = 0.0;
  cplx sum = 0.0;
  for (const cplx& z : ms) {
    scale = std::max(scale, std::abs(z));
    sum += z;
  }
  if (std::abs(sum) > tol * scale)
    throw Error(ErrorCode::TraceNotZero, "eigenvalues do not sum to zero (|sum| = " + num(std::abs(sum)) + ")");

  EigenPattern out;
  if (spec.eigenvalues.size() == 1) {
    out.kind = PatternKind::AllEqual;
    out.lambda = spec.eigenvalues[0].value;
    return out;
  }
  if (spec.eigenvalues.size() == 2) {
    out.kind = PatternKind::MultipleEigenvalue;
    out.lambda = spec.eigenvalues[0].algebraic > 1 ? spec.eigenvalues[0].value : spec.eigenvalues[1].value;
    return out;
  }
  const cplx q = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  bool found = false;
  for (const cplx& z : ms) {
    if (std::abs(z) <= tol * scale) continue;
    if (multiset_distance({z, z * q, z * std::conj(q)}, ms) > tol * scale) continue;
    const double tilt = std::abs(z.imag()) / std::abs(z);
    const double best_tilt = found ? std::abs(out.lambda.imag()) / std::abs(out.lambda) : 0.0;
    if (!found || tilt < best_tilt - 1e-12 || (std::abs(tilt - best_tilt) <= 1e-12 && z.real() > out.lambda.real())) {
      out.lambda = z;
      found = true;
    }
  }
  out.kind = found ? PatternKind::CubeRootTriple : PatternKind::Other;
  if (!found) out.lambda = 0.0;
  return out;
}

ClassificationResult classify(const SignPattern& signature, bool einstein, bool cdiag, bool parallel_w,
                              const EigenPattern& pattern, bool ricci_flat) {
  ClassificationResult res;
  res.evidence = {{"signature", signature.str()},       {"einstein", flag(einstein)},
                  {"cdiag", flag(cdiag)},               {"parallel_w", flag(parallel_w)},
                  {"eigen_pattern", pattern_name(pattern.kind)}, {"ricci_flat", flag(ricci_flat)}};
  auto inconsistent = [&](const std::string& why) {
    throw Error(ErrorCode::InconsistentEvidence, why + " (signature " + signature.str() + ", pattern " +
                                                     pattern_name(pattern.kind) + ")");
  };
  auto done = [&](ClassCase c) {
    res.kase = c;
    return res;
  };

  if (!einstein || !signature.is_canonical_4d()) return done(ClassCase::OutOfScope);
  if (!cdiag) return done(ClassCase::NotCDiagonalizable);
  if (!parallel_w && pattern.kind == PatternKind::AllEqual)
    inconsistent("a scalar self-dual Weyl operator cannot fail to be parallel");

  if (signature.is_riemannian()) {
    if (!parallel_w) inconsistent("Riemannian Einstein metric with constant eigenvalues must have parallel W+");
    return done(ClassCase::RiemannianLocallySymmetric);
  }
  const bool petrov_like = pattern.kind == PatternKind::CubeRootTriple && ricci_flat;
  if (signature.is_lorentzian()) {
    if (!parallel_w) {
      if (!petrov_like) inconsistent("non-parallel Weyl tensor without the cube-root Ricci-flat signature");
      return done(ClassCase::PetrovRicciFlatLorentz);
    }
    if (pattern.kind == PatternKind::AllEqual) return done(ricci_flat ? ClassCase::Flat : ClassCase::ConstantCurvature);
    if (pattern.kind == PatternKind::MultipleEigenvalue) return done(ClassCase::LocallySymmetricProduct);
    inconsistent("locally symmetric Lorentzian model with simple Weyl spectrum");
  }
  // neutral
  if (!parallel_w) {
    if (!petrov_like) inconsistent("non-parallel W+ without the cube-root Ricci-flat signature");
    return done(ClassCase::PetrovRicciFlatNeutral);
  }
  return done(ClassCase::OutOfScope);
}

double weyl_trace_identities(const cplx& l1, const cplx& l2, const cplx& l3, double s) {
  const cplx l[3] = {l1, l2, l3};
  cplx lsum = 0.0;
  for (int j = 0; j < 3; ++j) {
    const int k = (j + 1) % 3, m = (j + 2) % 3;
    lsum += (l[k] - l[m]) * (l[j] + s / 12.0);
  }
  return std::max(std::abs(l1 + l2 + l3), std::abs(lsum));
}

ModelAnalysis analyze(const MetricLieAlgebra<double>& mla, int orientation, double tol) {
  ModelAnalysis a;
  a.mla = mla;
  a.conn = levi_civita(mla);
  a.r = curvature_tensor(a.conn, mla);
  a.summary = ricci_scalar(a.r, mla, tol);
  a.nabla = nabla_R(a.conn, a.r, mla, tol);
  a.op = curvature_operator(a.r);
  a.space = bivector_space(mla, orientation);
  a.star = hodge_star(a.space);
  a.split = selfdual_split(a.space, a.star);
  a.weyl = schouten_weyl(a.r, a.summary);
  a.e = build_E(a.split, a.space, a.star, a.weyl.weyl, tol);

  double gamma_scale = 0.0;
  for (const MatR& g : a.conn.gamma) gamma_scale = std::max(gamma_scale, max_abs(g));
  a.scale = 1.0 + max_abs(a.op) * (1.0 + gamma_scale);

  const MatR& g = a.r.gram;
  const MatR gram6 = bivector_gram(g);
  for (int e = 0; e < 4; ++e) {
    MatR form(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        auto [p, q] = kBivectorPairs[i];
        auto [c, d] = kBivectorPairs[j];
        form(i, j) = a.nabla.lowered(e, p, q, c, d);
      }
    const MatR& ge = a.conn.gamma[e];
    const MatR dsigma = -(ge.transpose() * a.weyl.schouten + a.weyl.schouten * ge);
    form -= 0.5 * kulkarni_nomizu_form(g, dsigma);
    a.nabla_w.push_back(solve(gram6, form));
    a.nabla_w_plus = std::max(a.nabla_w_plus, max_abs(restrict_to_E(a.nabla_w.back(), a.e, a.star, tol)));
  }
  a.parallel_w = a.nabla_w_plus <= tol * a.scale;
  a.ricci_flat = max_abs(a.summary.ricci) <= tol * a.scale;

  a.op_spectrum = complex_spectrum(to_complex_matrix(a.op), tol);
  a.w_plus_spectrum = complex_spectrum(a.e.w_plus, tol);
  a.cdiag = a.space.signature.is_lorentzian() ? a.op_spectrum.diagonalizable : a.w_plus_spectrum.diagonalizable;
  return a;
}

ClassificationResult classify_model(const ModelAnalysis& a) {
  const EigenPattern pattern = eigen_pattern(a.w_plus_spectrum);
  ClassificationResult res = classify(a.space.signature, a.summary.einstein, a.cdiag, a.parallel_w, pattern,
                                      a.ricci_flat);
  res.evidence.emplace_back("lambda", num(pattern.lambda));
  res.evidence.emplace_back("w_plus_spectrum", spectrum_string(a.w_plus_spectrum));
  res.evidence.emplace_back("curvature_operator_spectrum", spectrum_string(a.op_spectrum));
  res.evidence.emplace_back("scalar_curvature", num(a.summary.scalar));
  res.evidence.emplace_back("nabla_w_plus_max_abs", num(a.nabla_w_plus));
  if (res.kase == ClassCase::ConstantCurvature || res.kase == ClassCase::Flat) {
    const int n = a.mla.dim();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        try {
          const double k = sectional_curvature(a.r, a.mla, VecR::Unit(n, i), VecR::Unit(n, j));
          res.evidence.emplace_back("sectional_curvature", num(k));
          return res;
        } catch (const Error&) {
        }
      }
  }
  return res;
}

}  // namespace curvhom
