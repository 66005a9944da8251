#pragma once

#include "curvhom/bivector.hpp"
#include "curvhom/spectrum.hpp"

#include <string>
#include <utility>
#include <vector>

namespace curvhom {

enum class PatternKind { CubeRootTriple, MultipleEigenvalue, AllEqual, Other };

std::string pattern_name(PatternKind k);

struct EigenPattern {
  cplx lambda{0.0, 0.0};
  PatternKind kind = PatternKind::Other;
};

/// Recognizes the spectrum {l, l q, l q^2} (q a primitive cube root of unity) and multiplicity patterns
/// of a traceless 3x3 operator. Tolerances are relative to the largest eigenvalue modulus.
EigenPattern eigen_pattern(const ComplexSpectrum& spec, double tol = 1e-8);

enum class ClassCase {
  ConstantCurvature,
  LocallySymmetricProduct,
  PetrovRicciFlatLorentz,
  PetrovRicciFlatNeutral,
  RiemannianLocallySymmetric,
  Flat,
  NotCDiagonalizable,
  OutOfScope
};

std::string case_name(ClassCase c);

struct ClassificationResult {
  ClassCase kase = ClassCase::OutOfScope;
  std::vector<std::pair<std::string, std::string>> evidence;
};

/// Decision table over algebraic invariants of an Einstein four-manifold.
ClassificationResult classify(const SignPattern& signature, bool einstein, bool cdiag, bool parallel_w,
                              const EigenPattern& pattern, bool ricci_flat);

/// max(|l1 + l2 + l3|, |L1 + L2 + L3|) with L_j = (l_k - l_l)(l_j + s/12) over cyclic (j, k, l).
double weyl_trace_identities(const cplx& l1, const cplx& l2, const cplx& l3, double s);

/// Everything computed from a four-dimensional metric Lie algebra once an orientation is fixed.
struct ModelAnalysis {
  MetricLieAlgebra<double> mla;
  FrameConnection<double> conn;
  CurvatureTensor<double> r;
  CurvatureSummary<double> summary;
  NablaR<double> nabla;
  MatR op;                     ///< curvature operator on bivectors
  std::vector<MatR> nabla_w;   ///< nabla_{X_e} W on bivectors, e = 0..3
  BivectorSpace space;
  HodgeStar star;
  SelfDualSplit split;
  WeylDecomposition weyl;
  ComplexE e;
  ComplexSpectrum op_spectrum;
  ComplexSpectrum w_plus_spectrum;
  bool cdiag = false;
  double nabla_w_plus = 0.0;   ///< max-abs of nabla W restricted to E
  bool parallel_w = false;
  bool ricci_flat = false;
  double scale = 1.0;          ///< reference magnitude for relative thresholds
};

ModelAnalysis analyze(const MetricLieAlgebra<double>& mla, int orientation = 1, double tol = kTol);

/// Curvature-level classification of an analyzed model; evidence also reports the spectra.
ClassificationResult classify_model(const ModelAnalysis& a);

}  // namespace curvhom
