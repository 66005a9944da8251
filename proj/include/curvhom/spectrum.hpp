#pragma once

#include "curvhom/linalg.hpp"

#include <vector>

namespace curvhom {

struct Eigenvalue {
  cplx value;
  int algebraic = 0;
  int geometric = 0;
};

/// Eigenvalues with multiplicities, sorted by (|mu| descending, arg ascending).
struct ComplexSpectrum {
  std::vector<Eigenvalue> eigenvalues;
  bool diagonalizable = true;

  int dim() const;
  /// Every eigenvalue repeated by algebraic multiplicity, in the stored order.
  std::vector<cplx> multiset() const;
};

/// Relative radius within which computed eigenvalues are merged into one cluster.
inline constexpr double kClusterRadius = 1e-4;

ComplexSpectrum complex_spectrum(const MatC& m, double tol = kTol);
bool is_complex_diagonalizable(const MatR& b, double tol = kTol);

/// Deterministic ordering used by complex_spectrum.
bool spectral_order(const cplx& a, const cplx& b);

/// Largest distance between two eigenvalue multisets under optimal matching (dim <= 6).
double multiset_distance(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace curvhom
