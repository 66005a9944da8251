#include "curvhom/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace curvhom {

int ComplexSpectrum::dim() const {
  int n = 0;
  for (const auto& e : eigenvalues) n += e.algebraic;
  return n;
}

std::vector<cplx> ComplexSpectrum::multiset() const {
  std::vector<cplx> out;
  for (const auto& e : eigenvalues)
    for (int k = 0; k < e.algebraic; ++k) out.push_back(e.value);
  return out;
}

namespace {

double principal_arg(const cplx& z) {
  double a = std::arg(z);
  if (a <= -M_PI + 1e-12) a = M_PI;
  return a;
}

}  // namespace

bool spectral_order(const cplx& a, const cplx& b) {
  const double ma = std::abs(a), mb = std::abs(b);
  const double eps = 1e-9 * std::max({1.0, ma, mb});
  if (std::abs(ma - mb) > eps) return ma > mb;
  return principal_arg(a) < principal_arg(b);
}

ComplexSpectrum complex_spectrum(const MatC& m, double tol) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "spectrum of non-square matrix");
  ComplexSpectrum out;
  const Eigen::Index n = m.rows();
  if (n == 0) return out;
  const double scale = max_abs(m);
  if (scale == 0.0) {
    out.eigenvalues.push_back({cplx(0.0, 0.0), static_cast<int>(n), static_cast<int>(n)});
    return out;
  }

  Eigen::ComplexEigenSolver<MatC> solver(m, false);
  const VecC ev = solver.eigenvalues();

  // single-linkage clustering of nearby roots
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  const double radius = kClusterRadius * scale;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(ev(i) - ev(j)) <= radius) parent[find(static_cast<int>(i))] = find(static_cast<int>(j));

  std::vector<std::vector<int>> clusters;
  std::vector<int> slot(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(clusters.size());
      clusters.emplace_back();
    }
    clusters[slot[r]].push_back(i);
  }

  for (const auto& c : clusters) {
    cplx mu(0.0, 0.0);
    for (int i : c) mu += ev(i);
    mu /= static_cast<double>(c.size());
    if (std::abs(mu.imag()) <= 1e-14 * scale) mu.imag(0.0);
    if (std::abs(mu.real()) <= 1e-14 * scale) mu.real(0.0);
    MatC shifted = m - mu * MatC::Identity(n, n);
    int geometric = static_cast<int>(n) - rank(shifted, tol);
    Eigenvalue e{mu, static_cast<int>(c.size()), std::clamp(geometric, 1, static_cast<int>(c.size()))};
    out.eigenvalues.push_back(e);
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
            [](const Eigenvalue& a, const Eigenvalue& b) { return spectral_order(a.value, b.value); });
  out.diagonalizable = std::all_of(out.eigenvalues.begin(), out.eigenvalues.end(),
                                   [](const Eigenvalue& e) { return e.algebraic == e.geometric; });
  return out;
}

bool is_complex_diagonalizable(const MatR& b, double tol) {
  return complex_spectrum(to_complex_matrix(b), tol).diagonalizable;
}

double multiset_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<int> perm(b.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace curvhom
