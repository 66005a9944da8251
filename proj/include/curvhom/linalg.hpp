#pragma once

#include "curvhom/errors.hpp"
#include "curvhom/scalar.hpp"

#include <Eigen/Core>

#include <string>
#include <utility>
#include <vector>

namespace curvhom {

/// Global comparison tolerance for floating-point checks.
inline constexpr double kTol = 1e-9;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using MatR = Mat<double>;
using MatC = Mat<cplx>;
using VecR = Vec<double>;
using VecC = Vec<cplx>;

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  double r = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) r = std::max(r, magnitude<S>(m(i, j)));
  return r;
}

template <class Derived>
auto to_complex_matrix(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  MatC out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = to_complex<S>(m(i, j));
  return out;
}

template <class Derived>
MatR to_real_matrix(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  MatR out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = to_complex<S>(m(i, j)).real();
  return out;
}

template <class S>
Mat<S> convert_matrix(const MatR& m) {
  Mat<S> out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = ScalarTraits<S>::from_double(m(i, j));
  return out;
}

/// Reduced row-echelon form with the pivot columns that were accepted.
template <class S>
struct RowEchelon {
  Mat<S> reduced;
  std::vector<int> pivot_cols;
  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

/// Gauss-Jordan elimination. A column entry counts as zero when its magnitude is at most
/// rel_tol times the max-abs of the input; exact scalars compare against zero exactly.
template <class Derived>
RowEchelon<typename Derived::Scalar> row_reduce(const Eigen::MatrixBase<Derived>& a,
                                                double rel_tol = kTol) {
  using S = typename Derived::Scalar;
  RowEchelon<S> out;
  out.reduced = a;
  Mat<S>& m = out.reduced;
  const double threshold = rel_tol * max_abs(a);
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index best = -1;
    double best_mag = -1.0;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (is_negligible(m(r, col), threshold)) continue;
      double mag = magnitude<S>(m(r, col));
      if (mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
    if (best < 0) {
      for (Eigen::Index r = row; r < m.rows(); ++r) m(r, col) = S(0);
      continue;
    }
    if (best != row) m.row(best).swap(m.row(row));
    S pivot = m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) = m(row, c) / pivot;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      S f = m(r, col);
      if (f == S(0)) continue;
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) = m(r, c) - f * m(row, c);
    }
    out.pivot_cols.push_back(static_cast<int>(col));
    ++row;
  }
  return out;
}

template <class Derived>
int rank(const Eigen::MatrixBase<Derived>& a, double rel_tol = kTol) {
  return row_reduce(a, rel_tol).rank();
}

/// Basis of the right kernel as matrix columns.
template <class Derived>
Mat<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& a, double rel_tol = kTol) {
  using S = typename Derived::Scalar;
  auto ech = row_reduce(a, rel_tol);
  const Eigen::Index n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (int c : ech.pivot_cols) is_pivot[c] = true;
  Mat<S> basis(n, n - ech.rank());
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec<S> v = Vec<S>::Constant(n, S(0));
    v(free) = S(1);
    for (int r = 0; r < ech.rank(); ++r) v(ech.pivot_cols[r]) = -ech.reduced(r, free);
    basis.col(k++) = v;
  }
  return basis;
}

/// Solves a x = b for square nonsingular a.
template <class DA, class DB>
Mat<typename DA::Scalar> solve(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                               double rel_tol = 1e-13) {
  using S = typename DA::Scalar;
  if (a.rows() != a.cols() || b.rows() != a.rows())
    throw Error(ErrorCode::DimensionMismatch, "solve expects a square system");
  const Eigen::Index n = a.rows();
  Mat<S> aug(n, n + b.cols());
  aug << a, b;
  // scale the threshold by the coefficient block only
  const double threshold = rel_tol * max_abs(a);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index best = -1;
    double best_mag = -1.0;
    for (Eigen::Index r = col; r < n; ++r) {
      if (is_negligible(aug(r, col), threshold)) continue;
      double mag = magnitude<S>(aug(r, col));
      if (mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
    if (best < 0) throw Error(ErrorCode::SingularMatrix, "solve: matrix is singular");
    if (best != col) aug.row(best).swap(aug.row(col));
    S pivot = aug(col, col);
    for (Eigen::Index c = col; c < aug.cols(); ++c) aug(col, c) = aug(col, c) / pivot;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col) continue;
      S f = aug(r, col);
      if (f == S(0)) continue;
      for (Eigen::Index c = col; c < aug.cols(); ++c) aug(r, c) = aug(r, c) - f * aug(col, c);
    }
  }
  return aug.rightCols(b.cols());
}

template <class Derived>
Mat<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& a) {
  using S = typename Derived::Scalar;
  return solve(a, Mat<S>::Identity(a.rows(), a.cols()));
}

template <class Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& a) {
  using S = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  Mat<S> m = a;
  const Eigen::Index n = m.rows();
  S det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index best = -1;
    double best_mag = -1.0;
    for (Eigen::Index r = col; r < n; ++r) {
      if (m(r, col) == S(0)) continue;
      double mag = magnitude<S>(m(r, col));
      if (mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
    if (best < 0) return S(0);
    if (best != col) {
      m.row(best).swap(m.row(col));
      det = -det;
    }
    det = det * m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      S f = m(r, col) / m(col, col);
      if (f == S(0)) continue;
      for (Eigen::Index c = col; c < n; ++c) m(r, c) = m(r, c) - f * m(col, c);
    }
  }
  return det;
}

template <class Derived>
typename Derived::Scalar trace(const Eigen::MatrixBase<Derived>& a) {
  typename Derived::Scalar t(0);
  for (Eigen::Index i = 0; i < a.rows(); ++i) t = t + a(i, i);
  return t;
}

/// Ordered inertia signs, minus first.
struct SignPattern {
  std::vector<int> signs;

  int negatives() const;
  int size() const { return static_cast<int>(signs.size()); }
  std::string str() const;
  bool operator==(const SignPattern& o) const { return signs == o.signs; }
  bool operator!=(const SignPattern& o) const { return signs != o.signs; }

  static SignPattern parse(const std::string& s);
  bool is_riemannian() const { return negatives() == 0; }
  bool is_lorentzian() const { return size() == 4 && negatives() == 1; }
  bool is_neutral() const { return size() == 4 && negatives() == 2; }
  /// One of the three admissible four-dimensional patterns.
  bool is_canonical_4d() const { return size() == 4 && negatives() <= 2; }
};

namespace detail {

template <class S>
int real_sign(const S& x) {
  if constexpr (std::is_same_v<S, QSqrt3>)
    return x.sign();
  else
    return (x > 0) - (x < 0);
}

}  // namespace detail

/// Sylvester inertia of a symmetric matrix by symmetric congruence elimination.
template <class S>
SignPattern inertia(const Mat<S>& gram, double rel_tol = kTol) {
  const Eigen::Index n = gram.rows();
  Mat<S> a = gram;
  const double threshold = rel_tol * max_abs(gram);
  SignPattern out;
  auto swap_index = [&](Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    a.row(i).swap(a.row(j));
    a.col(i).swap(a.col(j));
  };
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index best = -1;
    double best_mag = -1.0;
    for (Eigen::Index i = k; i < n; ++i) {
      if (is_negligible(a(i, i), threshold)) continue;
      double mag = magnitude<S>(a(i, i));
      if (mag > best_mag) {
        best = i;
        best_mag = mag;
      }
    }
    if (best < 0) {
      Eigen::Index bi = -1, bj = -1;
      best_mag = -1.0;
      for (Eigen::Index i = k; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
          if (is_negligible(a(i, j), threshold)) continue;
          double mag = magnitude<S>(a(i, j));
          if (mag > best_mag) {
            bi = i;
            bj = j;
            best_mag = mag;
          }
        }
      if (bi < 0) throw Error(ErrorCode::DegenerateForm, "symmetric form is degenerate");
      a.row(bi) += a.row(bj);
      a.col(bi) += a.col(bj);
      best = bi;
    }
    swap_index(best, k);
    const S pivot = a(k, k);
    out.signs.push_back(detail::real_sign(pivot));
    for (Eigen::Index r = k + 1; r < n; ++r) {
      S f = a(r, k) / pivot;
      if (f == S(0)) continue;
      a.row(r) -= f * a.row(k);
      a.col(r) -= f * a.col(k);
    }
  }
  std::sort(out.signs.begin(), out.signs.end());
  return out;
}

/// Nondegenerate symmetric bilinear form given by its Gram matrix.
template <class S>
class SymBilinearForm {
public:
  SymBilinearForm() = default;
  explicit SymBilinearForm(Mat<S> gram) : gram_(std::move(gram)) {
    if (gram_.rows() != gram_.cols())
      throw Error(ErrorCode::DimensionMismatch, "Gram matrix must be square");
    for (Eigen::Index i = 0; i < gram_.rows(); ++i)
      for (Eigen::Index j = i + 1; j < gram_.cols(); ++j)
        if (gram_(i, j) != gram_(j, i))
          throw Error(ErrorCode::InvalidArgument, "Gram matrix must be symmetric");
    signature_ = inertia(gram_);
  }

  int dim() const { return static_cast<int>(gram_.rows()); }
  const Mat<S>& gram() const { return gram_; }
  const SignPattern& signature() const { return signature_; }

  template <class DX, class DY>
  auto operator()(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) const {
    return (x.transpose() * gram_.template cast<typename DX::Scalar>() * y).value();
  }

private:
  Mat<S> gram_;
  SignPattern signature_;
};

template <class S>
const SignPattern& signature_of(const SymBilinearForm<S>& form) {
  return form.signature();
}

/// Max deviation of <F e_i, e_j> - <e_i, F e_j> over basis pairs.
template <class S>
double self_adjoint_defect(const Mat<S>& f, const SymBilinearForm<S>& form) {
  if (f.rows() != f.cols() || f.rows() != form.dim())
    throw Error(ErrorCode::DimensionMismatch, "operator and form dimensions differ");
  Mat<S> d = f.transpose() * form.gram() - form.gram() * f;
  return max_abs(d);
}

template <class S>
bool is_self_adjoint(const Mat<S>& f, const SymBilinearForm<S>& form, double tol = kTol) {
  const double d = self_adjoint_defect(f, form);
  if constexpr (ScalarTraits<S>::exact)
    return d == 0.0;
  else
    return d <= tol;
}

}  // namespace curvhom
