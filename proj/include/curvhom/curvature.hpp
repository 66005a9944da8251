#pragma once

#include "curvhom/petrov.hpp"

#include <vector>

namespace curvhom {

/// gamma[a] is the endomorphism X_b -> nabla_{X_a} X_b, so gamma[a](c, b) = Gamma^c_{ab}.
template <class S>
struct FrameConnection {
  std::vector<Mat<S>> gamma;

  int dim() const { return static_cast<int>(gamma.size()); }
  /// nabla_x as an endomorphism of the algebra.
  template <class T>
  Mat<T> along(const Vec<T>& x) const {
    Mat<T> m = Mat<T>::Zero(dim(), dim());
    for (int a = 0; a < dim(); ++a)
      if (x(a) != T(0)) m += x(a) * gamma[a].template cast<T>();
    return m;
  }
};

template <class S>
Mat<S> inverse_metric(const SymBilinearForm<S>& g) {
  try {
    return inverse(g.gram());
  } catch (const Error&) {
    throw Error(ErrorCode::DegenerateMetric, "metric Gram matrix is singular");
  }
}

/// Koszul formula for left-invariant fields with constant metric coefficients.
template <class S>
FrameConnection<S> levi_civita(const MetricLieAlgebra<S>& mla) {
  const int n = mla.dim();
  const Mat<S>& g = mla.g.gram();
  const Mat<S> ginv = inverse_metric(mla.g);
  const S half = S(1) / S(2);
  FrameConnection<S> conn;
  conn.gamma.assign(n, Mat<S>::Zero(n, n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Vec<S> lowered = Vec<S>::Zero(n);
      for (int z = 0; z < n; ++z) {
        S acc(0);
        for (int d = 0; d < n; ++d) {
          acc += mla.c(d, a, b) * g(d, z);
          acc -= mla.c(d, b, z) * g(d, a);
          acc += mla.c(d, z, a) * g(d, b);
        }
        lowered(z) = half * acc;
      }
      conn.gamma[a].col(b) = ginv * lowered;
    }
  return conn;
}

/// Max of |Gamma^c_{ab} - Gamma^c_{ba} - c^c_{ab}|.
template <class S>
double torsion_defect(const FrameConnection<S>& conn, const MetricLieAlgebra<S>& mla) {
  double worst = 0.0;
  for (int a = 0; a < mla.dim(); ++a)
    for (int b = 0; b < mla.dim(); ++b)
      worst = std::max(worst, max_abs(Vec<S>(conn.gamma[a].col(b) - conn.gamma[b].col(a) - mla.ad[a].col(b))));
  return worst;
}

/// Max of |Gamma_{abc} + Gamma_{acb}| with Gamma_{abc} = g(nabla_a X_b, X_c).
template <class S>
double metric_defect(const FrameConnection<S>& conn, const MetricLieAlgebra<S>& mla) {
  double worst = 0.0;
  for (int a = 0; a < mla.dim(); ++a) {
    Mat<S> low = mla.g.gram() * conn.gamma[a];
    worst = std::max(worst, max_abs(Mat<S>(low + low.transpose())));
  }
  return worst;
}

/// Curvature stored as endomorphisms R(X_a, X_b), with R(u,v) = nabla_v nabla_u - nabla_u nabla_v + nabla_[u,v].
template <class S>
struct CurvatureTensor {
  int n = 0;
  std::vector<Mat<S>> op;
  Mat<S> gram;

  const Mat<S>& endo(int a, int b) const { return op[a * n + b]; }
  /// R_{abcd} = g(R(X_a, X_b) X_c, X_d).
  S lowered(int a, int b, int c, int d) const {
    S acc(0);
    const Mat<S>& r = endo(a, b);
    for (int e = 0; e < n; ++e) acc += r(e, c) * gram(e, d);
    return acc;
  }
  /// R(x, y) for arbitrary vectors.
  template <class T>
  Mat<T> endo_of(const Vec<T>& x, const Vec<T>& y) const {
    Mat<T> m = Mat<T>::Zero(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        T w = x(a) * y(b);
        if (w != T(0)) m += w * endo(a, b).template cast<T>();
      }
    return m;
  }
  double max_abs_value() const {
    double worst = 0.0;
    for (const auto& m : op) worst = std::max(worst, max_abs(m));
    return worst;
  }
};

template <class S>
CurvatureTensor<S> curvature_tensor(const FrameConnection<S>& conn, const MetricLieAlgebra<S>& mla) {
  const int n = mla.dim();
  CurvatureTensor<S> r;
  r.n = n;
  r.gram = mla.g.gram();
  r.op.reserve(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Mat<S> m = conn.gamma[b] * conn.gamma[a] - conn.gamma[a] * conn.gamma[b];
      for (int k = 0; k < n; ++k)
        if (mla.c(k, a, b) != S(0)) m += mla.c(k, a, b) * conn.gamma[k];
      r.op.push_back(std::move(m));
    }
  return r;
}

struct SymmetryDefects {
  double antisym_ab = 0.0;
  double antisym_cd = 0.0;
  double pair = 0.0;
  double bianchi = 0.0;
  double max() const { return std::max({antisym_ab, antisym_cd, pair, bianchi}); }
};

template <class S>
SymmetryDefects symmetry_defects(const CurvatureTensor<S>& r) {
  SymmetryDefects d;
  const int n = r.n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int e = 0; e < n; ++e) {
          const S x = r.lowered(a, b, c, e);
          d.antisym_ab = std::max(d.antisym_ab, magnitude(S(x + r.lowered(b, a, c, e))));
          d.antisym_cd = std::max(d.antisym_cd, magnitude(S(x + r.lowered(a, b, e, c))));
          d.pair = std::max(d.pair, magnitude(S(x - r.lowered(c, e, a, b))));
          d.bianchi = std::max(d.bianchi, magnitude(S(x + r.lowered(b, c, a, e) + r.lowered(c, a, b, e))));
        }
  return d;
}

template <class S>
struct CurvatureSummary {
  Mat<S> ricci;
  S scalar = S(0);
  bool einstein = false;
  double einstein_defect = 0.0;
};

template <class S>
CurvatureSummary<S> ricci_scalar(const CurvatureTensor<S>& r, const MetricLieAlgebra<S>& mla, double tol = kTol) {
  const int n = r.n;
  CurvatureSummary<S> out;
  out.ricci = Mat<S>::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out.ricci.row(a) += r.endo(a, b).row(b);
  const Mat<S> ginv = inverse_metric(mla.g);
  S s(0);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) s += ginv(a, c) * out.ricci(a, c);
  out.scalar = s;
  out.einstein_defect = max_abs(Mat<S>(out.ricci - (s / S(n)) * mla.g.gram()));
  if constexpr (ScalarTraits<S>::exact)
    out.einstein = out.einstein_defect == 0.0;
  else
    out.einstein = out.einstein_defect <= tol * (1.0 + max_abs(out.ricci));
  return out;
}

/// Covariant derivative of R; entry (e*n + a)*n + b holds (nabla_{X_e} R)(X_a, X_b).
template <class S>
struct NablaR {
  int n = 0;
  std::vector<Mat<S>> op;
  Mat<S> gram;
  bool locally_symmetric = false;
  double max_abs_value = 0.0;

  const Mat<S>& endo(int e, int a, int b) const { return op[(e * n + a) * n + b]; }
  S lowered(int e, int a, int b, int c, int d) const {
    S acc(0);
    const Mat<S>& m = endo(e, a, b);
    for (int k = 0; k < n; ++k) acc += m(k, c) * gram(k, d);
    return acc;
  }
  double max_abs_lowered() const {
    double worst = 0.0;
    for (const auto& m : op) worst = std::max(worst, max_abs(Mat<S>(gram * m)));
    return worst;
  }
};

template <class S>
NablaR<S> nabla_R(const FrameConnection<S>& conn, const CurvatureTensor<S>& r, const MetricLieAlgebra<S>& mla,
                  double tol = kTol) {
  const int n = r.n;
  NablaR<S> out;
  out.n = n;
  out.gram = mla.g.gram();
  for (int e = 0; e < n; ++e) {
    const Mat<S>& ge = conn.gamma[e];
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Mat<S> m = ge * r.endo(a, b) - r.endo(a, b) * ge;
        for (int k = 0; k < n; ++k) {
          if (ge(k, a) != S(0)) m -= ge(k, a) * r.endo(k, b);
          if (ge(k, b) != S(0)) m -= ge(k, b) * r.endo(a, k);
        }
        out.max_abs_value = std::max(out.max_abs_value, max_abs(m));
        out.op.push_back(std::move(m));
      }
  }
  if constexpr (ScalarTraits<S>::exact)
    out.locally_symmetric = out.max_abs_value == 0.0;
  else
    out.locally_symmetric = out.max_abs_value <= tol * (1.0 + r.max_abs_value());
  return out;
}

/// K = g(R(x,y)x, y) / (g(x,x) g(y,y) - g(x,y)^2).
double sectional_curvature(const CurvatureTensor<double>& r, const MetricLieAlgebra<double>& mla, const VecR& x,
                           const VecR& y, double tol = kTol);

namespace closed_form {

template <class S>
FrameConnection<S> connection(const PetrovData<S>& d) {
  const int n = d.n();
  const Mat<S> fg = d.F.transpose() * d.v_form.gram();  // (j,k) -> <F e_j, e_k>
  FrameConnection<S> conn;
  conn.gamma.assign(n, Mat<S>::Zero(n, n));
  for (int j = 1; j < n; ++j) {
    conn.gamma[j].block(1, 0, n - 1, 1) = -d.F.col(j - 1);
    for (int k = 1; k < n; ++k) conn.gamma[j](0, k) = S(d.delta) * fg(j - 1, k - 1);
  }
  return conn;
}

template <class S>
CurvatureTensor<S> curvature(const PetrovData<S>& d) {
  const int n = d.n();
  const S delta(d.delta);
  const Mat<S>& gv = d.v_form.gram();
  const Mat<S> f2 = d.F * d.F;
  const Mat<S> f2g = f2.transpose() * gv;    // <F^2 e_j, e_k>
  const Mat<S> fg = d.F.transpose() * gv;    // <F e_j, e_k>
  CurvatureTensor<S> r;
  r.n = n;
  r.gram = Mat<S>::Zero(n, n);
  r.gram(0, 0) = delta;
  r.gram.bottomRightCorner(n - 1, n - 1) = gv;
  r.op.assign(n * n, Mat<S>::Zero(n, n));
  for (int j = 1; j < n; ++j) {
    Mat<S> m = Mat<S>::Zero(n, n);
    m.block(1, 0, n - 1, 1) = -f2.col(j - 1);                                   // R(u,v)u = -F^2 v
    for (int k = 1; k < n; ++k) m(0, k) = delta * f2g(j - 1, k - 1);            // R(u,w)v = delta <F^2 w, v> u
    r.op[0 * n + j] = m;
    r.op[j * n + 0] = -m;
  }
  for (int j = 1; j < n; ++j)
    for (int k = 1; k < n; ++k) {
      Mat<S> m = Mat<S>::Zero(n, n);
      // R(v,v')w = delta <F v', w> F v - delta <F v, w> F v'
      for (int w = 1; w < n; ++w)
        m.block(1, w, n - 1, 1) = delta * fg(k - 1, w - 1) * d.F.col(j - 1) - delta * fg(j - 1, w - 1) * d.F.col(k - 1);
      r.op[j * n + k] = m;
    }
  return r;
}

template <class S>
Mat<S> ricci(const PetrovData<S>& d) {
  const int n = d.n();
  Mat<S> ric = Mat<S>::Zero(n, n);
  ric(0, 0) = -trace(Mat<S>(d.F * d.F));
  ric.bottomRightCorner(n - 1, n - 1) = -S(d.delta) * trace(d.F) * Mat<S>(d.F.transpose() * d.v_form.gram());
  return ric;
}

/// delta (nabla_w R)(u, v) v' for w, v, v' in V, as a vector of V.
template <class S>
Vec<S> nabla_r_uvv(const PetrovData<S>& d, const Vec<S>& w, const Vec<S>& v, const Vec<S>& vp) {
  const Mat<S>& gv = d.v_form.gram();
  const Mat<S> f = d.F;
  const Mat<S> f2 = f * f;
  auto ip = [&](const Vec<S>& x, const Vec<S>& y) { return S((x.transpose() * gv * y).value()); };
  return -ip(f2 * v, vp) * (f * w) + ip(f * v, vp) * (f2 * w) - ip(f2 * w, vp) * (f * v) + ip(f * w, vp) * (f2 * v);
}

}  // namespace closed_form

template <class S>
double connection_distance(const FrameConnection<S>& a, const FrameConnection<S>& b) {
  double worst = 0.0;
  for (int i = 0; i < a.dim(); ++i) worst = std::max(worst, max_abs(Mat<S>(a.gamma[i] - b.gamma[i])));
  return worst;
}

template <class S>
double curvature_distance(const CurvatureTensor<S>& a, const CurvatureTensor<S>& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.op.size(); ++i) worst = std::max(worst, max_abs(Mat<S>(a.op[i] - b.op[i])));
  return worst;
}

}  // namespace curvhom
