#pragma once

#include "curvhom/linalg.hpp"

#include <random>
#include <string>
#include <vector>

namespace curvhom {

enum class Variant { Diagonalizable, NonDiagonalizable, Scalar, Nilpotent, Abelian };
enum class FormKind { Standard, Euclidean };

std::string variant_name(Variant v);
Variant parse_variant(const std::string& s);
std::string form_name(FormKind f);
FormKind parse_form(const std::string& s);

struct ModelFamilyParams {
  double p = 1.0;
  int pm_sign = 1;
  int delta = 1;
  Variant variant = Variant::Diagonalizable;
  FormKind form = FormKind::Standard;
};

/// Data (V, <,>, F, delta) from which the four-dimensional algebra is assembled.
template <class S>
struct PetrovData {
  SymBilinearForm<S> v_form;
  Mat<S> F;
  int delta = 1;
  std::vector<std::string> labels;

  int n() const { return static_cast<int>(F.rows()) + 1; }
};

template <class S>
SymBilinearForm<S> standard_inner_product(int pm_sign) {
  if (pm_sign != 1 && pm_sign != -1) throw Error(ErrorCode::InvalidArgument, "pm_sign must be +1 or -1");
  Mat<S> g = Mat<S>::Zero(3, 3);
  g(0, 1) = S(1);
  g(1, 0) = S(1);
  g(2, 2) = S(pm_sign);
  return SymBilinearForm<S>(g);
}

template <class S>
SymBilinearForm<S> euclidean_inner_product(int dim = 3) {
  return SymBilinearForm<S>(Mat<S>::Identity(dim, dim));
}

/// p times the rotation by 120 degrees on span(e1, e2), plus p on e3.
template <class S>
Mat<S> diagonalizable_F(const S& p) {
  if (p == S(0)) throw Error(ErrorCode::ZeroParameter, "p must be nonzero");
  const S half = S(1) / S(2);
  const S s = ScalarTraits<S>::sqrt3() / S(2);
  Mat<S> f = Mat<S>::Zero(3, 3);
  f(0, 0) = -half * p;
  f(0, 1) = -s * p;
  f(1, 0) = s * p;
  f(1, 1) = -half * p;
  f(2, 2) = p;
  return f;
}

/// e1 -> e3, e2 -> 0, e3 -> pm_sign * e2.
template <class S>
Mat<S> nondiagonalizable_F(int pm_sign) {
  if (pm_sign != 1 && pm_sign != -1) throw Error(ErrorCode::InvalidArgument, "pm_sign must be +1 or -1");
  Mat<S> f = Mat<S>::Zero(3, 3);
  f(2, 0) = S(1);
  f(1, 2) = S(pm_sign);
  return f;
}

/// p times the map e2 -> e1 (square zero).
template <class S>
Mat<S> nilpotent_F(const S& p) {
  if (p == S(0)) throw Error(ErrorCode::ZeroParameter, "p must be nonzero");
  Mat<S> f = Mat<S>::Zero(3, 3);
  f(0, 1) = p;
  return f;
}

template <class S>
PetrovData<S> make_petrov_data(SymBilinearForm<S> form, Mat<S> f, int delta) {
  if (delta != 1 && delta != -1) throw Error(ErrorCode::InvalidArgument, "delta must be +1 or -1");
  if (f.rows() != f.cols() || f.rows() != form.dim())
    throw Error(ErrorCode::DimensionMismatch, "F and the form on V must have the same dimension");
  if (!is_self_adjoint(f, form))
    throw Error(ErrorCode::NotSelfAdjoint, "F is not self-adjoint for the form on V");
  PetrovData<S> d;
  d.v_form = std::move(form);
  d.F = std::move(f);
  d.delta = delta;
  d.labels = {"u"};
  for (int i = 1; i < d.n(); ++i) d.labels.push_back("e" + std::to_string(i));
  return d;
}

template <class S>
PetrovData<S> family_model(const ModelFamilyParams& params) {
  const S p = ScalarTraits<S>::from_double(params.p);
  SymBilinearForm<S> form = params.form == FormKind::Standard ? standard_inner_product<S>(params.pm_sign)
                                                              : euclidean_inner_product<S>();
  Mat<S> f;
  switch (params.variant) {
    case Variant::Diagonalizable: f = diagonalizable_F<S>(p); break;
    case Variant::NonDiagonalizable: f = nondiagonalizable_F<S>(params.pm_sign); break;
    case Variant::Scalar:
      if (p == S(0)) throw Error(ErrorCode::ZeroParameter, "p must be nonzero");
      f = p * Mat<S>::Identity(3, 3);
      break;
    case Variant::Nilpotent: f = nilpotent_F<S>(p); break;
    case Variant::Abelian: f = Mat<S>::Zero(3, 3); break;
  }
  return make_petrov_data(std::move(form), std::move(f), params.delta);
}

struct EinsteinCase {
  enum class Tag { ScalarMultiple, Nilpotent, TracelessCube, NotEinstein };
  Tag tag = Tag::NotEinstein;
  double lambda = 0.0;

  std::string name() const;
};

/// Sorts F into the three Einstein cases; thresholds scale with max-abs(F).
template <class S>
EinsteinCase einstein_case(const Mat<S>& f, double tol = kTol) {
  const Eigen::Index n = f.rows();
  const double scale = max_abs(f);
  const S lambda = f(0, 0);
  EinsteinCase out;
  const double off = max_abs(Mat<S>(f - lambda * Mat<S>::Identity(n, n)));
  if (ScalarTraits<S>::exact ? off == 0.0 : off <= tol * scale) {
    out.tag = EinsteinCase::Tag::ScalarMultiple;
    out.lambda = to_complex(lambda).real();
    return out;
  }
  const Mat<S> f2 = f * f;
  const double tr1 = magnitude(trace(f));
  const double tr2 = magnitude(trace(f2));
  const double f2_mag = max_abs(f2);
  if constexpr (ScalarTraits<S>::exact) {
    if (tr1 == 0.0 && tr2 == 0.0) out.tag = f2_mag == 0.0 ? EinsteinCase::Tag::Nilpotent : EinsteinCase::Tag::TracelessCube;
  } else {
    const double t1 = tol * scale, t2 = tol * scale * scale * static_cast<double>(n);
    if (tr1 <= t1 && tr2 <= t2)
      out.tag = f2_mag <= t2 ? EinsteinCase::Tag::Nilpotent : EinsteinCase::Tag::TracelessCube;
  }
  return out;
}

/// Metric Lie algebra with ad[i](k, j) = c^k_{ij}, i.e. [X_i, X_j] = c^k_{ij} X_k.
template <class S>
struct MetricLieAlgebra {
  std::vector<Mat<S>> ad;
  SymBilinearForm<S> g;
  std::vector<std::string> labels;

  int dim() const { return g.dim(); }
  const S& c(int k, int i, int j) const { return ad[i](k, j); }

  template <class T>
  Mat<T> ad_of(const Vec<T>& x) const {
    Mat<T> m = Mat<T>::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i)
      if (x(i) != T(0)) m += x(i) * ad[i].template cast<T>();
    return m;
  }

  template <class T>
  Vec<T> bracket(const Vec<T>& x, const Vec<T>& y) const {
    return ad_of(x) * y;
  }

  template <class T>
  T inner(const Vec<T>& x, const Vec<T>& y) const {
    return (x.transpose() * g.gram().template cast<T>() * y).value();
  }

  /// Max-abs of [X_i,[X_j,X_k]] + cyclic over all basis triples.
  double jacobi_defect() const {
    const int n = dim();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Vec<S> jac = ad[i] * ad[j].col(k) + ad[j] * ad[k].col(i) + ad[k] * ad[i].col(j);
          worst = std::max(worst, max_abs(jac));
        }
    return worst;
  }

  double antisymmetry_defect() const {
    double worst = 0.0;
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j)
        worst = std::max(worst, max_abs(Vec<S>(ad[i].col(j) + ad[j].col(i))));
    return worst;
  }
};

template <class S>
MetricLieAlgebra<S> make_metric_lie_algebra(std::vector<Mat<S>> ad, SymBilinearForm<S> g,
                                            std::vector<std::string> labels = {}) {
  MetricLieAlgebra<S> m;
  m.ad = std::move(ad);
  m.g = std::move(g);
  if (static_cast<int>(m.ad.size()) != m.g.dim())
    throw Error(ErrorCode::DimensionMismatch, "structure constants and metric dimension differ");
  if (labels.empty())
    for (int i = 0; i < m.g.dim(); ++i) labels.push_back("X" + std::to_string(i));
  m.labels = std::move(labels);
  if constexpr (ScalarTraits<S>::exact) {
    if (m.antisymmetry_defect() != 0.0) throw Error(ErrorCode::InvalidArgument, "bracket not antisymmetric");
  }
  return m;
}

/// Assembles [u, v] = F v, [v, v'] = 0, g(u,u) = delta, g(u,V) = 0, g|V = form.
template <class S>
MetricLieAlgebra<S> build_metric_lie_algebra(const PetrovData<S>& data) {
  if (!is_self_adjoint(data.F, data.v_form))
    throw Error(ErrorCode::NotSelfAdjoint, "F is not self-adjoint for the form on V");
  const int n = data.n();
  std::vector<Mat<S>> ad(n, Mat<S>::Zero(n, n));
  ad[0].bottomRightCorner(n - 1, n - 1) = data.F;
  for (int j = 1; j < n; ++j) ad[j].block(1, 0, n - 1, 1) = -data.F.col(j - 1);
  Mat<S> gram = Mat<S>::Zero(n, n);
  gram(0, 0) = S(data.delta);
  gram.bottomRightCorner(n - 1, n - 1) = data.v_form.gram();
  SymBilinearForm<S> g(gram);
  if (n == 4 && !g.signature().is_canonical_4d())
    throw Error(ErrorCode::ExcludedSignPattern,
                "metric signature " + g.signature().str() + " is not one of -+++, --++, ++++");
  return make_metric_lie_algebra(std::move(ad), std::move(g), data.labels);
}

/// The chart V x (0, inf) on which u(x,t) = (-F x, t) and v in V is the constant field (v, 0).
struct ManifoldModel {
  MatR F;

  int dim() const { return static_cast<int>(F.rows()) + 1; }
  /// Linear part of the affine field of the algebra element v = (a, v_V).
  MatR field_jacobian(const VecR& v) const;
  /// Value at y = (x, t) of the field of the algebra element v.
  VecR field(const VecR& v, const VecR& y) const;
  /// Matrix whose columns are the basis fields evaluated at y.
  MatR evaluation(const VecR& y) const;
};

ManifoldModel build_manifold_model(const PetrovData<double>& data);

/// Max deviation of d_a b - d_b a from the field of the algebraic bracket [a, b] over the points.
double bracket_oracle(const ManifoldModel& model, const MetricLieAlgebra<double>& mla, const VecR& a,
                      const VecR& b, const std::vector<VecR>& points);

/// Uniform samples from x in [-1,1]^3, t in [1/2, 2].
std::vector<VecR> sample_chart_points(int count, std::mt19937_64& rng);

}  // namespace curvhom
