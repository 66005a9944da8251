#include "curvhom/petrov.hpp"

namespace curvhom {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Diagonalizable: return "diag";
    case Variant::NonDiagonalizable: return "nondiag";
    case Variant::Scalar: return "scalar";
    case Variant::Nilpotent: return "nilpotent";
    case Variant::Abelian: return "abelian";
  }
  return "unknown";
}

Variant parse_variant(const std::string& s) {
  if (s == "diag") return Variant::Diagonalizable;
  if (s == "nondiag") return Variant::NonDiagonalizable;
  if (s == "scalar") return Variant::Scalar;
  if (s == "nilpotent") return Variant::Nilpotent;
  if (s == "abelian") return Variant::Abelian;
  throw Error(ErrorCode::InvalidArgument, "unknown variant '" + s + "'");
}

std::string form_name(FormKind f) { return f == FormKind::Standard ? "standard" : "euclidean"; }

FormKind parse_form(const std::string& s) {
  if (s == "standard") return FormKind::Standard;
  if (s == "euclidean") return FormKind::Euclidean;
  throw Error(ErrorCode::InvalidArgument, "unknown form '" + s + "'");
}

std::string EinsteinCase::name() const {
  switch (tag) {
    case Tag::ScalarMultiple: return "scalar_multiple";
    case Tag::Nilpotent: return "nilpotent";
    case Tag::TracelessCube: return "traceless_cube";
    case Tag::NotEinstein: return "not_einstein";
  }
  return "unknown";
}

ManifoldModel build_manifold_model(const PetrovData<double>& data) { return ManifoldModel{data.F}; }

MatR ManifoldModel::field_jacobian(const VecR& v) const {
  const int n = dim();
  if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "algebra element has wrong length");
  MatR j = MatR::Zero(n, n);
  j.topLeftCorner(n - 1, n - 1) = -v(0) * F;
  j(n - 1, n - 1) = v(0);
  return j;
}

VecR ManifoldModel::field(const VecR& v, const VecR& y) const {
  const int n = dim();
  if (y.size() != n) throw Error(ErrorCode::DimensionMismatch, "chart point has wrong length");
  VecR out = field_jacobian(v) * y;
  out.head(n - 1) += v.tail(n - 1);
  return out;
}

MatR ManifoldModel::evaluation(const VecR& y) const {
  const int n = dim();
  MatR e(n, n);
  for (int i = 0; i < n; ++i) e.col(i) = field(VecR::Unit(n, i), y);
  return e;
}

double bracket_oracle(const ManifoldModel& model, const MetricLieAlgebra<double>& mla, const VecR& a,
                      const VecR& b, const std::vector<VecR>& points) {
  const MatR ja = model.field_jacobian(a);
  const MatR jb = model.field_jacobian(b);
  const VecR ab = mla.bracket(a, b);
  double worst = 0.0;
  for (const VecR& y : points) {
    VecR lhs = jb * model.field(a, y) - ja * model.field(b, y);
    worst = std::max(worst, max_abs(VecR(lhs - model.field(ab, y))));
  }
  return worst;
}

std::vector<VecR> sample_chart_points(int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  std::uniform_real_distribution<double> time(0.5, 2.0);
  std::vector<VecR> pts;
  for (int k = 0; k < count; ++k) {
    VecR y(4);
    y << box(rng), box(rng), box(rng), time(rng);
    pts.push_back(y);
  }
  return pts;
}

}  // namespace curvhom
