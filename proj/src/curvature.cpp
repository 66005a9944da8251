#include "curvhom/curvature.hpp"

namespace curvhom {

double sectional_curvature(const CurvatureTensor<double>& r, const MetricLieAlgebra<double>& mla, const VecR& x,
                           const VecR& y, double tol) {
  const double gxx = mla.inner(x, x), gyy = mla.inner(y, y), gxy = mla.inner(x, y);
  const double den = gxx * gyy - gxy * gxy;
  if (std::abs(den) <= tol * x.squaredNorm() * y.squaredNorm() * std::max(1.0, max_abs(mla.g.gram())))
    throw Error(ErrorCode::DegeneratePlane, "plane is degenerate for the metric");
  const VecR rxyx = r.endo_of(x, y) * x;
  return mla.inner(rxyx, y) / den;
}

}  // namespace curvhom
