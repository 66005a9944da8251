#pragma once

#include "curvhom/petrov.hpp"

#include <array>
#include <functional>
#include <vector>

namespace curvhom {

/// Q(A) = sum_k (-A)^k / (k+1)!, the operator version of (1 - e^{-z}) / z. At least `order` terms are
/// summed; summation continues while terms are still significant.
MatR q_of_operator(const MatR& a, int order = 30);

/// exp(A) by scaling and squaring of the Taylor series.
MatR expm_series(const MatR& a);

/// Ad v = [v, .] on the algebra, in the basis (u, e1, e2, e3).
inline MatR ad_operator(const MetricLieAlgebra<double>& mla, const VecR& v) { return mla.ad_of<double>(v); }

struct FlowResult {
  VecR endpoint;              ///< (x1, x2, x3, t)
  int steps = 0;              ///< RK4 steps of the accepted refinement
  double error_estimate = 0;  ///< max-abs difference of the last two refinements
};

/// Integral curve of the field of v from y up to time T. RK4 with the step count doubled until two
/// successive refinements agree to `tol`; the returned endpoint is Richardson-extrapolated.
FlowResult flow(const ManifoldModel& model, const VecR& v, const VecR& y, double T = 1.0, double tol = 1e-11);

/// RK4 with a fixed number of steps; smooth in (v, y), which finite differences rely on.
VecR flow_fixed(const ManifoldModel& model, const VecR& v, const VecR& y, double T, int steps = 256);

/// Exact flow of the affine field through the exponential of the augmented matrix [[J, b], [0, 0]].
VecR flow_closed_form(const ManifoldModel& model, const VecR& v, const VecR& y, double T);

/// Rows (tau, x1, x2, x3, t) at `samples` + 1 equally spaced times in [0, T].
std::vector<std::array<double, 5>> flow_trajectory(const ManifoldModel& model, const VecR& v, const VecR& y,
                                                   double T, int samples);

/// E(v): the flow of v from y at time one.
FlowResult exp_map(const ManifoldModel& model, const VecR& y, const VecR& v);

/// Max over t in {1/4, 1/2, 3/4} of |E(t v) - flow(v, y, t)|.
double exp_homogeneity(const ManifoldModel& model, const VecR& y, const VecR& v);

struct DifferentialCheck {
  VecR finite_difference;
  VecR formula;  ///< field of Q(Ad v) dir evaluated at E(v)
  double deviation = 0.0;
};

DifferentialCheck differential_check(const ManifoldModel& model, const MetricLieAlgebra<double>& mla, const VecR& y,
                                     const VecR& v, const VecR& dir, double h = 1e-5);

/// v -> Q(Ad v)^{-1} w; the evaluator throws SingularQ when Ad v has an eigenvalue in 2 pi i Z \ {0}.
std::function<VecR(const VecR&)> pullback_field(const MetricLieAlgebra<double>& mla, const VecR& w);

/// |dE_v(pullback(v)) - w(E(v))| with dE_v by central differences.
double pullback_relatedness(const ManifoldModel& model, const MetricLieAlgebra<double>& mla, const VecR& y,
                            const VecR& w, const VecR& v, double h = 1e-5);

/// Field commuting with the whole algebra, equal to the algebra field of zeta at y; its value at E(v)
/// is the field of exp(-Ad v) zeta.
VecR commutant_field(const ManifoldModel& model, const MetricLieAlgebra<double>& mla, const VecR& y,
                     const VecR& zeta, const VecR& v);

/// Metric coefficients in the chart at a point: E^{-T} G E^{-1} with E the evaluation matrix.
MatR metric_in_chart(const ManifoldModel& model, const MatR& gram, const VecR& point);

struct CommutantCheck {
  double killing_deviation = 0.0;  ///< max |L_Y g| over commutant basis fields and sample points
  double bracket_deviation = 0.0;  ///< max |[x, Y]| over algebra elements x (real and imaginary parts)
  double negative_control = 0.0;   ///< max |L_u g| for the algebra field of u
  int points = 0;
};

/// Lie derivatives of the metric along commutant fields at `points` sample points E(v_k) (v_k seeded
/// uniform in [-1/2, 1/2]^4), and brackets of those fields with the algebra basis and with `extra`.
CommutantCheck commutant_killing_check(const ManifoldModel& model, const MetricLieAlgebra<double>& mla,
                                       const VecR& y, const std::vector<VecC>& extra = {}, unsigned seed = 0,
                                       int points = 10);

/// |(d_t a_s - d_s a_t) - [a_s, a_t]| for x(s, t) = E(t (v0 + s v1)), where a_s, a_t are the velocities
/// expressed in the algebra frame; mixed central differences with step h.
double jacobi_mixed_check(const ManifoldModel& model, const MetricLieAlgebra<double>& mla, const VecR& y,
                          const VecR& v0, const VecR& v1, double s, double t, double h = 1e-4);

}  // namespace curvhom
