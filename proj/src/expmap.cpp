#include "curvhom/expmap.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <random>

namespace curvhom {

namespace {

constexpr int kFixedSteps = 256;
constexpr int kMaxSteps = 1 << 20;

VecR rk4(const ManifoldModel& model, const VecR& v, const VecR& y, double T, int steps) {
  const MatR j = model.field_jacobian(v);
  VecR b = VecR::Zero(y.size());
  b.head(y.size() - 1) = v.tail(y.size() - 1);
  auto f = [&](const VecR& z) -> VecR { return j * z + b; };
  const double h = T / steps;
  VecR z = y;
  for (int i = 0; i < steps; ++i) {
    const VecR k1 = f(z);
    const VecR k2 = f(z + 0.5 * h * k1);
    const VecR k3 = f(z + 0.5 * h * k2);
    const VecR k4 = f(z + h * k3);
    z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return z;
}

void check_point(const VecR& y) {
  if (!y.allFinite() || y(y.size() - 1) <= 0.0)
    throw Error(ErrorCode::StepFailure, "flow left the chart t > 0");
}

VecR exp_fixed(const ManifoldModel& model, const VecR& y, const VecR& v) { return rk4(model, v, y, 1.0, kFixedSteps); }

/// d E_v along each algebra basis direction, central differences.
MatR exp_differential_fd(const ManifoldModel& model, const VecR& y, const VecR& v, double h) {
  const int n = model.dim();
  MatR d(n, n);
  for (int i = 0; i < n; ++i) {
    const VecR e = VecR::Unit(n, i);
    d.col(i) = (exp_fixed(model, y, VecR(v + h * e)) - exp_fixed(model, y, VecR(v - h * e))) / (2.0 * h);
  }
  return d;
}

/// Lie derivative of the chart metric along a field with value `yv` and chart Jacobian `jy` at `p`.
double lie_derivative_metric(const ManifoldModel& model, const MatR& gram, const VecR& p, const VecR& yv,
                             const MatR& jy, double h) {
  const int n = model.dim();
  const MatR g = metric_in_chart(model, gram, p);
  MatR lie = g * jy + jy.transpose() * g;
  for (int k = 0; k < n; ++k) {
    const VecR e = VecR::Unit(n, k);
    const MatR dg = (metric_in_chart(model, gram, VecR(p + h * e)) - metric_in_chart(model, gram, VecR(p - h * e))) /
                    (2.0 * h);
    lie += yv(k) * dg;
  }
  return max_abs(lie);
}

}  // namespace

MatR q_of_operator(const MatR& a, int order) {
  const Eigen::Index n = a.rows();
  MatR sum = MatR::Identity(n, n);
  MatR term = MatR::Identity(n, n);  // (-A)^k / (k+1)!
  for (int k = 1; k < 400; ++k) {
    term = (-a * term) / double(k + 1);
    sum += term;
    if (k >= order && max_abs(term) <= 1e-17 * (1.0 + max_abs(sum))) break;
  }
  return sum;
}

MatR expm_series(const MatR& a) {
  const Eigen::Index n = a.rows();
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const MatR scaled = a / std::ldexp(1.0, squarings);
  MatR sum = MatR::Identity(n, n);
  MatR term = MatR::Identity(n, n);
  for (int k = 1; k <= 30; ++k) {
    term = (scaled * term) / double(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

FlowResult flow(const ManifoldModel& model, const VecR& v, const VecR& y, double T, double tol) {
  check_point(y);
  int steps = 8;
  VecR coarse = rk4(model, v, y, T, steps);
  while (true) {
    if (steps >= kMaxSteps) throw Error(ErrorCode::StepFailure, "RK4 refinement did not reach the tolerance");
    const VecR fine = rk4(model, v, y, T, 2 * steps);
    steps *= 2;
    const double diff = max_abs(VecR(fine - coarse));
    if (!fine.allFinite()) throw Error(ErrorCode::StepFailure, "flow diverged");
    if (diff <= tol * (1.0 + max_abs(fine))) {
      FlowResult r;
      r.endpoint = fine + (fine - coarse) / 15.0;
      r.steps = steps;
      r.error_estimate = diff;
      check_point(r.endpoint);
      return r;
    }
    coarse = fine;
  }
}

VecR flow_fixed(const ManifoldModel& model, const VecR& v, const VecR& y, double T, int steps) {
  check_point(y);
  VecR out = rk4(model, v, y, T, steps);
  check_point(out);
  return out;
}

VecR flow_closed_form(const ManifoldModel& model, const VecR& v, const VecR& y, double T) {
  const int n = model.dim();
  MatR aug = MatR::Zero(n + 1, n + 1);
  aug.topLeftCorner(n, n) = model.field_jacobian(v);
  aug.block(0, n, n - 1, 1) = v.tail(n - 1);
  VecR start(n + 1);
  start << y, 1.0;
  return (expm_series(MatR(T * aug)) * start).head(n);
}

std::vector<std::array<double, 5>> flow_trajectory(const ManifoldModel& model, const VecR& v, const VecR& y,
                                                   double T, int samples) {
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "trajectory needs at least one interval");
  std::vector<std::array<double, 5>> rows;
  for (int i = 0; i <= samples; ++i) {
    const double tau = T * i / samples;
    const VecR p = i == 0 ? y : flow(model, v, y, tau).endpoint;
    rows.push_back({tau, p(0), p(1), p(2), p(3)});
  }
  return rows;
}

FlowResult exp_map(const ManifoldModel& model, const VecR& y, const VecR& v) { return flow(model, v, y, 1.0); }

double exp_homogeneity(const ManifoldModel& model, const VecR& y, const VecR& v) {
  double worst = 0.0;
  for (double t : {0.25, 0.5, 0.75}) {
    const VecR scaled = exp_map(model, y, VecR(t * v)).endpoint;
    const VecR along = flow(model, v, y, t).endpoint;
    worst = std::max(worst, max_abs(VecR(scaled - along)));
  }
  return worst;
}

DifferentialCheck differential_check(const ManifoldModel& model, const MetricLieAlgebra<double>& mla, const VecR& y,
                                     const VecR& v, const VecR& dir, double h) {
  DifferentialCheck out;
  out.finite_difference =
      (exp_fixed(model, y, VecR(v + h * dir)) - exp_fixed(model, y, VecR(v - h * dir))) / (2.0 * h);
  const VecR end = exp_map(model, y, v).endpoint;
  out.formula = model.field(VecR(q_of_operator(ad_operator(mla, v)) * dir), end);
  out.deviation = max_abs(VecR(out.finite_difference - out.formula));
  return out;
}

std::function<VecR(const VecR&)> pullback_field(const MetricLieAlgebra<double>& mla, const VecR& w) {
  return [mla, w](const VecR& v) -> VecR {
    const MatR ad = ad_operator(mla, v);
    Eigen::EigenSolver<MatR> es(ad, false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const cplx mu = es.eigenvalues()(i);
      const double k = std::round(mu.imag() / (2.0 * std::numbers::pi));
      if (k != 0.0 && std::abs(mu - cplx(0.0, 2.0 * std::numbers::pi * k)) <= 1e-8 * (1.0 + std::abs(mu)))
        throw Error(ErrorCode::SingularQ, "Ad v has an eigenvalue in 2 pi i Z \\ {0}");
    }
    Eigen::FullPivLU<MatR> lu(q_of_operator(ad));
    if (!lu.isInvertible()) throw Error(ErrorCode::SingularQ, "Q(Ad v) is singular");
    return lu.solve(w);
  };
}

double pullback_relatedness(const ManifoldModel& model, const MetricLieAlgebra<double>& mla, const VecR& y,
                            const VecR& w, const VecR& v, double h) {
  const VecR dir = pullback_field(mla, w)(v);
  const VecR fd = (exp_fixed(model, y, VecR(v + h * dir)) - exp_fixed(model, y, VecR(v - h * dir))) / (2.0 * h);
  return max_abs(VecR(fd - model.field(w, exp_map(model, y, v).endpoint)));
}

VecR commutant_field(const ManifoldModel& model, const MetricLieAlgebra<double>& mla, const VecR& y,
                     const VecR& zeta, const VecR& v) {
  const VecR element = expm_series(MatR(-ad_operator(mla, v))) * zeta;
  return model.field(element, exp_fixed(model, y, v));
}

MatR metric_in_chart(const ManifoldModel& model, const MatR& gram, const VecR& point) {
  const MatR einv = inverse(model.evaluation(point));
  return einv.transpose() * gram * einv;
}

CommutantCheck commutant_killing_check(const ManifoldModel& model, const MetricLieAlgebra<double>& mla,
                                       const VecR& y, const std::vector<VecC>& extra, unsigned seed, int points) {
  const int n = model.dim();
  const double h = 1e-5;
  const MatR gram = mla.g.gram();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-0.5, 0.5);

  std::vector<VecR> partners;
  for (int i = 0; i < n; ++i) partners.push_back(VecR::Unit(n, i));
  for (const VecC& z : extra) {
    partners.push_back(z.real());
    partners.push_back(z.imag());
  }

  CommutantCheck out;
  out.points = points;
  const VecR u = VecR::Unit(n, 0);
  for (int k = 0; k < points; ++k) {
    VecR v(n);
    for (int i = 0; i < n; ++i) v(i) = box(rng);
    const VecR p = exp_fixed(model, y, v);
    const MatR de_inv = inverse(exp_differential_fd(model, y, v, h));

    for (int z = 0; z < n; ++z) {
      const VecR zeta = VecR::Unit(n, z);
      const VecR yv = commutant_field(model, mla, y, zeta, v);
      MatR dy(n, n);
      for (int i = 0; i < n; ++i) {
        const VecR e = VecR::Unit(n, i);
        dy.col(i) = (commutant_field(model, mla, y, zeta, VecR(v + h * e)) -
                     commutant_field(model, mla, y, zeta, VecR(v - h * e))) /
                    (2.0 * h);
      }
      const MatR jy = dy * de_inv;
      out.killing_deviation = std::max(out.killing_deviation, lie_derivative_metric(model, gram, p, yv, jy, h));
      for (const VecR& x : partners) {
        const VecR br = jy * model.field(x, p) - model.field_jacobian(x) * yv;
        out.bracket_deviation = std::max(out.bracket_deviation, max_abs(br));
      }
    }
    out.negative_control = std::max(
        out.negative_control, lie_derivative_metric(model, gram, p, model.field(u, p), model.field_jacobian(u), h));
  }
  return out;
}

double jacobi_mixed_check(const ManifoldModel& model, const MetricLieAlgebra<double>& mla, const VecR& y,
                          const VecR& v0, const VecR& v1, double s, double t, double h) {
  auto x = [&](double ss, double tt) { return exp_fixed(model, y, VecR(tt * (v0 + ss * v1))); };
  auto frame_inv = [&](double ss, double tt) { return inverse(model.evaluation(x(ss, tt))); };
  auto a_s = [&](double ss, double tt) -> VecR {
    return frame_inv(ss, tt) * ((x(ss + h, tt) - x(ss - h, tt)) / (2.0 * h));
  };
  auto a_t = [&](double ss, double tt) -> VecR {
    return frame_inv(ss, tt) * ((x(ss, tt + h) - x(ss, tt - h)) / (2.0 * h));
  };
  const VecR dt_as = (a_s(s, t + h) - a_s(s, t - h)) / (2.0 * h);
  const VecR ds_at = (a_t(s + h, t) - a_t(s - h, t)) / (2.0 * h);
  const VecR br = mla.bracket<double>(a_s(s, t), a_t(s, t));
  return max_abs(VecR(dt_as - ds_at - br));
}

}  // namespace curvhom
