#include "curvhom/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace curvhom {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json matrix_json(const MatR& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json vector_json(const VecR& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json spectrum_json(const ComplexSpectrum& s) {
  Json out = Json::array();
  for (const cplx& z : s.multiset()) out.push_back(Json::array({z.real(), z.imag()}));
  return out;
}

bool is_usage_code(ErrorCode c) {
  return c == ErrorCode::ZeroParameter || c == ErrorCode::InvalidArgument || c == ErrorCode::ExcludedSignPattern ||
         c == ErrorCode::NotSelfAdjoint;
}

void validate(const RunConfig& c) {
  if (c.params.pm_sign != 1 && c.params.pm_sign != -1) throw UsageError("--sign must be + or -");
  if (c.params.delta != 1 && c.params.delta != -1) throw UsageError("--delta must be 1 or -1");
  if (c.orientation != 1 && c.orientation != -1) throw UsageError("--orientation must be 1 or -1");
  if (!std::isfinite(c.params.p)) throw UsageError("--p must be a finite real number");
  if (!(c.tol > 0.0) || !std::isfinite(c.tol)) throw UsageError("--tol must be positive");
}

struct Model {
  PetrovData<double> data;
  MetricLieAlgebra<double> mla;
};

Model build_model(const RunConfig& c) {
  validate(c);
  try {
    Model m;
    m.data = family_model<double>(c.params);
    m.mla = build_metric_lie_algebra(m.data);
    return m;
  } catch (const Error& e) {
    if (is_usage_code(e.code())) throw UsageError(e.what());
    throw;
  }
}

Json descriptor(const RunConfig& c, const Model& m) {
  Json d;
  d["variant"] = variant_name(c.params.variant);
  d["p"] = c.params.p;
  d["pm_sign"] = c.params.pm_sign;
  d["delta"] = c.params.delta;
  d["form"] = form_name(c.params.form);
  d["orientation"] = c.orientation;
  d["basis"] = Json::array({"u", "e1", "e2", "e3"});
  d["gram"] = matrix_json(m.mla.g.gram());
  d["F"] = matrix_json(m.data.F);
  Json sc = Json::array();
  const int n = m.mla.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (m.mla.c(k, i, j) != 0.0) sc.push_back(Json{{"k", k}, {"i", i}, {"j", j}, {"value", m.mla.c(k, i, j)}});
  d["structure_constants"] = sc;
  d["signature"] = bivector_space(m.mla, c.orientation).signature.str();
  return d;
}

class Rows {
public:
  explicit Rows(std::vector<CheckRow>& rows) : rows_(rows) {}
  void check(const std::string& name, double err, double threshold, std::string note = "") {
    rows_.push_back({name, std::isfinite(err) && err <= threshold, err, std::move(note)});
  }
  void flag(const std::string& name, bool passed, double err = 0.0, std::string note = "") {
    rows_.push_back({name, passed, err, std::move(note)});
  }
  void skip(const std::string& name, const std::string& why) { rows_.push_back({name, true, 0.0, "skipped: " + why}); }
  void error(const std::string& name, const std::exception& e) { rows_.push_back({name, false, INFINITY, e.what()}); }

private:
  std::vector<CheckRow>& rows_;
};

VecR random_element(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> box(-radius, radius);
  VecR v(4);
  for (int i = 0; i < 4; ++i) v(i) = box(rng);
  return v;
}

void model_rows(Rows& rows, const RunConfig& c, const Model& m, const ModelAnalysis& a) {
  const double tol = c.tol;
  const double rmax = a.r.max_abs_value();
  rows.check("Eq4_jacobi", std::max(m.mla.jacobi_defect(), m.mla.antisymmetry_defect()), tol * (1.0 + max_abs(m.data.F)));
  rows.check("Eq1_levi_civita", std::max(torsion_defect(a.conn, m.mla), metric_defect(a.conn, m.mla)),
             tol * (1.0 + max_abs(m.data.F)));
  rows.check("Eq5a_connection", connection_distance(a.conn, closed_form::connection(m.data)),
             tol * (1.0 + max_abs(m.data.F)));
  rows.check("Eq5bcd_curvature", curvature_distance(a.r, closed_form::curvature(m.data)), tol * (1.0 + rmax));
  rows.check("curvature_symmetries", symmetry_defects(a.r).max(), tol * (1.0 + rmax));
  rows.check("Eq6_ricci", max_abs(MatR(a.summary.ricci - closed_form::ricci(m.data))), tol * (1.0 + rmax));
  try {
    const auto exact = family_model<QSqrt3>(c.params);
    const auto emla = build_metric_lie_algebra(exact);
    const auto econn = levi_civita(emla);
    const auto er = curvature_tensor(econn, emla);
    const double err = std::max({connection_distance(econn, closed_form::connection(exact)),
                                 curvature_distance(er, closed_form::curvature(exact)),
                                 max_abs(Mat<QSqrt3>(ricci_scalar(er, emla).ricci - closed_form::ricci(exact)))});
    rows.flag("Eq5_Eq6_exact", err == 0.0, err);
  } catch (const std::exception& e) {
    rows.error("Eq5_Eq6_exact", e);
  }
  rows.flag("Lemma31_einstein", a.summary.einstein, a.summary.einstein_defect,
            std::string("ricci_flat=") + (a.ricci_flat ? "true" : "false") + " scalar=" + num(a.summary.scalar));

  double nabla_gap = 0.0;
  for (int w = 1; w < 4; ++w)
    for (int v = 1; v < 4; ++v)
      for (int vp = 1; vp < 4; ++vp) {
        const VecR general = double(m.data.delta) * a.nabla.endo(w, 0, v).col(vp);
        const VecR cf = closed_form::nabla_r_uvv<double>(m.data, VecR::Unit(3, w - 1), VecR::Unit(3, v - 1),
                                                         VecR::Unit(3, vp - 1));
        nabla_gap = std::max({nabla_gap, std::abs(general(0)), max_abs(VecR(general.tail(3) - cf))});
      }
  rows.check("Lemma31_nabla_r_closed_form", nabla_gap, tol * (1.0 + a.nabla.max_abs_value));
  if (c.params.variant == Variant::Diagonalizable) {
    const double p4 = std::pow(c.params.p, 4);
    rows.flag("Lemma31_non_symmetric", a.nabla.max_abs_value >= 0.1 * p4, 0.0,
              "max|nabla R|=" + num(a.nabla.max_abs_value) + " bound=" + num(0.1 * p4));
  } else {
    rows.skip("Lemma31_non_symmetric", std::string("variant is not diag; locally_symmetric=") +
                                           (a.nabla.locally_symmetric ? "true" : "false"));
  }

  rows.check("star_square", a.star.square_defect, tol);
  rows.check("star_duality", star_duality_defect(a.space, a.star), tol);
  if (a.summary.einstein) {
    rows.check("Remark11_star_commutes", commutator_with_star(a.op, a.star), tol * (1.0 + max_abs(a.op)));
    rows.check("weyl_decomposition", a.weyl.einstein_witness, tol * (1.0 + max_abs(a.op)));
  } else {
    rows.skip("Remark11_star_commutes", "model is not Einstein");
    rows.skip("weyl_decomposition", "model is not Einstein");
  }
  rows.check("weyl_traceless", a.weyl.trace_defect, tol * (1.0 + max_abs(a.op)));
  try {
    const auto h = project_H_iso(VecR::Unit(4, 0), a.space, a.star, a.split, a.weyl.weyl, tol);
    if (a.split.lorentzian)
      rows.flag("Remark12_H_projection", h.invariance_defect <= tol * (1.0 + max_abs(a.op)) && h.real_rank_with_star == 6,
                h.invariance_defect, "real_rank_with_star=" + std::to_string(h.real_rank_with_star));
    else
      rows.check("Remark12_H_projection", std::max(h.invariance_defect, h.conjugation_defect),
                 tol * (1.0 + max_abs(a.op)) * (1.0 + h.condition), "condition=" + num(h.condition));
  } catch (const std::exception& e) {
    rows.error("Remark12_H_projection", e);
  }
  const auto ms = a.w_plus_spectrum.multiset();
  if (ms.size() == 3)
    rows.check("Eq16_trace_identities", weyl_trace_identities(ms[0], ms[1], ms[2], a.summary.scalar),
               tol * (1.0 + max_abs(a.op)) * (1.0 + max_abs(a.op)));
  const bool expect_cdiag = c.params.variant != Variant::NonDiagonalizable;
  rows.flag("cdiag", a.cdiag == expect_cdiag, 0.0,
            std::string("cdiag=") + (a.cdiag ? "true" : "false") + (expect_cdiag ? "" : " expected-false"));
}

struct FrameOutcome {
  bool available = false;
  std::vector<VecC> killing_fields;  ///< w and v_j when W+ is not parallel
};

FrameOutcome frame_rows(Rows& rows, const RunConfig& c, const ModelAnalysis& a) {
  FrameOutcome out;
  const double tol = c.tol;
  const double sc = a.scale;
  if (!a.w_plus_spectrum.diagonalizable) {
    rows.skip("Remark103_frame", "W+ is not diagonalizable");
    return out;
  }
  try {
    const MatR g = a.mla.g.gram();
    const auto frame = normalized_frame(a.e, g, tol);
    rows.check("Eq11_frame_products", frame_product_defect(frame, a.e), tol * sc);
    const auto forms = connection_forms(frame, a.conn, tol);
    rows.check("Eq14_connection_forms", std::max(forms.skew_defect, forms.consistency_defect), tol * sc);
    const auto data = weyl_components(frame, a.e.w_plus, &forms);
    double mu = 0.0, lam = 0.0;
    for (int j = 0; j < 3; ++j) {
      mu = std::max(mu, std::abs(data.mu[j]));
      lam = std::max(lam, std::abs(data.lambda[j] - frame.eigenvalues[j]));
    }
    rows.check("Eq15_eigenframe", std::max(mu, lam), tol * sc);
    const auto div = divergence_check(data, forms, frame, g, tol);
    rows.check("Remark101_div_routes", std::max(div.route_gap, div.theta_max), tol * sc * sc);
    rows.check("Remark101_w_common", div.spread, tol * sc * sc);
    rows.check("Remark81_div_w", weyl_divergence_direct(frame, a.nabla_w, g), tol * sc * sc);
    const auto crit = parallel_criterion(data, forms, frame.eps, tol);
    rows.flag("Remark102_parallel_criterion", crit.parallel == a.parallel_w, 0.0,
              std::string("parallel=") + (a.parallel_w ? "true" : "false") + " residual=" + num(crit.residual));
    rows.check("Remark102iii_structure_equation",
               structure_equation_check(forms, frame, a.mla, a.weyl.weyl, a.summary.scalar), tol * sc * sc);
    for (const auto& r : verify_frame_identities(a, frame, forms, data, div, tol))
      rows.flag(r.name, r.passed, r.deviation, r.note);
    out.available = true;
    if (!a.parallel_w) {
      out.killing_fields.push_back(div.w);
      for (int j = 0; j < 3; ++j) out.killing_fields.push_back(frame.endo[j] * div.w);
    }
  } catch (const std::exception& e) {
    rows.error("Remark103_frame", e);
  }
  return out;
}

void killing_rows(Rows& rows, const RunConfig& c) {
  if (c.params.variant != Variant::Diagonalizable || c.params.form != FormKind::Standard) {
    rows.skip("Eq18_killing_exact", "defined for the diag variant");
    rows.skip("Lemma131_real_form", "defined for the diag variant");
    return;
  }
  try {
    const auto mla = build_metric_lie_algebra(family_model<QSqrt3>(c.params));
    const auto ks = build_killing_structure(mla);
    const auto d = killing_relations(ks, mla);
    rows.flag("Eq18_killing_exact", d.all(), d.max_float_deviation,
              std::string("inner=") + (d.inner_products ? "exact" : "fail") + " brackets=" +
                  (d.brackets ? "exact" : "fail") + " cube_roots=" + (d.cube_roots ? "exact" : "fail"));
    const auto rf = extract_real_form(ks, mla, Mat<QSqrt3>::Identity(4, 4));
    const QSqrt3 p_abs = abs(QSqrt3::from_double(c.params.p));
    const bool recovered = rf.delta == c.params.delta && rf.pm_sign == c.params.pm_sign && rf.p == p_abs && rf.roots_match;
    const double numeric = std::max({rf.form_defect, rf.operator_defect, rf.c_relation_defect});
    rows.flag("Lemma131_real_form", recovered && numeric <= c.tol * (1.0 + std::abs(c.params.p)), numeric,
              "delta=" + std::to_string(rf.delta) + " pm_sign=" + std::to_string(rf.pm_sign) + " p=" +
                  num(rf.p.to_double()));
  } catch (const std::exception& e) {
    rows.error("Eq18_killing_exact", e);
  }
}

void appendix_rows(Rows& rows, const RunConfig& c, const Model& m, const FrameOutcome& frame) {
  const auto model = build_manifold_model(m.data);
  const VecR y = (VecR(4) << 0.0, 0.0, 0.0, 1.0).finished();
  std::mt19937_64 rng(c.seed);
  try {
    double q_err = 0.0, flow_err = 0.0;
    for (int k = 0; k < 5; ++k) {
      const MatR ad = ad_operator(m.mla, random_element(rng, 1.0));
      q_err = std::max(q_err, max_abs(MatR(ad * q_of_operator(ad) - (MatR::Identity(4, 4) - expm_series(MatR(-ad))))));
      const VecR v = random_element(rng, 1.0);
      flow_err = std::max(flow_err, max_abs(VecR(flow(model, v, y).endpoint - flow_closed_form(model, v, y, 1.0))));
    }
    rows.check("Appendix_Q_identity", q_err, 1e-10);
    rows.check("Appendix_flow_closed_form", flow_err, 1e-9);
    rows.check("Appendix_exp_u", std::abs(exp_map(model, y, VecR::Unit(4, 0)).endpoint(3) - std::exp(1.0)), 1e-10);
    rows.check("Appendix_exp_homogeneity", exp_homogeneity(model, y, random_element(rng, 0.5)), 1e-9);

    double dmax = 0.0;
    std::vector<VecR> vs, dirs;
    for (int k = 0; k < 3; ++k) {
      vs.push_back(random_element(rng, 0.5));
      dirs.push_back(random_element(rng, 1.0));
    }
    for (const VecR& v : vs)
      for (const VecR& d : dirs)
        for (double s : {0.5, 1.0, 1.5})
          dmax = std::max(dmax, differential_check(model, m.mla, y, VecR(s * v), d).deviation);
    rows.check("PropA1_differential", dmax, 1e-6, "grid=27");

    double pb = 0.0;
    for (int k = 0; k < 2; ++k) {
      const VecR v = random_element(rng, 0.5);
      for (int i = 0; i < 4; ++i) pb = std::max(pb, pullback_relatedness(model, m.mla, y, VecR::Unit(4, i), v));
    }
    rows.check("CorA2_pullback", pb, 1e-6);

    const auto cc = commutant_killing_check(model, m.mla, y, frame.killing_fields, c.seed);
    rows.check("Remark122_commutant_killing", cc.killing_deviation, 1e-6, "points=" + std::to_string(cc.points));
    const bool control_expected = c.params.variant == Variant::Diagonalizable ||
                                  c.params.variant == Variant::NonDiagonalizable || c.params.variant == Variant::Scalar;
    if (control_expected)
      rows.flag("Remark122_negative_control", cc.negative_control > 1e-3, 0.0,
                "|L_u g|=" + num(cc.negative_control) + " for the algebra field u");
    else
      rows.skip("Remark122_negative_control", "the algebra field u is Killing on this model; |L_u g|=" +
                                                  num(cc.negative_control));
    rows.check("Thm111_commutant_brackets", cc.bracket_deviation, 1e-6,
               "extra_fields=" + std::to_string(frame.killing_fields.size()));

    double jac = 0.0;
    const VecR v0 = random_element(rng, 0.5), v1 = random_element(rng, 0.5);
    std::uniform_real_distribution<double> sd(-0.5, 0.5), td(0.3, 1.2);
    for (int k = 0; k < 5; ++k) jac = std::max(jac, jacobi_mixed_check(model, m.mla, y, v0, v1, sd(rng), td(rng)));
    rows.check("Appendix_jacobi_mixed", jac, 1e-5);
  } catch (const std::exception& e) {
    rows.error("Appendix_exp_map", e);
  }
}

void add_spectra(Report& r, const ModelAnalysis& a) {
  r.spectra["curvature_operator"] = spectrum_json(a.op_spectrum);
  r.spectra["w_plus"] = spectrum_json(a.w_plus_spectrum);
}

void dump(std::ostringstream& os, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<size_t>(indent * depth), ' ');
  const std::string open_nl = indent > 0 ? "\n" : "";
  const std::string sep = indent > 0 ? ",\n" : ",";
  const std::string inline_sep = indent > 0 ? ", " : ",";
  const std::string colon = indent > 0 ? ": " : ":";
  auto scalar_only = [](const Json& arr) {
    for (const auto& x : arr)
      if (x.is_structured() && !(x.is_array() && x.size() <= 2 && !x.empty() && x[0].is_number())) return false;
    return true;
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{" << open_nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << sep;
        first = false;
        os << pad << Json(it.key()).dump() << colon;
        dump(os, it.value(), indent, depth + 1);
      }
      os << open_nl << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      if (scalar_only(j)) {
        os << "[";
        for (size_t i = 0; i < j.size(); ++i) {
          if (i) os << inline_sep;
          dump(os, j[i], indent, depth + 1);
        }
        os << "]";
        return;
      }
      os << "[" << open_nl;
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) os << sep;
        os << pad;
        dump(os, j[i], indent, depth + 1);
      }
      os << open_nl << close << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? num(x) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

bool Report::all_passed() const {
  for (const auto& r : rows)
    if (!r.passed) return false;
  return true;
}

std::vector<std::string> Report::failing() const {
  std::vector<std::string> out;
  for (const auto& r : rows)
    if (!r.passed) out.push_back(r.name);
  return out;
}

Report cmd_build(const RunConfig& config) {
  const Model m = build_model(config);
  Report r;
  r.command = "build";
  r.model = descriptor(config, m);
  return r;
}

Report cmd_verify(const RunConfig& config) {
  const Model m = build_model(config);
  Report r;
  r.command = "verify";
  r.model = descriptor(config, m);
  Rows rows(r.rows);
  const ModelAnalysis a = analyze(m.mla, config.orientation, config.tol);
  add_spectra(r, a);
  model_rows(rows, config, m, a);
  const FrameOutcome frame = frame_rows(rows, config, a);
  killing_rows(rows, config);
  appendix_rows(rows, config, m, frame);
  return r;
}

Report cmd_classify(const RunConfig& config) {
  const Model m = build_model(config);
  Report r;
  r.command = "classify";
  r.model = descriptor(config, m);
  const ModelAnalysis a = analyze(m.mla, config.orientation, config.tol);
  add_spectra(r, a);
  try {
    const auto res = classify_model(a);
    Json ev = Json::object();
    for (const auto& [k, v] : res.evidence) ev[k] = v;
    r.classification = Json{{"case", case_name(res.kase)}, {"evidence", ev}};
    r.rows.push_back({"classification", true, 0.0, case_name(res.kase)});
  } catch (const Error& e) {
    r.rows.push_back({"classification", false, INFINITY, e.what()});
  }
  return r;
}

Report cmd_expmap(const RunConfig& config) {
  if (config.v.size() != 4) throw UsageError("--v needs four components a,v1,v2,v3");
  VecR y = config.y;
  if (y.size() == 0) y = (VecR(4) << 0.0, 0.0, 0.0, 1.0).finished();
  if (y.size() != 4) throw UsageError("--y needs four components x1,x2,x3,t");
  if (!(y(3) > 0.0)) throw UsageError("--y must lie in the chart t > 0");
  if (config.trajectory < 0) throw UsageError("--trajectory must be non-negative");
  const Model m = build_model(config);
  const auto model = build_manifold_model(m.data);
  Report r;
  r.command = "expmap";
  r.model = descriptor(config, m);
  r.result["v"] = vector_json(config.v);
  r.result["y"] = vector_json(y);
  try {
    const FlowResult f = exp_map(model, y, config.v);
    r.result["endpoint"] = vector_json(f.endpoint);
    r.result["steps"] = f.steps;
    r.result["error_estimate"] = f.error_estimate;
    Rows rows(r.rows);
    rows.check("Appendix_flow_closed_form", max_abs(VecR(f.endpoint - flow_closed_form(model, config.v, y, 1.0))),
               1e-9);
    double dev = 0.0;
    for (int i = 0; i < 4; ++i)
      dev = std::max(dev, differential_check(model, m.mla, y, config.v, VecR::Unit(4, i)).deviation);
    r.result["differential_deviation"] = dev;
    rows.check("PropA1_differential", dev, 1e-6);
    if (config.trajectory > 0) {
      Json traj = Json::array();
      for (const auto& row : flow_trajectory(model, config.v, y, 1.0, config.trajectory))
        traj.push_back(Json::array({row[0], row[1], row[2], row[3], row[4]}));
      r.result["trajectory"] = traj;
    }
  } catch (const Error& e) {
    r.rows.push_back({"Appendix_flow", false, INFINITY, e.what()});
  }
  return r;
}

Report run_command(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  if (config.command == "build") r = cmd_build(config);
  else if (config.command == "verify") r = cmd_verify(config);
  else if (config.command == "classify") r = cmd_classify(config);
  else if (config.command == "expmap") r = cmd_expmap(config);
  else throw UsageError("unknown command '" + config.command + "'");
  if (config.timing)
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

int exit_code(const Report& report) { return report.all_passed() ? 0 : 1; }

std::string dump_json(const Json& value, int indent) {
  std::ostringstream os;
  dump(os, value, indent, 0);
  return os.str();
}

std::string render_json(const Report& report) {
  Json j;
  j["command"] = report.command;
  j["model"] = report.model;
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json row;
    row["name"] = r.name;
    row["passed"] = r.passed;
    row["max_abs_error"] = r.max_abs_error;
    if (!r.note.empty()) row["note"] = r.note;
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["classification"] = report.classification;
  j["spectra"] = report.spectra;
  if (!report.result.empty()) j["result"] = report.result;
  j["all_passed"] = report.all_passed();
  if (report.seconds) j["timing"] = Json{{"seconds", *report.seconds}};
  return dump_json(j) + "\n";
}

std::string render_text(const Report& report) {
  std::ostringstream os;
  os << "command: " << report.command << "\n";
  if (!report.model.empty()) {
    os << "model: variant=" << report.model["variant"].get<std::string>() << " p=" << num(report.model["p"].get<double>())
       << " sign=" << (report.model["pm_sign"].get<int>() > 0 ? "+" : "-") << " delta=" << report.model["delta"].get<int>()
       << " signature=" << report.model["signature"].get<std::string>() << "\n";
  }
  for (const auto& r : report.rows) {
    os << (r.passed ? "PASS " : "FAIL ") << r.name << " max_abs_error=" << num(r.max_abs_error);
    if (!r.note.empty()) os << " (" << r.note << ")";
    os << "\n";
  }
  if (!report.classification.is_null()) {
    os << "case: " << report.classification["case"].get<std::string>() << "\n";
    for (auto it = report.classification["evidence"].begin(); it != report.classification["evidence"].end(); ++it)
      os << "  " << it.key() << ": " << it.value().get<std::string>() << "\n";
  }
  for (auto it = report.spectra.begin(); it != report.spectra.end(); ++it)
    os << "spectrum " << it.key() << ": " << dump_json(it.value()) << "\n";
  for (auto it = report.result.begin(); it != report.result.end(); ++it)
    os << it.key() << ": " << dump_json(it.value(), 0) << "\n";
  if (report.command == "build") {
    os << "gram: " << dump_json(report.model["gram"]) << "\n";
    os << "F: " << dump_json(report.model["F"]) << "\n";
  }
  size_t passed = 0;
  for (const auto& r : report.rows) passed += r.passed;
  os << "summary: " << passed << "/" << report.rows.size() << " rows passed\n";
  if (report.seconds) os << "seconds: " << num(*report.seconds) << "\n";
  return os.str();
}

std::string render(const Report& report, OutputFormat format) {
  return format == OutputFormat::Json ? render_json(report) : render_text(report);
}

}  // namespace curvhom
