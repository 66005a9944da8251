#include "doctest.h"

#include "curvhom/frame.hpp"

#include <numbers>
#include <random>

using namespace curvhom;

namespace {

ModelFamilyParams family(Variant v, double p, int sign, int delta) {
  ModelFamilyParams m;
  m.variant = v;
  m.p = p;
  m.pm_sign = sign;
  m.delta = delta;
  return m;
}

ModelAnalysis analyze_family(const ModelFamilyParams& params, int orientation = 1) {
  return analyze(build_metric_lie_algebra(family_model<double>(params)), orientation);
}

struct FrameRun {
  ModelAnalysis a;
  OrthoEigenFrame frame;
  ConnectionOneForms forms;
  WeylDiagonalData data;
};

FrameRun run(const ModelFamilyParams& params, int orientation = 1) {
  FrameRun r{analyze_family(params, orientation), {}, {}, {}};
  r.frame = normalized_frame(r.a.e, r.a.mla.g.gram());
  r.forms = connection_forms(r.frame, r.a.conn);
  r.data = weyl_components(r.frame, r.a.e.w_plus, &r.forms);
  return r;
}

struct Case {
  double p;
  int sign;
  int delta;
  int orientation;
};

std::vector<Case> family_b_cases() {
  std::vector<Case> out;
  for (double p : {0.5, 1.0, 2.0})
    for (int sign : {1, -1})
      for (int delta : {1, -1}) {
        if (delta == -1 && sign == -1) continue;
        for (int orientation : {1, -1}) out.push_back({p, sign, delta, orientation});
      }
  return out;
}

/// Multiset distance between two triples, minimized over the six matchings.
double triple_distance(std::array<cplx, 3> a, std::array<cplx, 3> b) {
  std::array<int, 3> perm{0, 1, 2};
  double best = INFINITY;
  do {
    double d = 0.0;
    for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(a[j] - b[perm[j]]));
    best = std::min(best, d);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("normalized frame satisfies the quaternion-type products") {
  for (const Case& c : family_b_cases()) {
    CAPTURE(c.p);
    CAPTURE(c.sign);
    CAPTURE(c.delta);
    CAPTURE(c.orientation);
    auto r = run(family(Variant::Diagonalizable, c.p, c.sign, c.delta), c.orientation);
    CHECK(frame_product_defect(r.frame, r.a.e) <= 1e-10);
    CHECK(r.frame.eps[0] * r.frame.eps[1] * r.frame.eps[2] == 1);
  }
  for (Variant v : {Variant::Scalar, Variant::Abelian, Variant::Nilpotent}) {
    auto r = run(family(v, 1.0, 1, 1));
    CHECK(frame_product_defect(r.frame, r.a.e) <= 1e-10);
  }
}

TEST_CASE("normalized frame is deterministic") {
  auto params = family(Variant::Diagonalizable, 1.0, 1, -1);
  auto a = run(params);
  auto b = run(params);
  CHECK(max_abs(MatC(a.frame.coords - b.frame.coords)) == 0.0);
  CHECK(a.frame.eps == b.frame.eps);
}

TEST_CASE("frame of a non-diagonalizable W+ is rejected") {
  auto a = analyze_family(family(Variant::NonDiagonalizable, 1.0, 1, 1));
  CHECK_THROWS_AS(normalized_frame(a.e, a.mla.g.gram()), Error);
  try {
    normalized_frame(a.e, a.mla.g.gram());
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDiagonalizable);
  }
}

TEST_CASE("connection forms are skew and consistent") {
  for (const Case& c : family_b_cases()) {
    auto r = run(family(Variant::Diagonalizable, c.p, c.sign, c.delta), c.orientation);
    const double scale = 1.0 + c.p * c.p;
    CHECK(r.forms.expansion_residual <= 1e-10 * scale);
    CHECK(r.forms.skew_defect <= 1e-10 * scale);
    CHECK(r.forms.consistency_defect <= 1e-10 * scale);
    // the frame direction u is annihilated by every connection form
    for (int j = 0; j < 3; ++j) CHECK(std::abs(r.forms.xi[j](0)) <= 1e-10 * scale);
  }
}

TEST_CASE("eigenvalues in the frame are the W+ spectrum") {
  for (const Case& c : family_b_cases()) {
    auto r = run(family(Variant::Diagonalizable, c.p, c.sign, c.delta), c.orientation);
    const cplx q = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const cplx l = -c.delta * c.p * c.p;
    CHECK(triple_distance(r.data.lambda, {l, l * q, l * std::conj(q)}) <= 1e-9 * c.p * c.p);
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(r.data.mu[j]) <= 1e-9 * c.p * c.p);
      CHECK(std::abs(r.data.lambda[j] - r.frame.eigenvalues[j]) <= 1e-9 * c.p * c.p);
    }
  }
}

TEST_CASE("weyl_components reads a diagonal operator") {
  MatC w = MatC::Zero(3, 3);
  w(0, 0) = 2.0;
  w(1, 1) = cplx(-1.0, 0.5);
  w(2, 2) = cplx(-1.0, -0.5);
  auto d = weyl_components(w, {1, 1, 1});
  CHECK(d.lambda[0] == cplx(2.0));
  CHECK(d.lambda[1] == cplx(-1.0, 0.5));
  for (const cplx& m : d.mu) CHECK(m == cplx(0.0));

  w(1, 2) = 3.0;
  w(2, 1) = 5.0;
  auto e = weyl_components(w, {1, -1, -1});
  CHECK(e.mu[0] == cplx(-5.0));
}

TEST_CASE("divergence routes agree and the frame field is common") {
  for (const Case& c : family_b_cases()) {
    CAPTURE(c.p);
    CAPTURE(c.delta);
    CAPTURE(c.sign);
    auto r = run(family(Variant::Diagonalizable, c.p, c.sign, c.delta), c.orientation);
    const MatR g = r.a.mla.g.gram();
    auto div = divergence_check(r.data, r.forms, r.frame, g);
    const double scale = std::pow(1.0 + c.p, 4);
    CHECK(div.theta_max <= 1e-10 * scale);
    CHECK(div.fields_max <= 1e-10 * scale);
    CHECK(div.route_gap <= 1e-10 * scale);
    CHECK(div.spread <= 1e-10 * scale);
    CHECK(max_abs(div.w) > 1e-3);
    CHECK(weyl_divergence_direct(r.frame, r.a.nabla_w, g) <= 1e-10 * scale);
  }
}

TEST_CASE("frame field vanishes on parallel models") {
  for (Variant v : {Variant::Scalar, Variant::Abelian}) {
    auto r = run(family(v, 1.5, 1, 1));
    auto div = divergence_check(r.data, r.forms, r.frame, r.a.mla.g.gram());
    CHECK(max_abs(div.w) <= 1e-10);
    CHECK(div.spread <= 1e-10);
  }
}

TEST_CASE("parallel criterion agrees with nabla W+") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  std::vector<ModelFamilyParams> models;
  for (const Case& c : family_b_cases())
    if (c.orientation == 1) models.push_back(family(Variant::Diagonalizable, c.p, c.sign, c.delta));
  models.push_back(family(Variant::Scalar, 1.5, 1, 1));
  models.push_back(family(Variant::Scalar, 0.5, 1, -1));
  models.push_back(family(Variant::Abelian, 1.0, 1, 1));
  for (const auto& params : models) {
    auto r = run(params);
    auto crit = parallel_criterion(r.data, r.forms, r.frame.eps);
    CHECK(crit.parallel == r.a.parallel_w);

    // a frame rotated by a complex orthogonal matrix is no longer an eigenframe but the criterion
    // must give the same answer
    if (r.frame.eps != std::array<int, 3>{1, 1, 1}) continue;
    const double t = nd(rng), s = nd(rng);
    MatC rot = MatC::Identity(3, 3);
    const cplx ct = std::cos(cplx(t, s)), st = std::sin(cplx(t, s));
    rot(0, 0) = ct;
    rot(0, 1) = -st;
    rot(1, 0) = st;
    rot(1, 1) = ct;
    auto rotated = rotate_frame(r.frame, r.a.e, r.a.mla.g.gram(), rot);
    CHECK(frame_product_defect(rotated, r.a.e) <= 1e-9);
    auto forms = connection_forms(rotated, r.a.conn);
    auto data = weyl_components(rotated, r.a.e.w_plus, &forms);
    if (!r.a.parallel_w) {
      double mu = 0.0;
      for (const cplx& m : data.mu) mu = std::max(mu, std::abs(m));
      CHECK(mu > 1e-3);
    }
    CHECK(parallel_criterion(data, forms, rotated.eps).parallel == r.a.parallel_w);
  }
}

TEST_CASE("structure equation of the connection forms") {
  for (const Case& c : family_b_cases()) {
    auto r = run(family(Variant::Diagonalizable, c.p, c.sign, c.delta), c.orientation);
    const double scale = std::pow(1.0 + c.p, 4);
    CHECK(structure_equation_check(r.forms, r.frame, r.a.mla, r.a.weyl.weyl, r.a.summary.scalar) <= 1e-10 * scale);
  }
  auto r = run(family(Variant::Scalar, 1.5, 1, 1));
  CHECK(structure_equation_check(r.forms, r.frame, r.a.mla, r.a.weyl.weyl, r.a.summary.scalar) <= 1e-10 * 16);
}

TEST_CASE("frame identities hold on family (b)") {
  for (const Case& c : family_b_cases()) {
    CAPTURE(c.p);
    CAPTURE(c.sign);
    CAPTURE(c.delta);
    CAPTURE(c.orientation);
    auto r = run(family(Variant::Diagonalizable, c.p, c.sign, c.delta), c.orientation);
    auto div = divergence_check(r.data, r.forms, r.frame, r.a.mla.g.gram());
    auto rows = verify_frame_identities(r.a, r.frame, r.forms, r.data, div);
    CHECK(rows.size() >= 20);
    for (const auto& row : rows) {
      CAPTURE(row.name);
      CAPTURE(row.deviation);
      CHECK(row.passed);
      CHECK(row.note.find("skipped") == std::string::npos);
    }
  }
}

TEST_CASE("frame identities skip the non-parallel rows on parallel models") {
  auto r = run(family(Variant::Scalar, 1.5, 1, 1));
  auto div = divergence_check(r.data, r.forms, r.frame, r.a.mla.g.gram());
  auto rows = verify_frame_identities(r.a, r.frame, r.forms, r.data, div);
  int skipped = 0;
  for (const auto& row : rows) {
    CAPTURE(row.name);
    CHECK(row.passed);
    if (row.note.find("skipped") != std::string::npos) ++skipped;
  }
  CHECK(skipped > 0);
}

TEST_CASE("exact Killing structure") {
  for (const char* p : {"1/2", "1", "2"})
    for (int sign : {1, -1})
      for (int delta : {1, -1}) {
        if (delta == -1 && sign == -1) continue;
        CAPTURE(p);
        CAPTURE(sign);
        CAPTURE(delta);
        const Rational pr(p);
        PetrovData<QSqrt3> data;
        data.v_form = standard_inner_product<QSqrt3>(sign);
        data.F = diagonalizable_F<QSqrt3>(QSqrt3(pr));
        data.delta = delta;
        auto mla = build_metric_lie_algebra(data);
        auto ks = build_killing_structure(mla);
        auto d = killing_relations(ks, mla);
        CHECK(d.inner_products);
        CHECK(d.brackets);
        CHECK(d.cube_roots);
        CHECK(d.max_float_deviation == 0.0);
        CHECK(ks.gamma == QSqrt3i(QSqrt3(Rational(delta) * pr * pr * pr * pr * pr * pr)));
      }
}

TEST_CASE("excluded sign pattern is rejected before the Killing structure") {
  PetrovData<QSqrt3> data;
  data.v_form = standard_inner_product<QSqrt3>(-1);
  data.F = diagonalizable_F<QSqrt3>(QSqrt3(1));
  data.delta = -1;
  CHECK_THROWS_AS(build_metric_lie_algebra(data), Error);
  try {
    build_metric_lie_algebra(data);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ExcludedSignPattern);
  }
}

TEST_CASE("real form round trip recovers the model parameters") {
  for (const char* p : {"1/2", "1", "2", "-2"})
    for (int sign : {1, -1})
      for (int delta : {1, -1}) {
        if (delta == -1 && sign == -1) continue;
        CAPTURE(p);
        CAPTURE(sign);
        CAPTURE(delta);
        const Rational pr(p);
        PetrovData<QSqrt3> data;
        data.v_form = standard_inner_product<QSqrt3>(sign);
        data.F = diagonalizable_F<QSqrt3>(QSqrt3(pr));
        data.delta = delta;
        auto mla = build_metric_lie_algebra(data);
        auto ks = build_killing_structure(mla);
        // a non-standard real basis of the same real form
        Mat<QSqrt3> x = Mat<QSqrt3>::Identity(4, 4);
        x(1, 2) = QSqrt3(2);
        x(3, 1) = QSqrt3(Rational(-1) / 3);
        x(0, 3) = QSqrt3(1);
        auto rf = extract_real_form(ks, mla, x);
        CHECK(rf.delta == delta);
        CHECK(rf.pm_sign == sign);
        CHECK(rf.p == QSqrt3(abs(pr)));
        CHECK(rf.roots_match);
        CHECK(rf.gamma == QSqrt3(Rational(delta) * pr * pr * pr * pr * pr * pr));
        CHECK(QSqrt3((rf.u.transpose() * mla.g.gram() * rf.u).value()) == QSqrt3(delta));
        CHECK(rf.form_defect <= 1e-12);
        CHECK(rf.operator_defect <= 1e-12 * (1.0 + std::abs(rf.p.to_double())));
        CHECK(rf.c_relation_defect <= 1e-12);
      }
}

TEST_CASE("a complex subspace is not a real form") {
  PetrovData<QSqrt3> data;
  data.v_form = standard_inner_product<QSqrt3>(1);
  data.F = diagonalizable_F<QSqrt3>(QSqrt3(1));
  data.delta = 1;
  auto mla = build_metric_lie_algebra(data);
  auto ks = build_killing_structure(mla);
  Mat<QSqrt3> degenerate = Mat<QSqrt3>::Identity(4, 4);
  degenerate.col(3) = degenerate.col(2);
  CHECK_THROWS_AS(extract_real_form(ks, mla, degenerate), Error);
}
