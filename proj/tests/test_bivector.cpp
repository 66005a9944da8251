#include "doctest.h"

#include "curvhom/bivector.hpp"
#include "curvhom/spectrum.hpp"

using namespace curvhom;

namespace {

const cplx q(-0.5, std::sqrt(3.0) / 2.0);

ModelFamilyParams family(Variant v, double p, int sign, int delta) {
  ModelFamilyParams m;
  m.variant = v;
  m.p = p;
  m.pm_sign = sign;
  m.delta = delta;
  return m;
}

MetricLieAlgebra<double> flat_with_metric(const MatR& g) {
  std::vector<MatR> ad(4, MatR::Zero(4, 4));
  return make_metric_lie_algebra(ad, SymBilinearForm<double>(g));
}

struct Pipeline {
  MetricLieAlgebra<double> mla;
  CurvatureTensor<double> r;
  CurvatureSummary<double> summary;
  MatR op;
  BivectorSpace space;
  HodgeStar star;
  WeylDecomposition weyl;
};

Pipeline run(const MetricLieAlgebra<double>& mla, int orientation) {
  Pipeline p{mla, {}, {}, {}, {}, {}, {}};
  p.r = curvature_tensor(levi_civita(mla), mla);
  p.summary = ricci_scalar(p.r, mla);
  p.op = curvature_operator(p.r);
  p.space = bivector_space(mla, orientation);
  p.star = hodge_star(p.space);
  p.weyl = schouten_weyl(p.r, p.summary);
  return p;
}

}  // namespace

TEST_CASE("bivector_space Gram examples") {
  CHECK(bivector_space(flat_with_metric(MatR::Identity(4, 4)), 1).gram == MatR::Identity(6, 6));
  MatR lorentz = MatR::Identity(4, 4);
  lorentz(0, 0) = -1;
  VecR expected(6);
  expected << -1, -1, -1, 1, 1, 1;
  CHECK(bivector_space(flat_with_metric(lorentz), 1).gram == MatR(expected.asDiagonal()));
  auto neutral = build_metric_lie_algebra(family_model<double>(family(Variant::Diagonalizable, 1, 1, -1)));
  const MatR gram = bivector_space(neutral, 1).gram;
  // <u^e1, u^e2> = g(u,u) g(e1,e2) = -1 and <e2^e3, e3^e1> = -g(e2,e1) g(e3,e3) = -1
  CHECK(gram(0, 1) == -1.0);
  CHECK(gram(0, 0) == 0.0);
  CHECK(gram(3, 4) == -1.0);
}

TEST_CASE("Hodge star squares and duality") {
  MatR neutral = MatR::Identity(4, 4);
  neutral(0, 0) = neutral(1, 1) = -1;
  auto sp = bivector_space(flat_with_metric(neutral), 1);
  auto st = hodge_star(sp);
  CHECK(st.square_sign == 1);
  // *(e1^e2) = e3^e4 for eps = (-,-,+,+), indices shifted to 0..3
  VecR e01 = VecR::Unit(6, 0);
  CHECK(max_abs(VecR(st.star * e01 - VecR::Unit(6, 3))) < 1e-14);

  MatR lorentz = MatR::Identity(4, 4);
  lorentz(0, 0) = -1;
  auto sl = hodge_star(bivector_space(flat_with_metric(lorentz), 1));
  CHECK(sl.square_sign == -1);
  CHECK(sl.square_defect < 1e-12);
  auto se = hodge_star(bivector_space(flat_with_metric(MatR::Identity(4, 4)), -1));
  CHECK(se.square_sign == 1);

  for (double p : {0.5, 2.0})
    for (auto [s, d] : {std::pair{1, 1}, {1, -1}, {-1, 1}})
      for (int o : {1, -1}) {
        auto mla = build_metric_lie_algebra(family_model<double>(family(Variant::Diagonalizable, p, s, d)));
        auto space = bivector_space(mla, o);
        auto star = hodge_star(space);
        CHECK(star.square_sign == (mla.g.signature().is_lorentzian() ? -1 : 1));
        CHECK(star.square_defect < 1e-12);
        CHECK(star_duality_defect(space, star) < 1e-12);
        if (star.square_sign == 1)
          CHECK(bivector_self_adjoint_defect(star.star, space.gram) < 1e-12);
        // <*a, *b> = square_sign * <a, b> times the sign of the metric determinant
        const MatR ss = star.star.transpose() * space.gram * star.star;
        CHECK(std::min(max_abs(MatR(ss - space.gram)), max_abs(MatR(ss + space.gram))) < 1e-12);
      }
}

TEST_CASE("bivector endomorphism identities") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> nd;
  MatR neutral = MatR::Identity(4, 4);
  neutral(0, 0) = neutral(1, 1) = -1;
  for (const MatR& g : {MatR(MatR::Identity(4, 4)), neutral}) {
    const MatR gram6 = bivector_gram(g);
    for (int trial = 0; trial < 20; ++trial) {
      VecR v(4), u(4), w(4), a(6), b(6);
      for (int k = 0; k < 4; ++k) {
        v(k) = nd(rng);
        u(k) = nd(rng);
        w(k) = nd(rng);
      }
      for (int k = 0; k < 6; ++k) {
        a(k) = nd(rng);
        b(k) = nd(rng);
      }
      const MatR vu = bivector_endomorphism<double>(wedge<double>(v, u), g);
      const double gvw = (v.transpose() * g * w).value(), guw = (u.transpose() * g * w).value();
      CHECK(max_abs(VecR(vu * w - (gvw * u - guw * v))) < 1e-12);
      const MatR ea = bivector_endomorphism<double>(a, g), eb = bivector_endomorphism<double>(b, g);
      CHECK(std::abs((a.transpose() * gram6 * b).value() + trace(MatR(ea * eb)) / 2.0) < 1e-12);
      CHECK(std::abs(trace(MatR(ea * vu)) + 2.0 * (VecR(ea * v).transpose() * g * u).value()) < 1e-12);
      CHECK(max_abs(VecR(endomorphism_bivector<double>(ea, g) - a)) < 1e-12);
    }
  }
}

TEST_CASE("curvature operator of family (b)") {
  for (double p : {0.5, 1.0, 2.0})
    for (auto [s, d] : {std::pair{1, 1}, {1, -1}, {-1, 1}}) {
      auto mla = build_metric_lie_algebra(family_model<double>(family(Variant::Diagonalizable, p, s, d)));
      auto pl = run(mla, 1);
      CHECK(bivector_self_adjoint_defect(pl.op, pl.space.gram) < 1e-12);
      CHECK(pl.op(2, 2) == doctest::Approx(-d * p * p));
      auto spec = complex_spectrum(to_complex_matrix(pl.op));
      const double l = -d * p * p;
      CHECK(multiset_distance(spec.multiset(), {l, l, l * q, l * q, l * std::conj(q), l * std::conj(q)}) < 1e-9);
      for (const auto& e : spec.eigenvalues) CHECK(e.algebraic == 2);
      CHECK(commutator_with_star(pl.op, pl.star) < 1e-12);
      CHECK(max_abs(MatR(pl.weyl.weyl - pl.op)) < 1e-12);
    }
  auto flat = build_metric_lie_algebra(family_model<double>(family(Variant::Nilpotent, 1, 1, 1)));
  CHECK(max_abs(run(flat, 1).op) == 0.0);
}

TEST_CASE("Weyl decomposition") {
  for (int d : {1, -1}) {
    auto mla = build_metric_lie_algebra(family_model<double>(family(Variant::Scalar, 1.5, 1, d)));
    auto pl = run(mla, 1);
    CHECK(max_abs(pl.weyl.weyl) < 1e-12);
    CHECK(pl.weyl.einstein_witness < 1e-12);
    CHECK(max_abs(MatR(pl.op - (pl.summary.scalar / 12.0) * MatR::Identity(6, 6))) < 1e-12);
  }
  // (g ^ g)/2 acts as the identity
  const MatR g = MatR::Identity(4, 4);
  const MatR kn = 0.5 * kulkarni_nomizu_form(g, g);
  CHECK(max_abs(MatR(solve(bivector_gram(g), kn) - MatR::Identity(6, 6))) < 1e-15);
  MatR lorentz = MatR::Identity(4, 4);
  lorentz(0, 0) = -1;
  CHECK(max_abs(MatR(solve(bivector_gram(lorentz), MatR(0.5 * kulkarni_nomizu_form(lorentz, lorentz))) -
                     MatR::Identity(6, 6))) < 1e-15);

  // a non-Einstein algebra: trace-free Weyl, but R does not commute with the star
  MatR f = MatR::Zero(3, 3);
  f.diagonal() << 1, 2, 3;
  auto data = make_petrov_data(euclidean_inner_product<double>(), f, 1);
  auto pl = run(build_metric_lie_algebra(data), 1);
  CHECK_FALSE(pl.summary.einstein);
  CHECK(pl.weyl.trace_defect < 1e-12);
  CHECK(commutator_with_star(pl.weyl.weyl, pl.star) < 1e-12);
  CHECK(commutator_with_star(pl.op, pl.star) > 1e-3);
}

TEST_CASE("self-dual split, E and restriction") {
  for (double p : {0.5, 1.0, 2.0})
    for (auto [s, d] : {std::pair{1, 1}, {1, -1}, {-1, 1}})
      for (int o : {1, -1}) {
        auto mla = build_metric_lie_algebra(family_model<double>(family(Variant::Diagonalizable, p, s, d)));
        auto pl = run(mla, o);
        auto split = selfdual_split(pl.space, pl.star);
        const double l = -d * p * p;
        if (split.lorentzian) {
          CHECK(max_abs(MatR(split.J * split.J + MatR::Identity(6, 6))) < 1e-12);
        } else {
          CHECK(max_abs(MatR(pl.star.star * split.plus - split.plus)) < 1e-12);
          CHECK(max_abs(MatR(pl.star.star * split.minus + split.minus)) < 1e-12);
          CHECK(max_abs(MatR(split.plus.transpose() * pl.space.gram * split.minus)) < 1e-12);
          CHECK(rank(split.plus) == 3);
        }
        auto e = build_E(split, pl.space, pl.star, pl.weyl.weyl);
        CHECK(e.basis.cols() == 3);
        CHECK(rank(e.basis) == 3);
        CHECK(std::abs(trace(e.w_plus)) < 1e-12);
        CHECK(max_abs(MatC(e.h * e.w_plus - e.w_plus.transpose() * e.h)) < 1e-12);
        auto rp = complex_spectrum(restrict_to_E(pl.op, e, pl.star));
        CHECK(multiset_distance(rp.multiset(), {l, l * q, l * std::conj(q)}) < 1e-9);
        auto id = restrict_to_E(MatR(0.25 * MatR::Identity(6, 6)), e, pl.star);
        CHECK(max_abs(MatC(id - 0.25 * MatC::Identity(3, 3))) < 1e-12);

        auto h = project_H_iso(VecR::Unit(4, 0), pl.space, pl.star, split, pl.weyl.weyl);
        CHECK(h.invariance_defect < 1e-12);
        if (split.lorentzian) {
          CHECK(h.real_rank_with_star == 6);
        } else {
          CHECK(h.conjugation_defect < 1e-10);
          CHECK(std::isfinite(h.condition));
        }
      }
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  MatR rnd(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) rnd(i, j) = nd(rng);
  auto mla = build_metric_lie_algebra(family_model<double>(family(Variant::Diagonalizable, 1, 1, -1)));
  auto pl = run(mla, 1);
  CHECK(commutator_with_star(MatR(MatR::Identity(6, 6)), pl.star) == 0.0);
  CHECK(commutator_with_star(rnd, pl.star) > 1e-3);
  auto e = build_E(selfdual_split(pl.space, pl.star), pl.space, pl.star, pl.weyl.weyl);
  try {
    restrict_to_E(rnd, e, pl.star);
    FAIL("expected NotStarCommuting");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotStarCommuting);
  }
}

TEST_CASE("Riemannian W+ has real spectrum and Euclidean H projection is invertible") {
  MatR f = MatR::Zero(3, 3);
  f.diagonal() << 1, 1, 1;
  auto mla = build_metric_lie_algebra(make_petrov_data(euclidean_inner_product<double>(), f, 1));
  auto pl = run(mla, 1);
  auto split = selfdual_split(pl.space, pl.star);
  auto e = build_E(split, pl.space, pl.star, pl.weyl.weyl);
  for (auto ev : complex_spectrum(e.w_plus).eigenvalues) CHECK(std::abs(ev.value.imag()) < 1e-12);
  auto h = project_H_iso(VecR::Unit(4, 0), pl.space, pl.star, split, pl.weyl.weyl);
  CHECK(std::isfinite(h.condition));
  CHECK(h.condition < 10.0);
}
