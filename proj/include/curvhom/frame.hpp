#pragma once

#include "curvhom/classifier.hpp"

#include <array>
#include <string>
#include <vector>

namespace curvhom {

/// Cyclic successor indices: (j, k, l) = (j, j+1, j+2) mod 3.
inline constexpr int cyc1(int j) { return (j + 1) % 3; }
inline constexpr int cyc2(int j) { return (j + 2) % 3; }

/// Frame alpha_1, alpha_2, alpha_3 of E with eps_j alpha_j^2 = -Id and alpha_j alpha_k = eps_l alpha_l
/// for cyclic (j, k, l).
struct OrthoEigenFrame {
  MatC coords;                  ///< 3x3, column j holds alpha_j in the basis of E
  MatC bivectors;               ///< 6x3 bivector coordinates of alpha_j
  std::array<MatC, 3> endo;     ///< alpha_j as 4x4 endomorphisms of the algebra
  std::array<int, 3> eps{1, 1, 1};
  std::array<cplx, 3> eigenvalues{};  ///< W+ eigenvalue of alpha_j when the frame is an eigenframe
};

/// Builds the bivector and endomorphism data of a frame given by E coordinates.
OrthoEigenFrame frame_from_coords(const ComplexE& e, const MatR& g, const MatC& coords,
                                  const std::array<int, 3>& eps);

/// h-orthogonal eigenframe of W+ with the quaternion-type products, canonically ordered and signed.
OrthoEigenFrame normalized_frame(const ComplexE& e, const MatR& g, double tol = kTol);

/// Replaces alpha_j by sum_k o(k, j) alpha_k.
OrthoEigenFrame rotate_frame(const OrthoEigenFrame& frame, const ComplexE& e, const MatR& g, const MatC& o);

/// Max deviation over eps_j alpha_j^2 = -Id, alpha_j alpha_k = eps_l alpha_l = -alpha_k alpha_j,
/// h(alpha_j, alpha_k) = 2 eps_j delta_jk and eps_1 eps_2 eps_3 = 1.
double frame_product_defect(const OrthoEigenFrame& frame, const ComplexE& e);

/// -Trace(a b) / 2, the bilinear pairing of skew-adjoint endomorphisms.
cplx endo_pairing(const MatC& a, const MatC& b);

/// Connection forms of the frame; covectors are rows of components over X_0..X_3.
struct ConnectionOneForms {
  std::array<std::array<VecC, 3>, 3> up;  ///< up[j][l](a) = xi_j^l(X_a)
  std::array<VecC, 3> xi;                 ///< xi_l = eps_j xi_j^k for cyclic (j, k, l)
  double expansion_residual = 0.0;  ///< nabla alpha_j minus its expansion in the frame
  double skew_defect = 0.0;         ///< xi_jk + xi_kj with xi_jk = xi_j^l h_lk
  double consistency_defect = 0.0;  ///< xi_j^j and xi_j^l + eps_j xi_k
};

ConnectionOneForms connection_forms(const OrthoEigenFrame& frame, const FrameConnection<double>& conn,
                                    double tol = kTol);

/// W_j^k in a frame (W alpha_j = W_j^k alpha_k, stored as w(k, j)) with lambda_j = W_j^j and
/// mu_j = eps_l W_k^l; theta_j^l = W_j^k xi_k^l - W_k^l xi_j^k when connection forms are supplied.
struct WeylDiagonalData {
  MatC w;
  std::array<cplx, 3> lambda{};
  std::array<cplx, 3> mu{};
  std::array<std::array<VecC, 3>, 3> theta;  ///< theta[j][l]; empty without connection forms
};

WeylDiagonalData weyl_components(const MatC& w_frame, const std::array<int, 3>& eps,
                                 const ConnectionOneForms* forms = nullptr);
/// w_plus is W+ in the basis of E.
WeylDiagonalData weyl_components(const OrthoEigenFrame& frame, const MatC& w_plus,
                                 const ConnectionOneForms* forms = nullptr);

struct DivergenceResult {
  std::array<VecC, 3> via_theta;   ///< [div W] alpha_j = alpha_k theta_j^k
  std::array<VecC, 3> w_j;         ///< the three fields w_j
  std::array<VecC, 3> via_fields;  ///< alpha_j (w_k - w_l)
  VecC w;                          ///< common value of the w_j
  double theta_max = 0.0;
  double fields_max = 0.0;
  double route_gap = 0.0;  ///< max |via_theta - via_fields|
  double spread = 0.0;     ///< max |w_j - w_k|
};

/// Both divergence routes; throws DivergenceNotZero when div W does not vanish.
DivergenceResult divergence_check(const WeylDiagonalData& data, const ConnectionOneForms& forms,
                                  const OrthoEigenFrame& frame, const MatR& g, double tol = kTol);

/// [div W] alpha_j contracted directly from nabla W on bivectors; max-abs over j.
double weyl_divergence_direct(const OrthoEigenFrame& frame, const std::vector<MatR>& nabla_w, const MatR& g);

struct ParallelCriterion {
  bool parallel = false;
  double residual = 0.0;
};

/// mu_1 xi_1 = mu_2 xi_2 = mu_3 xi_3 and (lambda_k - lambda_l) xi_j + eps_l mu_k xi_l - eps_k mu_l xi_k = 0.
ParallelCriterion parallel_criterion(const WeylDiagonalData& data, const ConnectionOneForms& forms,
                                     const std::array<int, 3>& eps, double tol = kTol);

/// Max over j and basis pairs of |d xi_j + eps_j xi_k ^ xi_l + (W + s/12) alpha_j| as 2-forms.
double structure_equation_check(const ConnectionOneForms& forms, const OrthoEigenFrame& frame,
                                const MetricLieAlgebra<double>& mla, const MatR& weyl, double s);

/// Killing-type basis w, v_j of the complexified algebra, exact over Q(sqrt 3, i).
struct KillingStructure {
  Vec<QSqrt3i> w;
  std::array<Vec<QSqrt3i>, 3> v;
  QSqrt3i gamma;
  std::array<QSqrt3i, 3> rho;
};

/// w = p^3 u and v_j = c_j times the eigenvectors of F, scaled to g(v_j, v_j) = g(w, w).
KillingStructure build_killing_structure(const MetricLieAlgebra<QSqrt3>& mla);

struct KillingDefects {
  bool inner_products = false;  ///< g(w,w) = g(v_j,v_j) = gamma, all cross terms zero
  bool brackets = false;        ///< [w, v_j] = rho_j v_j and [v_j, v_k] = 0
  bool cube_roots = false;      ///< rho_j distinct with rho_j^3 = gamma^2
  double max_float_deviation = 0.0;
  bool all() const { return inner_products && brackets && cube_roots; }
};

KillingDefects killing_relations(const KillingStructure& ks, const MetricLieAlgebra<QSqrt3>& mla);

struct IdentityRow {
  std::string name;
  double deviation = 0.0;
  bool passed = false;
  std::string note;
};

/// Frame identities of the non-parallel case evaluated on a model: frame field w from the divergence
/// check, v_j = alpha_j w and P = nabla w. Rows that presuppose non-parallel W+ are marked as skipped
/// on parallel models.
std::vector<IdentityRow> verify_frame_identities(const ModelAnalysis& a, const OrthoEigenFrame& frame,
                                                 const ConnectionOneForms& forms, const WeylDiagonalData& data,
                                                 const DivergenceResult& div, double tol = kTol);

struct RealFormWitness {
  Mat<QSqrt3i> psi;     ///< 1x4 functional with psi(w) = 1, psi(v_j) = 0
  Mat<QSqrt3> V;        ///< 4x3 real basis of X intersected with ker psi
  Vec<QSqrt3> u;        ///< |gamma|^(-1/2) w
  Mat<QSqrt3> F;        ///< ad u on V in the basis V
  Mat<QSqrt3> v_form;   ///< g restricted to V
  QSqrt3 gamma;
  int delta = 1;
  QSqrt3 p;             ///< real characteristic root of F
  bool roots_match = false;  ///< characteristic polynomial of F is x^3 - p^3
  int pm_sign = 1;
  VecC xi, eta, zeta;   ///< in V coordinates; xi + i eta is an eigenvector for p q
  cplx c;
  MatR identification;  ///< V coordinates -> C x R = R^3 (z = a + i b -> (a, b))
  double form_defect = 0.0;      ///< transported form minus the standard one
  double operator_defect = 0.0;  ///< transported F minus p times the 120 degree rotation plus p
  double c_relation_defect = 0.0;  ///< |2 conj(c)^2 + g(xi + i eta, xi + i eta)|
};

/// x_basis columns: a real form X of the complex algebra, in algebra coordinates.
RealFormWitness extract_real_form(const KillingStructure& ks, const MetricLieAlgebra<QSqrt3>& mla,
                                  const Mat<QSqrt3>& x_basis);

}  // namespace curvhom
