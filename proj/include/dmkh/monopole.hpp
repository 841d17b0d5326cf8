// Closed-form model monopoles on S^1_T x C_w (and p-fold coverings):
// numerical certification of the Bogomolny equation, Hodge-star identities,
// mini-holomorphic frame checks, scattering monodromy, the contracted
// curvature identity in the lambda-chart, and exact filtered-degree
// integrals for the global rank-one models.
#pragma once

#include "dmkh/exact.hpp"
#include "dmkh/matrix.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace dmkh {

using Cx = std::complex<double>;
using MatCx = Mat<Cx>;

// ---------------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------------

// A closed-form model monopole. Evaluators are double precision; the
// identities they certify hold exactly, so residuals are rounding only.
struct ModelMonopole {
  enum class Family { BasicLpEll, Frobenius, Tame, GlobalGamma, DiracL };
  Family family;
  Cx lambda = 0.0;
  double T = 1.0;

  // BasicLpEll(p, ell): rank-one monopole of pure slope ell/p on the p-fold
  // covering, nabla e = e (ell/(pT)) (t/2) (dwbar/wbar - dw/w),
  // phi = i (ell/(pT)) log|w|.
  int p = 1;
  int ell = 0;

  // Frobenius(frak_a, p): induced by the wild rank-one harmonic bundle with
  // Higgs field d frak_a; frak_a = sum_{k=1}^{p} frak_a_coeff[k-1] w_p^k.
  std::vector<Cx> frak_a_coeff;

  // Tame(a, alpha): induced by the tame rank-one harmonic bundle with
  // theta = -alpha dw/w and |e|_h^2 = |w|^{2a}.
  double a = 0.0;
  Cx alpha = 0.0;

  // GlobalGamma(gamma): flat global model, phi = gamma - conj(gamma).
  Cx gamma = 0.0;

  // DiracL(ell, weight, t1_0): global Dirac-type rank-one model; only the
  // exact filtered-degree integral is available (no closed-form metric).
  Rat weight = 0;
  Rat t1_0 = 0;   // lift of the singular point, 0 <= t1_0 < T
  Rat T_exact = 1;
};

ModelMonopole make_basic_lp_ell(int p, int ell, double T = 1.0, Cx lambda = 0.0);
ModelMonopole make_frobenius(std::vector<Cx> frak_a_coeff, int p,
                             double T = 1.0, Cx lambda = 0.0);
ModelMonopole make_tame(double a, Cx alpha, double T = 1.0, Cx lambda = 0.0);
ModelMonopole make_global_gamma(Cx gamma, double T = 1.0, Cx lambda = 0.0);
ModelMonopole make_dirac_l(int ell, const Rat& weight, const Rat& t1_0,
                           const Rat& T = 1, Cx lambda = 0.0);

// A sample point on the covering: the t-coordinate and the covering
// coordinate w_p (so w = w_p^p); w_p != 0 for the punctured models.
struct SamplePoint {
  double t = 0.0;
  Cx wp = 1.0;
};

// The same point in the lambda-chart: t1 = t + Im(lambda conj(w)),
// beta1 = w + 2 i lambda t + lambda^2 conj(w).
struct Chart1Point {
  double t1 = 0.0;
  Cx beta1 = 0.0;
};

Chart1Point to_chart1(Cx lambda, double t, Cx w);
// inverse: w = (beta1 - 2 i lambda t1) / (1 + |lambda|^2), t = t1 - Im(lambda conj(w))
void from_chart1(Cx lambda, const Chart1Point& q, double& t, Cx& w);

// ---------------------------------------------------------------------------
// Closed-form evaluators (all in the (t, w) chart, w = wp^p)
// ---------------------------------------------------------------------------

// connection form nabla e = e (A_t dt + A_w dw + A_wbar dwbar)
struct ConnForm {
  Cx At, Aw, Awbar;
};
ConnForm connection_form(const ModelMonopole& m, const SamplePoint& pt);
Cx higgs_field(const ModelMonopole& m, const SamplePoint& pt);
// curvature F = F_tw dt dw + F_twbar dt dwbar + F_wwbar dw dwbar
struct CurvForm {
  Cx Ftw, Ftwbar, Fwwbar;
};
CurvForm curvature_form(const ModelMonopole& m, const SamplePoint& pt);
// nabla phi = (Dphi_t, Dphi_w, Dphi_wbar) (rank one: the exterior derivative)
struct HiggsDeriv {
  Cx Dt, Dw, Dwbar;
};
HiggsDeriv higgs_derivative(const ModelMonopole& m, const SamplePoint& pt);
// log h(e, e)
double metric_log(const ModelMonopole& m, const SamplePoint& pt);

// |F - * nabla phi| componentwise; analytically zero for every family
double bogomolny_residual(const ModelMonopole& m, const SamplePoint& pt);

// ---------------------------------------------------------------------------
// Hodge star on dt^2 + dw dwbar
// ---------------------------------------------------------------------------

// Derives the star operator from the orthonormal real basis (dt, dx, dy)
// with w = x + i y and checks the complex-basis relations used by
// bogomolny_residual: *(dt dw) = -i dw, *(dt dwbar) = i dwbar,
// *(dw dwbar) = -2i dt, and ** = id on 1-forms.
struct HodgeReport {
  bool star_dt_dw = false;
  bool star_dt_dwbar = false;
  bool star_dw_dwbar = false;
  bool star_squared_identity = false;
  bool ok() const {
    return star_dt_dw && star_dt_dwbar && star_dw_dwbar &&
           star_squared_identity;
  }
};
HodgeReport hodge_identities();

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

// Residual record for the stated mini-holomorphic frame u = e * g:
// minihol = |d g + (coefficient) g| for the two mini-holomorphic directions,
// norm_dev = deviation from the stated closed-form norm (when stated),
// gluing_dev = deviation of g(kappa(point)) / g(point) from the stated
// cocycle factor (when stated).
struct FrameCheck {
  double minihol = 0.0;
  std::optional<double> norm_dev;
  std::optional<double> gluing_dev;
};
FrameCheck frame_check(const ModelMonopole& m, const SamplePoint& pt);

// the gluing factor correction G(x) = 1 - x^{-1} log(1+x) = x/2 + O(x^2)
// appearing in the lambda != 0 cocycle of BasicLpEll
Cx gluing_g_factor(Cx x);

// ---------------------------------------------------------------------------
// Scattering monodromy
// ---------------------------------------------------------------------------

// RK4 integration of the scattering equation sigma' = 2 i f sigma over a
// period [0, T] for a Higgs field matrix f (constant along the circle);
// the monodromy is exp(2 i T f).
struct MonodromyResult {
  MatCx M;
  std::string warning;  // set when steps < 100
};
MonodromyResult monodromy(const MatCx& f, double T, int steps);

// reference exponential exp(A) by scaling and squaring
MatCx matcx_exp(const MatCx& A);

// ---------------------------------------------------------------------------
// Contracted curvature identity in the lambda-chart
// ---------------------------------------------------------------------------

// Evaluates |(1+|lambda|^2)^2 [d_{E,h,beta1}, d_{E,beta1bar}]
//            + (i/2)(1+|lambda|^2) nabla_{h,t} phi|
// from the closed-form frame coefficients, with the outer beta1-derivatives
// taken by fourth-order central differences; zero for exact monopoles.
double g_operator_check(const ModelMonopole& m, const SamplePoint& pt);

// ---------------------------------------------------------------------------
// Exact filtered degrees of the global rank-one models
// ---------------------------------------------------------------------------

// GlobalGamma with weight a: the per-slice degree is the constant -a.
// DiracL(ell, a, t1_0): the per-slice degree is ell (t1 - t1_0)/T - a for
// t1 < t1_0 and ell (t1 - t1_0)/T - ell - a past t1_0; the average over a
// period is -(a + ell/2).
Rat global_degree(const ModelMonopole& m);

}  // namespace dmkh
