// Closed-form model monopoles and their numerical certification.
#include "dmkh/monopole.hpp"

#include <cmath>
#include <stdexcept>

namespace dmkh {

namespace {

constexpr Cx kI(0.0, 1.0);

double sq_abs(Cx z) { return std::norm(z); }

void require_punctured(const ModelMonopole& m, const SamplePoint& pt) {
  if (m.family == ModelMonopole::Family::DiracL)
    throw std::invalid_argument(
        "monopole: DiracL has no closed-form metric; only global_degree");
  if (m.family != ModelMonopole::Family::GlobalGamma && pt.wp == Cx(0.0))
    throw std::domain_error("monopole: w = 0 is outside the domain");
}

Cx w_of(const ModelMonopole& m, const SamplePoint& pt) {
  Cx w = 1.0;
  for (int k = 0; k < m.p; ++k) w *= pt.wp;
  return w;
}

// Frobenius data: frak_a(w_p) = sum_k c_k w_p^k, f = d frak_a / dw
Cx frak_a_at(const ModelMonopole& m, Cx wp) {
  Cx v = 0.0;
  for (size_t k = m.frak_a_coeff.size(); k-- > 0;)
    v = (v + m.frak_a_coeff[k]) * wp;
  return v;
}

Cx frob_f(const ModelMonopole& m, Cx wp) {
  // f = p^{-1} w_p^{1-p} d frak_a / d w_p = sum_k (k/p) c_k w_p^{k-p}
  Cx v = 0.0;
  for (size_t j = 0; j < m.frak_a_coeff.size(); ++j) {
    int k = static_cast<int>(j) + 1;
    v += (static_cast<double>(k) / m.p) * m.frak_a_coeff[j] *
         std::pow(wp, k - m.p);
  }
  return v;
}

Cx frob_df(const ModelMonopole& m, Cx wp) {
  // df/dw = sum_k (k (k-p) / p^2) c_k w_p^{k-2p}
  Cx v = 0.0;
  for (size_t j = 0; j < m.frak_a_coeff.size(); ++j) {
    int k = static_cast<int>(j) + 1;
    v += (static_cast<double>(k) * (k - m.p) / (static_cast<double>(m.p) * m.p)) *
         m.frak_a_coeff[j] * std::pow(wp, k - 2 * m.p);
  }
  return v;
}

Cx wp_local(const ModelMonopole& m, Cx w) {
  if (m.p == 1) return w;
  return std::exp(std::log(w) / static_cast<double>(m.p));
}

// ---------------------------------------------------------------------------
// fourth-order central differences
// ---------------------------------------------------------------------------

template <typename F>
Cx diff4(const F& f, double h) {
  // derivative of f: R -> C at 0
  return (f(-2 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2 * h)) / (12.0 * h);
}

// Wirtinger derivatives of F: C -> C in its complex argument
template <typename F>
Cx d_dz(const F& f, double h) {
  Cx dx = diff4([&](double s) { return f(Cx(s, 0.0)); }, h);
  Cx dy = diff4([&](double s) { return f(Cx(0.0, s)); }, h);
  return 0.5 * (dx - kI * dy);
}

template <typename F>
Cx d_dzbar(const F& f, double h) {
  Cx dx = diff4([&](double s) { return f(Cx(s, 0.0)); }, h);
  Cx dy = diff4([&](double s) { return f(Cx(0.0, s)); }, h);
  return 0.5 * (dx + kI * dy);
}

// lambda-chart mini-holomorphic operator coefficients on the frame e:
// d_{E,beta1bar} e = e * cbar, d_{E,t1} e = e * ct
Cx coeff_beta1bar(const ModelMonopole& m, const SamplePoint& pt) {
  ConnForm A = connection_form(m, pt);
  Cx phi = higgs_field(m, pt);
  Cx l = m.lambda;
  double den = 1.0 + sq_abs(l);
  return ((kI * l / 2.0) * A.At + A.Awbar - (l / 2.0) * phi) / den;
}

Cx coeff_t1(const ModelMonopole& m, const SamplePoint& pt) {
  ConnForm A = connection_form(m, pt);
  Cx phi = higgs_field(m, pt);
  Cx l = m.lambda;
  double den = 1.0 + sq_abs(l);
  return ((1.0 - sq_abs(l)) / den) * A.At - (2.0 * kI * l / den) * A.Aw +
         (2.0 * kI * std::conj(l) / den) * A.Awbar - kI * phi;
}

SamplePoint point_at(const ModelMonopole& m, double t1, Cx beta1) {
  Chart1Point q{t1, beta1};
  double t;
  Cx w;
  from_chart1(m.lambda, q, t, w);
  return SamplePoint{t, wp_local(m, w)};
}

// closed-form d(log h(e,e))/d beta1 in the lambda-chart
Cx dlog_h_dbeta1(const ModelMonopole& m, const SamplePoint& pt) {
  if (m.family != ModelMonopole::Family::Tame) return 0.0;
  // log h = a (log w + log wbar); w = (beta1 - 2 i lambda t1)/(1+|lambda|^2)
  Cx w = w_of(m, pt);
  return m.a / ((1.0 + sq_abs(m.lambda)) * w);
}

// ---------------------------------------------------------------------------
// frame scalars u = e * g in the lambda-chart
// ---------------------------------------------------------------------------

Cx frame_scalar(const ModelMonopole& m, double t1, Cx beta1) {
  SamplePoint pt = point_at(m, t1, beta1);
  Cx w = w_of(m, pt);
  Cx l = m.lambda;
  double den = 1.0 + sq_abs(l);
  switch (m.family) {
    case ModelMonopole::Family::BasicLpEll: {
      if (l != Cx(0.0))
        throw std::invalid_argument(
            "monopole: no closed-form frame for BasicLpEll at lambda != 0");
      double c = static_cast<double>(m.ell) / (m.p * m.T);
      return std::exp(-c * pt.t * std::log(std::abs(w)));
    }
    case ModelMonopole::Family::Frobenius: {
      if (l == Cx(0.0)) return std::exp(2.0 * kI * pt.t * frob_f(m, pt.wp));
      Cx w0 = beta1 / den;
      Cx fa = frak_a_at(m, pt.wp);
      Cx fa0 = frak_a_at(m, wp_local(m, w0));
      return std::exp(-l * std::conj(fa) + std::conj(l) * fa) *
             std::exp(-(1.0 / l + std::conj(l)) * (fa - fa0));
    }
    case ModelMonopole::Family::Tame: {
      if (l == Cx(0.0)) return std::exp(-2.0 * kI * m.alpha * pt.t / w);
      Cx c = -m.alpha + l * m.a + l * l * std::conj(m.alpha);
      return std::exp(std::conj(m.alpha) * l * 2.0 * std::log(std::abs(w))) *
             std::exp(-(c / l) * std::log(den * w / beta1));
    }
    case ModelMonopole::Family::GlobalGamma: {
      Cx g = m.gamma;
      return std::exp((-l * std::conj(g) * std::conj(beta1) +
                       std::conj(l) * g * beta1 +
                       2.0 * kI * (g - sq_abs(l) * std::conj(g)) * t1) /
                      den);
    }
    default:
      throw std::invalid_argument("monopole: family has no stated frame");
  }
}

// stated cocycle factor g(kappa(point)) / g(point)
Cx gluing_factor(const ModelMonopole& m, double t1, Cx beta1) {
  SamplePoint pt = point_at(m, t1, beta1);
  Cx w = w_of(m, pt);
  Cx l = m.lambda;
  double den = 1.0 + sq_abs(l);
  switch (m.family) {
    case ModelMonopole::Family::BasicLpEll:
      return std::pow(std::abs(pt.wp), -static_cast<double>(m.ell));
    case ModelMonopole::Family::Frobenius: {
      if (l == Cx(0.0)) return std::exp(2.0 * kI * m.T * frob_f(m, pt.wp));
      Cx w0k = (beta1 + 2.0 * kI * l * m.T) / den;
      Cx w0 = beta1 / den;
      return std::exp((1.0 / l + std::conj(l)) *
                      (frak_a_at(m, wp_local(m, w0k)) -
                       frak_a_at(m, wp_local(m, w0))));
    }
    case ModelMonopole::Family::Tame: {
      if (l == Cx(0.0)) return std::exp(-2.0 * kI * m.alpha * m.T / w);
      Cx c = -m.alpha + l * m.a + l * l * std::conj(m.alpha);
      return std::exp((c / l) * std::log((beta1 + 2.0 * kI * l * m.T) / beta1));
    }
    case ModelMonopole::Family::GlobalGamma:
      return std::exp(2.0 * kI * m.gamma * m.T);
    default:
      throw std::invalid_argument("monopole: family has no stated frame");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// constructors
// ---------------------------------------------------------------------------

ModelMonopole make_basic_lp_ell(int p, int ell, double T, Cx lambda) {
  if (p <= 0) throw std::invalid_argument("monopole: p must be positive");
  ModelMonopole m;
  m.family = ModelMonopole::Family::BasicLpEll;
  m.p = p;
  m.ell = ell;
  m.T = T;
  m.lambda = lambda;
  return m;
}

ModelMonopole make_frobenius(std::vector<Cx> frak_a_coeff, int p, double T,
                             Cx lambda) {
  if (p <= 0) throw std::invalid_argument("monopole: p must be positive");
  if (static_cast<int>(frak_a_coeff.size()) > p)
    throw std::invalid_argument("monopole: need deg frak_a <= p");
  ModelMonopole m;
  m.family = ModelMonopole::Family::Frobenius;
  m.frak_a_coeff = std::move(frak_a_coeff);
  m.p = p;
  m.T = T;
  m.lambda = lambda;
  return m;
}

ModelMonopole make_tame(double a, Cx alpha, double T, Cx lambda) {
  ModelMonopole m;
  m.family = ModelMonopole::Family::Tame;
  m.a = a;
  m.alpha = alpha;
  m.T = T;
  m.lambda = lambda;
  return m;
}

ModelMonopole make_global_gamma(Cx gamma, double T, Cx lambda) {
  ModelMonopole m;
  m.family = ModelMonopole::Family::GlobalGamma;
  m.gamma = gamma;
  m.T = T;
  m.lambda = lambda;
  return m;
}

ModelMonopole make_dirac_l(int ell, const Rat& weight, const Rat& t1_0,
                           const Rat& T, Cx lambda) {
  if (!(T > 0)) throw std::invalid_argument("monopole: T must be positive");
  if (t1_0 < 0 || !(t1_0 < T))
    throw std::invalid_argument("monopole: need 0 <= t1_0 < T");
  ModelMonopole m;
  m.family = ModelMonopole::Family::DiracL;
  m.ell = ell;
  m.weight = weight;
  m.t1_0 = t1_0;
  m.T_exact = T;
  m.T = mpq_class(T).get_d();
  m.lambda = lambda;
  return m;
}

// ---------------------------------------------------------------------------
// charts
// ---------------------------------------------------------------------------

Chart1Point to_chart1(Cx lambda, double t, Cx w) {
  Chart1Point q;
  q.t1 = t + std::imag(lambda * std::conj(w));
  q.beta1 = w + 2.0 * kI * lambda * t + lambda * lambda * std::conj(w);
  return q;
}

void from_chart1(Cx lambda, const Chart1Point& q, double& t, Cx& w) {
  w = (q.beta1 - 2.0 * kI * lambda * q.t1) / (1.0 + sq_abs(lambda));
  t = q.t1 - std::imag(lambda * std::conj(w));
}

// ---------------------------------------------------------------------------
// closed-form evaluators
// ---------------------------------------------------------------------------

ConnForm connection_form(const ModelMonopole& m, const SamplePoint& pt) {
  require_punctured(m, pt);
  Cx w = w_of(m, pt);
  switch (m.family) {
    case ModelMonopole::Family::BasicLpEll: {
      double c = static_cast<double>(m.ell) / (m.p * m.T);
      return {0.0, -c * pt.t / (2.0 * w), c * pt.t / (2.0 * std::conj(w))};
    }
    case ModelMonopole::Family::Frobenius: {
      Cx f = frob_f(m, pt.wp);
      return {-kI * (f + std::conj(f)), 0.0, 0.0};
    }
    case ModelMonopole::Family::Tame:
      return {kI * (m.alpha / w + std::conj(m.alpha) / std::conj(w)),
              m.a / w, 0.0};
    case ModelMonopole::Family::GlobalGamma:
      return {-kI * (m.gamma + std::conj(m.gamma)), 0.0, 0.0};
    default:
      throw std::invalid_argument("monopole: DiracL has no connection form");
  }
}

Cx higgs_field(const ModelMonopole& m, const SamplePoint& pt) {
  require_punctured(m, pt);
  Cx w = w_of(m, pt);
  switch (m.family) {
    case ModelMonopole::Family::BasicLpEll:
      return kI * (static_cast<double>(m.ell) / (m.p * m.T)) *
             std::log(std::abs(w));
    case ModelMonopole::Family::Frobenius: {
      Cx f = frob_f(m, pt.wp);
      return f - std::conj(f);
    }
    case ModelMonopole::Family::Tame:
      return -m.alpha / w + std::conj(m.alpha) / std::conj(w);
    case ModelMonopole::Family::GlobalGamma:
      return m.gamma - std::conj(m.gamma);
    default:
      throw std::invalid_argument("monopole: DiracL has no Higgs field");
  }
}

CurvForm curvature_form(const ModelMonopole& m, const SamplePoint& pt) {
  require_punctured(m, pt);
  Cx w = w_of(m, pt);
  switch (m.family) {
    case ModelMonopole::Family::BasicLpEll: {
      double c = static_cast<double>(m.ell) / (2.0 * m.p * m.T);
      return {-c / w, c / std::conj(w), 0.0};
    }
    case ModelMonopole::Family::Frobenius: {
      Cx df = frob_df(m, pt.wp);
      return {kI * df, kI * std::conj(df), 0.0};
    }
    case ModelMonopole::Family::Tame:
      return {kI * m.alpha / (w * w),
              kI * std::conj(m.alpha) / (std::conj(w) * std::conj(w)), 0.0};
    case ModelMonopole::Family::GlobalGamma:
      return {0.0, 0.0, 0.0};
    default:
      throw std::invalid_argument("monopole: DiracL has no curvature form");
  }
}

HiggsDeriv higgs_derivative(const ModelMonopole& m, const SamplePoint& pt) {
  require_punctured(m, pt);
  Cx w = w_of(m, pt);
  switch (m.family) {
    case ModelMonopole::Family::BasicLpEll: {
      Cx c = kI * (static_cast<double>(m.ell) / (2.0 * m.p * m.T));
      return {0.0, c / w, c / std::conj(w)};
    }
    case ModelMonopole::Family::Frobenius: {
      Cx df = frob_df(m, pt.wp);
      return {0.0, df, -std::conj(df)};
    }
    case ModelMonopole::Family::Tame:
      return {0.0, m.alpha / (w * w),
              -std::conj(m.alpha) / (std::conj(w) * std::conj(w))};
    case ModelMonopole::Family::GlobalGamma:
      return {0.0, 0.0, 0.0};
    default:
      throw std::invalid_argument("monopole: DiracL has no Higgs field");
  }
}

double metric_log(const ModelMonopole& m, const SamplePoint& pt) {
  require_punctured(m, pt);
  if (m.family == ModelMonopole::Family::Tame)
    return 2.0 * m.a * std::log(std::abs(w_of(m, pt)));
  return 0.0;
}

double bogomolny_residual(const ModelMonopole& m, const SamplePoint& pt) {
  CurvForm F = curvature_form(m, pt);
  HiggsDeriv D = higgs_derivative(m, pt);
  // F = * nabla phi in components: F_tw = i D_w, F_twbar = -i D_wbar,
  // F_wwbar = (i/2) D_t
  return std::abs(F.Ftw - kI * D.Dw) + std::abs(F.Ftwbar + kI * D.Dwbar) +
         std::abs(F.Fwwbar - (kI / 2.0) * D.Dt);
}

// ---------------------------------------------------------------------------
// Hodge star
// ---------------------------------------------------------------------------

HodgeReport hodge_identities() {
  // real orthonormal coframe (dt, dx, dy), orientation dt dx dy:
  // *dt = dx dy, *dx = dy dt, *dy = dt dx;
  // *(dt dx) = dy, *(dx dy) = dt, *(dy dt) = dx.
  // Complex combinations dw = dx + i dy, dwbar = dx - i dy are assembled
  // from these and compared with the displayed relations.
  struct One {
    Cx t, x, y;
  };
  struct Two {
    Cx tx, ty, xy;
  };
  auto star2 = [](const Two& f) -> One {
    return {f.xy, -f.ty, f.tx};  // *(dt dx)=dy, *(dt dy)=-dx, *(dx dy)=dt
  };
  auto star1 = [](const One& f) -> Two {
    return {f.y, -f.x, f.t};  // *dt=dx dy, *dx=-dt dy, *dy=dt dx
  };
  auto eq1 = [](const One& a, const One& b) {
    return a.t == b.t && a.x == b.x && a.y == b.y;
  };

  Two dt_dw{1.0, kI, 0.0};     // dt (dx + i dy)
  Two dt_dwbar{1.0, -kI, 0.0};  // dt (dx - i dy)
  Two dw_dwbar{0.0, 0.0, -2.0 * kI};
  One dw{0.0, 1.0, kI};
  One dwbar{0.0, 1.0, -kI};
  One dt{1.0, 0.0, 0.0};

  auto scale1 = [](Cx s, const One& f) -> One {
    return {s * f.t, s * f.x, s * f.y};
  };

  HodgeReport rep;
  rep.star_dt_dw = eq1(star2(dt_dw), scale1(-kI, dw));
  rep.star_dt_dwbar = eq1(star2(dt_dwbar), scale1(kI, dwbar));
  rep.star_dw_dwbar = eq1(star2(dw_dwbar), scale1(-2.0 * kI, dt));
  auto roundtrip = [&](const One& f) { return eq1(star2(star1(f)), f); };
  rep.star_squared_identity = roundtrip(dt) && roundtrip(dw) && roundtrip(dwbar);
  return rep;
}

// ---------------------------------------------------------------------------
// frame check
// ---------------------------------------------------------------------------

Cx gluing_g_factor(Cx x) { return 1.0 - std::log(1.0 + x) / x; }

FrameCheck frame_check(const ModelMonopole& m, const SamplePoint& pt) {
  require_punctured(m, pt);
  Cx w = w_of(m, pt);
  Chart1Point q = to_chart1(m.lambda, pt.t, w);
  Cx g = frame_scalar(m, q.t1, q.beta1);

  FrameCheck out;
  // mini-holomorphicity: d_{t1} g + c_{t1} g and d_{beta1bar} g + cbar g
  double ht = 1e-3 * std::max(1.0, m.T);
  double hb = 1e-3 * std::max(1.0, std::abs(q.beta1));
  Cx dgt = diff4([&](double s) { return frame_scalar(m, q.t1 + s, q.beta1); },
                 ht);
  Cx dgb = d_dzbar(
      [&](Cx s) { return frame_scalar(m, q.t1, q.beta1 + s); }, hb);
  Cx rt = dgt + coeff_t1(m, pt) * g;
  Cx rb = dgb + coeff_beta1bar(m, pt) * g;
  double scale = std::abs(g);
  out.minihol = (std::abs(rt) + std::abs(rb)) / scale;

  // stated exact norms
  if (m.family == ModelMonopole::Family::BasicLpEll) {
    double target = std::pow(std::abs(w),
                             -static_cast<double>(m.ell) * pt.t / (m.p * m.T));
    out.norm_dev = std::abs(std::abs(g) - target) / target;
  } else if (m.family == ModelMonopole::Family::GlobalGamma) {
    double target = std::exp(-2.0 * std::imag(m.gamma) * q.t1);
    double norm = std::abs(g) * std::exp(0.5 * metric_log(m, pt));
    out.norm_dev = std::abs(norm - target) / target;
  }

  // cocycle: kappa(t1, beta1) = (t1 + T, beta1 + 2 i lambda T)
  Cx gk = frame_scalar(m, q.t1 + m.T, q.beta1 + 2.0 * kI * m.lambda * m.T);
  Cx factor = gluing_factor(m, q.t1, q.beta1);
  out.gluing_dev = std::abs(gk / g - factor) / std::abs(factor);
  return out;
}

// ---------------------------------------------------------------------------
// monodromy
// ---------------------------------------------------------------------------

MatCx matcx_exp(const MatCx& A) {
  double norm = 0.0;
  for (const Cx& v : A.a) norm = std::max(norm, std::abs(v));
  int s = 0;
  while (norm > 0.5) {
    norm /= 2.0;
    ++s;
  }
  MatCx B = A.scaled(Cx(std::ldexp(1.0, -s)));
  MatCx acc = MatCx::identity(A.n, Cx(1.0));
  MatCx term = acc;
  for (int k = 1; k <= 20; ++k) {
    term = term * B;
    term = term.scaled(Cx(1.0 / k));
    acc = acc + term;
  }
  for (int k = 0; k < s; ++k) acc = acc * acc;
  return acc;
}

MonodromyResult monodromy(const MatCx& f, double T, int steps) {
  if (steps <= 0) throw std::invalid_argument("monodromy: steps must be > 0");
  MonodromyResult out;
  if (steps < 100) out.warning = "step count below 100; accuracy not certified";
  int r = f.n;
  MatCx B = f.scaled(2.0 * kI);  // sigma' = 2 i f sigma
  MatCx S = MatCx::identity(r, Cx(1.0));
  double h = T / steps;
  for (int k = 0; k < steps; ++k) {
    // classical RK4 for the linear autonomous system S' = B S
    MatCx k1 = B * S;
    MatCx k2 = B * (S + k1.scaled(Cx(h / 2.0)));
    MatCx k3 = B * (S + k2.scaled(Cx(h / 2.0)));
    MatCx k4 = B * (S + k3.scaled(Cx(h)));
    S = S + (k1 + k2.scaled(Cx(2.0)) + k3.scaled(Cx(2.0)) + k4)
                .scaled(Cx(h / 6.0));
  }
  out.M = S;
  return out;
}

// ---------------------------------------------------------------------------
// contracted curvature identity
// ---------------------------------------------------------------------------

double g_operator_check(const ModelMonopole& m, const SamplePoint& pt) {
  require_punctured(m, pt);
  Cx w = w_of(m, pt);
  Chart1Point q = to_chart1(m.lambda, pt.t, w);
  double den = 1.0 + sq_abs(m.lambda);

  auto cbar_at = [&](Cx beta1) {
    return coeff_beta1bar(m, point_at(m, q.t1, beta1));
  };
  auto c_at = [&](Cx beta1) {
    SamplePoint p2 = point_at(m, q.t1, beta1);
    return dlog_h_dbeta1(m, p2) - std::conj(coeff_beta1bar(m, p2));
  };

  double hb = 1e-3 * std::max(1.0, std::abs(q.beta1));
  Cx d_cbar = d_dz([&](Cx s) { return cbar_at(q.beta1 + s); }, hb);
  Cx d_c = d_dzbar([&](Cx s) { return c_at(q.beta1 + s); }, hb);
  Cx commutator = d_cbar - d_c;

  Cx dphi_t = higgs_derivative(m, pt).Dt;  // nabla_{h,t} phi (rank one)
  Cx lhs = den * den * commutator + (kI / 2.0) * den * dphi_t;
  return std::abs(lhs);
}

// ---------------------------------------------------------------------------
// exact degrees
// ---------------------------------------------------------------------------

Rat global_degree(const ModelMonopole& m) {
  if (m.family == ModelMonopole::Family::GlobalGamma) return Rat(-m.weight);
  if (m.family != ModelMonopole::Family::DiracL)
    throw std::invalid_argument(
        "monopole: exact degree only for GlobalGamma and DiracL");
  // per-slice degree: ell (t1 - t1_0)/T - a on (0, t1_0),
  //                   ell (t1 - t1_0)/T - ell - a on (t1_0, T)
  Rat T = m.T_exact;
  Rat t0 = m.t1_0;
  Rat a = m.weight;
  Rat slope = rat(m.ell, 1) / T;
  auto integrate = [&](const Rat& mm, const Rat& b, const Rat& x,
                       const Rat& y) {
    return Rat(mm * (y * y - x * x) / 2 + b * (y - x));
  };
  Rat b1 = Rat(-slope * t0 - a);
  Rat b2 = Rat(b1 - m.ell);
  Rat total = integrate(slope, b1, 0, t0) + integrate(slope, b2, t0, T);
  return Rat(total / T);
}

}  // namespace dmkh
