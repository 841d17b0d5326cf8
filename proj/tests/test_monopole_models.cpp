#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "dmkh/monopole.hpp"

using namespace dmkh;

namespace {

std::mt19937 rng(771231);

double urand(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

constexpr Cx I(0.0, 1.0);

// a deterministic admissible point set in the right half w-plane
std::vector<SamplePoint> sector_points(const ModelMonopole& m, int K) {
  std::vector<SamplePoint> pts;
  const double golden = 0.6180339887498949;
  for (int k = 0; k < K; ++k) {
    double theta = -0.7 + 1.4 * std::fmod((k + 1) * golden, 1.0);
    double rho = 1.5 + 2.5 * std::fmod((k + 1) * 0.41421356237309515, 1.0);
    double t = m.T * std::fmod((k + 1) * 0.7548776662466927, 1.0);
    pts.push_back({t, rho * std::exp(I * theta)});
  }
  return pts;
}

Cx wp_principal(Cx w, int p) {
  return p == 1 ? w : std::exp(std::log(w) / static_cast<double>(p));
}

// second-order central differences of the connection form, used as an
// independent oracle for the closed-form curvature
CurvForm curvature_fd(const ModelMonopole& m, double t, Cx w, double h) {
  auto A = [&](double tt, Cx ww) {
    return connection_form(m, SamplePoint{tt, wp_principal(ww, m.p)});
  };
  auto dt = [&](auto pick) {
    return (pick(A(t + h, w)) - pick(A(t - h, w))) / (2.0 * h);
  };
  auto dx = [&](auto pick) {
    return (pick(A(t, w + h)) - pick(A(t, w - h))) / (2.0 * h);
  };
  auto dy = [&](auto pick) {
    return (pick(A(t, w + I * h)) - pick(A(t, w - I * h))) / (2.0 * h);
  };
  auto dw = [&](auto pick) { return 0.5 * (dx(pick) - I * dy(pick)); };
  auto dwbar = [&](auto pick) { return 0.5 * (dx(pick) + I * dy(pick)); };
  auto At = [](const ConnForm& c) { return c.At; };
  auto Aw = [](const ConnForm& c) { return c.Aw; };
  auto Awbar = [](const ConnForm& c) { return c.Awbar; };
  CurvForm F;
  F.Ftw = dt(Aw) - dw(At);
  F.Ftwbar = dt(Awbar) - dwbar(At);
  F.Fwwbar = dw(Awbar) - dwbar(Aw);
  return F;
}

double curvature_fd_error(const ModelMonopole& m, double t, Cx w, double h) {
  CurvForm Fn = curvature_fd(m, t, w, h);
  CurvForm Fc = curvature_form(m, SamplePoint{t, wp_principal(w, m.p)});
  return std::abs(Fn.Ftw - Fc.Ftw) + std::abs(Fn.Ftwbar - Fc.Ftwbar) +
         std::abs(Fn.Fwwbar - Fc.Fwwbar);
}

}  // namespace

TEST_CASE("hodge star relations on dt^2 + dw dwbar") {
  HodgeReport rep = hodge_identities();
  CHECK(rep.star_dt_dw);
  CHECK(rep.star_dt_dwbar);
  CHECK(rep.star_dw_dwbar);
  CHECK(rep.star_squared_identity);
  CHECK(rep.ok());
}

TEST_CASE("charts: round trip, pinned values, lambda = 0 identity") {
  // lambda = 0 is the identity chart
  for (int k = 0; k < 100; ++k) {
    double t = urand(-2, 2);
    Cx w(urand(-3, 3), urand(-3, 3));
    Chart1Point q = to_chart1(0.0, t, w);
    CHECK(q.t1 == t);
    CHECK(q.beta1 == w);
  }
  // pinned: lambda = 1, t = 0, w = 1 -> (0, 2); lambda = i, t = 1, w = 0 -> (1, -2)
  {
    Chart1Point q = to_chart1(1.0, 0.0, 1.0);
    CHECK(q.t1 == doctest::Approx(0.0));
    CHECK(std::abs(q.beta1 - Cx(2.0)) < 1e-15);
    Chart1Point q2 = to_chart1(I, 1.0, 0.0);
    CHECK(q2.t1 == doctest::Approx(1.0));
    CHECK(std::abs(q2.beta1 - Cx(-2.0)) < 1e-15);
  }
  // round trip for several lambda
  for (Cx l : {Cx(0.0), Cx(1.0), Cx(0.0, 1.0), Cx(0.4, -0.7)}) {
    for (int k = 0; k < 50; ++k) {
      double t = urand(-2, 2);
      Cx w(urand(-3, 3), urand(-3, 3));
      Chart1Point q = to_chart1(l, t, w);
      double t2;
      Cx w2;
      from_chart1(l, q, t2, w2);
      CHECK(std::abs(t2 - t) < 1e-12);
      CHECK(std::abs(w2 - w) < 1e-12);
    }
  }
}

TEST_CASE("bogomolny residual vanishes for every closed-form family") {
  ModelMonopole basic = make_basic_lp_ell(2, 1);
  CHECK(bogomolny_residual(basic, {0.3, Cx(1.7, 0.4)}) < 1e-12);
  for (const SamplePoint& pt : sector_points(basic, 16))
    CHECK(bogomolny_residual(basic, pt) < 1e-12);

  ModelMonopole frob = make_frobenius({Cx(0.8, 0.3), Cx(0.0), Cx(0.25)}, 3);
  for (const SamplePoint& pt : sector_points(frob, 16))
    CHECK(bogomolny_residual(frob, pt) < 1e-12);

  ModelMonopole tame = make_tame(0.5, I);
  for (const SamplePoint& pt : sector_points(tame, 16))
    CHECK(bogomolny_residual(tame, pt) < 1e-12);

  ModelMonopole gg = make_global_gamma(Cx(1.0, 1.0));
  CHECK(bogomolny_residual(gg, {0.7, Cx(2.0, 1.0)}) == 0.0);

  CHECK_THROWS_AS(bogomolny_residual(basic, {0.3, Cx(0.0)}),
                  std::domain_error);
  ModelMonopole dirac = make_dirac_l(1, rat(-1, 2), rat(1, 3));
  CHECK_THROWS_AS(bogomolny_residual(dirac, {0.3, Cx(1.0)}),
                  std::invalid_argument);
}

TEST_CASE("closed-form curvature against finite differences of A") {
  struct Case {
    ModelMonopole m;
    double t;
    Cx w;
  };
  std::vector<Case> cases;
  cases.push_back({make_basic_lp_ell(1, 2), 0.4, Cx(2.0, 0.6)});
  cases.push_back(
      {make_frobenius({Cx(0.8, 0.3), Cx(0.5)}, 2), 0.2, Cx(2.5, 0.4)});
  cases.push_back({make_tame(0.5, Cx(0.3, 0.2)), 0.6, Cx(1.8, -0.5)});
  for (const Case& c : cases) {
    double e1 = curvature_fd_error(c.m, c.t, c.w, 1e-2);
    double e2 = curvature_fd_error(c.m, c.t, c.w, 5e-3);
    CHECK(e1 < 1e-3);
    double ratio = e1 / e2;
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
  }
  // flat model: both evaluations agree to rounding
  ModelMonopole gg = make_global_gamma(Cx(0.3, 0.8));
  CHECK(curvature_fd_error(gg, 0.3, Cx(1.0, 1.0), 1e-2) < 1e-13);
}

TEST_CASE("metric log") {
  ModelMonopole tame = make_tame(0.75, I);
  SamplePoint pt{0.1, Cx(2.0, 1.0)};
  CHECK(metric_log(tame, pt) ==
        doctest::Approx(1.5 * std::log(std::abs(Cx(2.0, 1.0)))));
  CHECK(metric_log(make_basic_lp_ell(1, 3), pt) == 0.0);
  CHECK(metric_log(make_global_gamma(I), pt) == 0.0);
  CHECK_THROWS_AS(metric_log(make_dirac_l(1, 0, 0), pt),
                  std::invalid_argument);
}

TEST_CASE("frames: BasicLpEll at lambda = 0") {
  for (int p : {1, 2}) {
    ModelMonopole m = make_basic_lp_ell(p, 2 * p - 1, 1.25);
    for (const SamplePoint& pt : sector_points(m, 8)) {
      FrameCheck fc = frame_check(m, pt);
      CHECK(fc.minihol < 1e-8);
      REQUIRE(fc.norm_dev.has_value());
      CHECK(*fc.norm_dev < 1e-12);
      REQUIRE(fc.gluing_dev.has_value());
      CHECK(*fc.gluing_dev < 1e-10);
    }
  }
  // no closed-form frame at lambda != 0
  ModelMonopole ml = make_basic_lp_ell(1, 1, 1.0, Cx(1.0));
  CHECK_THROWS_AS(frame_check(ml, {0.3, Cx(2.0, 0.5)}),
                  std::invalid_argument);
}

TEST_CASE("frames: Frobenius at lambda = 0 and lambda != 0") {
  std::vector<Cx> coeff{Cx(0.6, 0.2), Cx(0.4)};
  for (Cx l : {Cx(0.0), Cx(1.0, 0.5), Cx(0.0, 0.6)}) {
    ModelMonopole m = make_frobenius(coeff, 2, 1.0, l);
    for (const SamplePoint& pt : sector_points(m, 8)) {
      FrameCheck fc = frame_check(m, pt);
      CHECK(fc.minihol < 1e-8);
      CHECK_FALSE(fc.norm_dev.has_value());
      REQUIRE(fc.gluing_dev.has_value());
      CHECK(*fc.gluing_dev < 1e-10);
    }
  }
}

TEST_CASE("frames: Tame at lambda = 0 and lambda != 0") {
  for (Cx l : {Cx(0.0), Cx(0.4, 0.3)}) {
    ModelMonopole m = make_tame(0.5, Cx(0.3, 0.2), 1.0, l);
    for (const SamplePoint& pt : sector_points(m, 8)) {
      FrameCheck fc = frame_check(m, pt);
      CHECK(fc.minihol < 1e-8);
      REQUIRE(fc.gluing_dev.has_value());
      CHECK(*fc.gluing_dev < 1e-10);
    }
  }
}

TEST_CASE("frames: GlobalGamma, exact norm exp(-2 Im(gamma) t1)") {
  Cx gamma(0.3, 0.8);
  for (Cx l : {Cx(0.0), Cx(1.0), Cx(0.0, 1.0)}) {
    ModelMonopole m = make_global_gamma(gamma, 1.0, l);
    for (const SamplePoint& pt : sector_points(m, 8)) {
      FrameCheck fc = frame_check(m, pt);
      CHECK(fc.minihol < 1e-8);
      REQUIRE(fc.norm_dev.has_value());
      CHECK(*fc.norm_dev < 1e-12);
      REQUIRE(fc.gluing_dev.has_value());
      CHECK(*fc.gluing_dev < 1e-12);
    }
  }
  ModelMonopole dirac = make_dirac_l(2, 0, rat(1, 4));
  CHECK_THROWS_AS(frame_check(dirac, {0.3, Cx(1.0)}), std::invalid_argument);
}

TEST_CASE("gluing correction G(x) = 1 - log(1+x)/x = x/2 + O(x^2)") {
  for (Cx x : {Cx(0.1), Cx(0.0, 0.01), Cx(0.05, 0.05), Cx(-0.02, 0.03)}) {
    CHECK(std::abs(gluing_g_factor(x) - x / 2.0) <= 0.5 * std::norm(x));
  }
  CHECK(std::abs(gluing_g_factor(Cx(1e-4))) < 1e-4);
}

TEST_CASE("scattering monodromy by RK4") {
  // zero field: identity, exactly
  {
    MatCx f(2, 2);
    MonodromyResult r = monodromy(f, 1.0, 128);
    CHECK(std::abs(r.M(0, 0) - 1.0) == 0.0);
    CHECK(std::abs(r.M(0, 1)) == 0.0);
    CHECK(r.warning.empty());
  }
  // constant scalar field gamma: exp(2 i T gamma)
  Cx gamma(0.3, 0.8);
  double T = 1.3;
  {
    MatCx f(1, 1);
    f(0, 0) = gamma;
    MonodromyResult r = monodromy(f, T, 10000);
    CHECK(std::abs(r.M(0, 0) - std::exp(2.0 * I * T * gamma)) < 1e-8);
    // fourth-order convergence: halving the step divides the error by ~16
    double e1 =
        std::abs(monodromy(f, T, 400).M(0, 0) - std::exp(2.0 * I * T * gamma));
    double e2 =
        std::abs(monodromy(f, T, 800).M(0, 0) - std::exp(2.0 * I * T * gamma));
    double ratio = e1 / e2;
    CHECK(ratio > 14.0);
    CHECK(ratio < 18.0);
  }
  // nilpotent residue field N/w at w = 2: exp(2 i T N / 2) = I + i T N
  {
    MatCx f(2, 2);
    f(0, 1) = 0.5;
    MonodromyResult r = monodromy(f, 1.0, 10000);
    CHECK(std::abs(r.M(0, 0) - 1.0) < 1e-8);
    CHECK(std::abs(r.M(0, 1) - I) < 1e-8);
    CHECK(std::abs(r.M(1, 0)) < 1e-8);
    CHECK(std::abs(r.M(1, 1) - 1.0) < 1e-8);
    // agreement with the scaling-and-squaring reference
    MatCx ref = matcx_exp(f.scaled(2.0 * I));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::abs(r.M(i, j) - ref(i, j)) < 1e-8);
  }
  // low step counts carry a warning
  CHECK_FALSE(monodromy(MatCx(1, 1), 1.0, 50).warning.empty());
  CHECK(monodromy(MatCx(1, 1), 1.0, 200).warning.empty());
  CHECK_THROWS_AS(monodromy(MatCx(1, 1), 1.0, 0), std::invalid_argument);
}

TEST_CASE("matrix exponential reference") {
  MatCx D(2, 2);
  D(0, 0) = Cx(0.3, -0.4);
  D(1, 1) = Cx(-1.2, 2.0);
  MatCx E = matcx_exp(D);
  CHECK(std::abs(E(0, 0) - std::exp(D(0, 0))) < 1e-14);
  CHECK(std::abs(E(1, 1) - std::exp(D(1, 1))) < 1e-14);
  CHECK(std::abs(E(0, 1)) < 1e-16);
  MatCx N(2, 2);
  N(0, 1) = Cx(3.0, 1.0);
  MatCx EN = matcx_exp(N);
  CHECK(std::abs(EN(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(EN(0, 1) - N(0, 1)) < 1e-14);
}

TEST_CASE("contracted curvature identity in the lambda-chart") {
  for (Cx l : {Cx(0.0), Cx(1.0), Cx(0.0, 1.0)}) {
    std::vector<ModelMonopole> models;
    models.push_back(make_basic_lp_ell(1, 2, 1.0, l));
    models.push_back(make_frobenius({Cx(0.6, 0.2), Cx(0.4)}, 2, 1.0, l));
    models.push_back(make_tame(0.5, Cx(0.3, 0.2), 1.0, l));
    models.push_back(make_global_gamma(Cx(0.3, 0.8), 1.0, l));
    for (const ModelMonopole& m : models)
      for (const SamplePoint& pt : sector_points(m, 8))
        CHECK(g_operator_check(m, pt) < 1e-10);
  }
}

TEST_CASE("exact global degrees of the rank-one models") {
  CHECK(global_degree(make_dirac_l(1, rat(-1, 2), rat(1, 3))) == 0);
  CHECK(global_degree(make_dirac_l(2, 0, rat(1, 4))) == rat(-1));
  CHECK(global_degree(make_global_gamma(Cx(1.0, 1.0))) == 0);

  std::uniform_int_distribution<long> di(-5, 5);
  std::uniform_int_distribution<long> dp(1, 9);
  for (int k = 0; k < 20; ++k) {
    int ell = static_cast<int>(di(rng));
    Rat a = rat(di(rng), dp(rng));
    Rat T = rat(dp(rng), dp(rng));
    Rat t0 = Rat(T * rat(dp(rng) - 1, 9));
    ModelMonopole m = make_dirac_l(ell, a, t0, T);
    Rat expected = Rat(-(a + rat(ell, 2)));
    CHECK(global_degree(m) == expected);
  }

  CHECK_THROWS_AS(make_dirac_l(1, 0, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_dirac_l(1, 0, 0, -1), std::invalid_argument);
  CHECK_THROWS_AS(global_degree(make_tame(0.5, I)), std::invalid_argument);
}
