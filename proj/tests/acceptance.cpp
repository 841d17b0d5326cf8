// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dmkh/manifest.hpp"
#include "dmkh/report.hpp"
#include "dmkh/sweep.hpp"

using namespace dmkh;

namespace {

std::mt19937 rng(402653189);

GQ rand_gq(int span) {
  std::uniform_int_distribution<long> d(-span, span);
  std::uniform_int_distribution<long> dp(1, 3);
  return GQ(rat(d(rng), dp(rng)), rat(d(rng), dp(rng)));
}

Rat rand_rat(int num_span, int den_span) {
  std::uniform_int_distribution<long> dn(-num_span, num_span);
  std::uniform_int_distribution<long> dd(1, den_span);
  return rat(dn(rng), dd(rng));
}

Poly beta_poly(std::initializer_list<long> coeffs) {
  Poly p;
  int k = 0;
  for (long c : coeffs) p = p + Poly::monomial(GQ(c), k++);
  return p;
}

bool check(bool cond, const char* what, std::string& detail) {
  if (!cond && detail.empty()) detail = what;
  return cond;
}

// ---------------------------------------------------------------------------
// criterion bodies
// ---------------------------------------------------------------------------

bool c1_newton_polygon(std::string& detail) {
  bool ok = true;
  auto exB = build_example_B({GQ(0), GQ(1), GQ(-1)}, GQ(1), beta_poly({1, 0, 1}),
                             {Rat(0), Rat(0), Rat(0)}, Rat(0), Rat(0));
  SlopeDecomposition nb = newton_polygon(exB.pdm.module);
  ok &= check(nb.components.size() == 2, "example B: slope count", detail);
  if (nb.components.size() == 2) {
    ok &= check(nb.components[0].omega == Rat(1) &&
                    nb.components[0].multiplicity == 1,
                "example B: slope 1 with r = 1", detail);
    ok &= check(nb.components[1].omega == Rat(2) &&
                    nb.components[1].multiplicity == 1,
                "example B: slope 2 with r = 1", detail);
  }
  auto exA = build_example_A({GQ(0)}, {1}, {Rat(0)}, {rat(-1, 2)});
  SlopeDecomposition na = newton_polygon(exA.pdm.module);
  ok &= check(na.components.size() == 1 && na.components[0].omega == rat(1, 2),
              "example A: single slope 1/2", detail);
  ok &= check(na.components.size() == 1 && na.components[0].multiplicity == 2,
              "example A: multiplicity 2", detail);
  ok &= check(na.p == 2, "example A: ramification 2", detail);
  return ok;
}

bool c2_degree_closed_forms(std::string& detail) {
  bool ok = true;
  std::uniform_int_distribution<int> dn(1, 3), dl(1, 3);
  // family A, odd and even totals, >= 20 tuples each
  for (int parity = 0; parity < 2; ++parity) {
    for (int k = 0; k < 20; ++k) {
      int n = dn(rng);
      std::vector<GQ> S;
      std::vector<long> ell;
      std::vector<Rat> t;
      long total = 0;
      for (int j = 0; j < n; ++j) {
        S.push_back(GQ(Rat(j)) + GQ(Rat(0), rat(k + 1, 2)));
        long e = dl(rng);
        ell.push_back(e);
        total += e;
        t.push_back(abs(rand_rat(3, 7)) / 4);
      }
      if ((total % 2 == 0) != (parity == 0)) {
        ell.back() += 1;
        total += 1;
      }
      std::vector<Rat> d;
      if (total % 2 == 0) {
        d = {rand_rat(3, 4), rand_rat(3, 4)};
      } else {
        d = {rand_rat(3, 4)};
      }
      auto ex = build_example_A(S, ell, t, d);
      ok &= check(parabolic_degree(ex.pdm) == ex.closed_form,
                  "example A: closed form", detail);
      // independent summand-by-summand evaluation
      Rat sum = filtered_bundle_degree_P1(ex.pdm);
      for (const auto& rec : singularity_data(ex.pdm.module, ex.pdm.finite))
        sum += (Rat(1) - rec.t / ex.pdm.module.T) * rec.jump;
      for (const auto& c : newton_polygon(ex.pdm.module).components)
        sum -= c.omega / 2 * Rat(c.multiplicity);
      ok &= check(sum == ex.closed_form, "example A: summand-by-summand",
                  detail);
    }
  }
  // family B, >= 20 tuples
  for (int k = 0; k < 20; ++k) {
    std::vector<GQ> roots = {GQ(0), GQ(Rat(k + 1)), GQ(Rat(-k - 1))};
    Poly Q = beta_poly({1, 0, 1}) + Poly(rand_gq(2));
    std::vector<Rat> t = {abs(rand_rat(3, 7)) / 4, abs(rand_rat(3, 7)) / 4,
                          abs(rand_rat(3, 7)) / 4};
    auto ex = build_example_B(roots, rand_gq(2) + GQ(5), Q, t, rand_rat(4, 3),
                              rand_rat(4, 3));
    ok &= check(parabolic_degree(ex.pdm) == ex.closed_form,
                "example B: closed form", detail);
    Rat sum = filtered_bundle_degree_P1(ex.pdm);
    for (const auto& rec : singularity_data(ex.pdm.module, ex.pdm.finite))
      sum += (Rat(1) - rec.t / ex.pdm.module.T) * rec.jump;
    for (const auto& c : newton_polygon(ex.pdm.module).components)
      sum -= c.omega / 2 * Rat(c.multiplicity);
    ok &= check(sum == ex.closed_form, "example B: summand-by-summand", detail);
  }
  return ok;
}

MatRF rand_basis(int r, const GQ& x) {
  std::uniform_int_distribution<int> dpow(-2, 2);
  while (true) {
    MatRF B(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        B(i, j) = RF(Poly(rand_gq(2)) + Poly::monomial(rand_gq(2), 1));
    if (mat_det(B).is_zero()) continue;
    for (int j = 0; j < r; ++j) {
      int e = dpow(rng);
      RF f = (e >= 0) ? RF((Poly::var() - Poly(x)).pow(e))
                      : RF(Poly(GQ(1)), (Poly::var() - Poly(x)).pow(-e));
      for (int i = 0; i < r; ++i) B(i, j) = B(i, j) * f;
    }
    return B;
  }
}

bool c3_lattice_degree(std::string& detail) {
  bool ok = true;
  // example A: deg(L_{a,1}, L_{a,0}) = -ell(a) at each a in S
  std::vector<GQ> S = {GQ(0), GQ(1), GQ(-2L)};
  std::vector<long> ell = {1, 2, 3};
  MatRF phi(2, 2);
  Poly P(GQ(1));
  for (size_t j = 0; j < S.size(); ++j)
    P = P * (Poly::var() - Poly(S[j])).pow(static_cast<int>(ell[j]));
  phi(0, 1) = RF(P);
  phi(1, 0) = RF(GQ(1));
  DiffModule mod = make_module(GQ(0), Rat(1), 2, phi);
  for (size_t j = 0; j < S.size(); ++j) {
    Lattice L0 = standard_lattice(mod, S[j]);
    Lattice L1 = phi_preimage_lattice(mod, S[j]);
    ok &= check(lattice_degree(L1, L0) == -static_cast<int>(ell[j]),
                "deg(L1, L0) = -ell(a)", detail);
  }
  // cocycle law + Smith oracle on 50 random instances
  GQ x0(Rat(1), Rat(1));
  for (int k = 0; k < 50; ++k) {
    int r = (k % 2 == 0) ? 2 : 3;
    Lattice L1{x0, rand_basis(r, x0)};
    Lattice L2{x0, rand_basis(r, x0)};
    Lattice L3{x0, rand_basis(r, x0)};
    ok &= check(lattice_degree(L1, L3) ==
                    lattice_degree(L1, L2) + lattice_degree(L2, L3),
                "cocycle law", detail);
    ok &= check(lattice_degree_smith(L1, L2) == lattice_degree(L1, L2),
                "Smith oracle", detail);
    ok &= check(lattice_degree_smith(L1, L3) == lattice_degree(L1, L3),
                "Smith oracle", detail);
  }
  return ok;
}

bool c4_stability(std::string& detail) {
  bool ok = true;
  auto exA = build_example_A({GQ(0)}, {1}, {Rat(0)}, {rat(-1, 2)});
  ok &= check(stability_check(exA.pdm).status == StabilityStatus::Stable,
              "example A stable", detail);
  auto exB = build_example_B({GQ(0), GQ(1), GQ(-1)}, GQ(1), beta_poly({0, 0, 1}),
                             {Rat(0), Rat(0), Rat(0)}, Rat(0), Rat(0));
  ok &= check(stability_check(exB.pdm).status == StabilityStatus::Stable,
              "example B stable", detail);
  ParabolicDifferenceModule diag;
  {
    MatRF phi(2, 2);
    phi(0, 0) = RF::var();
    phi(1, 1) = RF(GQ(1));
    diag.module = make_module(GQ(0), Rat(1), 2, phi);
    diag.adapted_basis = mps_identity(2);
    diag.weights = {Rat(0), Rat(0)};
  }
  StabilityVerdict vd = stability_check(diag);
  ok &= check(vd.status == StabilityStatus::Unstable, "diag unstable", detail);
  ok &= check(!vd.witness.empty(), "diag witness reported", detail);
  // regression set: raising the bound never flips a verdict
  std::vector<ParabolicDifferenceModule> cases;
  for (int k = 0; k < 9; ++k) {
    std::vector<long> ell = {1 + (k % 3), 1 + ((k + 1) % 2)};
    cases.push_back(build_example_A({GQ(0), GQ(Rat(k + 1))}, ell,
                                    {abs(rand_rat(3, 7)) / 4, abs(rand_rat(3, 7)) / 4},
                                    (ell[0] + ell[1]) % 2 == 0
                                        ? std::vector<Rat>{rand_rat(2, 3), rand_rat(2, 3)}
                                        : std::vector<Rat>{rand_rat(2, 3)})
                        .pdm);
  }
  for (int k = 0; k < 9; ++k) {
    Poly Q = beta_poly({1, 0, 1}) + Poly(GQ(Rat(k)));
    cases.push_back(build_example_B({GQ(0), GQ(Rat(k + 1)), GQ(Rat(-k - 1))},
                                    GQ(1), Q,
                                    {Rat(0), abs(rand_rat(3, 7)) / 4, Rat(0)},
                                    rand_rat(2, 3), rand_rat(2, 3))
                        .pdm);
  }
  cases.push_back(diag);
  {
    ParabolicDifferenceModule d2 = diag;
    d2.weights = {rat(1, 3), rat(2, 3)};
    cases.push_back(d2);
  }
  for (const auto& pdm : cases) {
    StabilityVerdict v0 = stability_check(pdm);
    StabilityVerdict v1 = stability_check(pdm, v0.bound_used + 3);
    StabilityStatus s0 = v0.status == StabilityStatus::StableUpToBound
                             ? StabilityStatus::Stable
                             : v0.status;
    StabilityStatus s1 = v1.status == StabilityStatus::StableUpToBound
                             ? StabilityStatus::Stable
                             : v1.status;
    ok &= check(s0 == s1, "bound raise flipped a verdict", detail);
  }
  return ok;
}

// a random trusted-window series with nonnegative exponents
PS rand_tail(int q, int order, bool zero_constant) {
  std::uniform_int_distribution<int> d(-2, 2);
  PS e;
  e.p = q;
  e.lo = 0;
  e.hi = order;
  e.c.assign(static_cast<size_t>(order), GQ());
  for (int k = zero_constant ? 1 : 0; k < order; ++k)
    e.c[static_cast<size_t>(k)] = GQ(Rat(d(rng)), Rat(d(rng)));
  e.drop_leading_zeros();
  return e;
}

FormalLambdaConnection rand_conn(int r, int q, const GQ& lambda, int order) {
  FormalLambdaConnection conn;
  conn.q = q;
  conn.lambda = lambda;
  conn.T = 1;
  conn.order = order;
  conn.A = MatPS(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      conn.A(i, j) = rand_tail(q, order, /*zero_constant=*/i >= j);
  return conn;
}

bool conn_matches(const FormalLambdaConnection& a,
                  const FormalLambdaConnection& b, long upto) {
  for (int i = 0; i < a.A.n; ++i)
    for (int j = 0; j < a.A.m; ++j)
      for (long k = 0; k < upto; ++k)
        if (!(a.A(i, j).coeff_idx(k) == b.A(i, j).coeff_idx(k))) return false;
  return true;
}

bool c5_psi_roundtrip(std::string& detail) {
  bool ok = true;
  const int N = 10;
  // 20 randomized rank <= 3 level-<1 inputs
  const int ranks[20] = {1, 1, 1, 1, 1, 1, 1, 1, 2, 2,
                         2, 2, 2, 2, 2, 2, 3, 3, 3, 3};
  for (int k = 0; k < 20; ++k) {
    int q = (k % 3 == 0) ? 2 : 1;
    GQ lambda = (k % 2 == 0) ? GQ(1) : gq_i();
    FormalLambdaConnection conn = rand_conn(ranks[k], q, lambda, N);
    MatPS G = psi_forward_general(conn);
    FormalLambdaConnection back = psi_inverse(G, q, lambda, Rat(1), N);
    ok &= check(conn_matches(conn, back, N), "forward-inverse round trip",
                detail);
  }
  // rank-1 forward matches the closed form to order 12;
  // frak_a = sum a_k w_q^k corresponds to A = sum (k/q) a_k x_q^{q-k}
  struct Rank1Case {
    int q;
    std::vector<GQ> a;  // a[k-1] = coefficient of w_q^k
    GQ lambda;
    Rat T;
  };
  for (const Rank1Case& cs :
       {Rank1Case{2, {GQ(1)}, GQ(1), Rat(1)},
        Rank1Case{2, {GQ(3)}, gq_i(), Rat(2)},
        Rank1Case{3, {GQ(1), GQ(2)}, GQ(1) + gq_i(), rat(1, 2)}}) {
    Poly fa;
    FormalLambdaConnection conn;
    conn.q = cs.q;
    conn.lambda = cs.lambda;
    conn.T = cs.T;
    conn.order = 12;
    conn.A = MatPS(1, 1);
    PS a_series;
    for (int k = 1; k <= static_cast<int>(cs.a.size()); ++k) {
      fa = fa + Poly::monomial(cs.a[static_cast<size_t>(k - 1)], k);
      a_series = a_series +
                 PS::monomial(GQ(rat(k, cs.q)) * cs.a[static_cast<size_t>(k - 1)],
                              cs.q - k, cs.q);
    }
    conn.A(0, 0) = a_series;
    MatPS G = psi_forward_general(conn);
    PS closed = psi_forward_rank1(fa, cs.q, cs.lambda, cs.T, 12);
    for (long j = 0; j < 12; ++j)
      ok &= check(G(0, 0).coeff_idx(j) == closed.coeff_idx(j),
                  "rank-1 closed form to order 12", detail);
  }
  // (Phi^m)* closed form equals the m-fold composition for m in {2, 3, 5}
  GQ lambda = GQ(rat(1, 2), rat(1, 3));
  GQ nu = GQ(Rat(0), Rat(2)) * lambda;
  for (int m : {2, 3, 5}) {
    for (auto [q, ell] : {std::pair{1, 1}, {2, 3}}) {
      PS one_step = basic_phi_power(q, ell, lambda, Rat(1), 1, 10);
      PS prod = one_step;
      PS cur = one_step;
      for (int j = 1; j < m; ++j) {
        cur = series_shift(cur, nu);
        prod = prod * cur;
      }
      PS closed = basic_phi_power(q, ell, lambda, Rat(1), m, 10);
      ok &= check(ps_equal(closed, prod), "m-step cocycle closed form", detail);
    }
  }
  return ok;
}

bool c6_kms(std::string& detail) {
  bool ok = true;
  for (int k = 0; k < 100; ++k) {
    KmsPoint pt{rand_rat(5, 4), rand_gq(4)};
    KmsPoint out = kms_map(GQ(0), pt);
    ok &= check(out.a == pt.a && out.alpha == pt.alpha, "kappa(0) = id",
                detail);
  }
  for (int k = 0; k < 100; ++k) {
    GQ lambda = rand_gq(4);
    KmsPoint pt{rand_rat(5, 4), rand_gq(4)};
    // re-evaluate the first coordinate in Q(i) and check Im = 0 exactly
    GQ prod = lambda * pt.alpha.conj();
    GQ first = GQ(pt.a) + prod + prod.conj();
    ok &= check(first.im == 0, "first coordinate exactly real", detail);
    ok &= check(first.re == kms_map(lambda, pt).a, "Rat output agrees", detail);
  }
  return ok;
}

std::vector<ModelMonopole> families(Cx lambda) {
  return {make_basic_lp_ell(2, 3, 1.25, lambda),
          make_frobenius({Cx(0.6, 0.2), Cx(0.4)}, 2, 1.0, lambda),
          make_tame(0.5, Cx(0.3, 0.2), 1.0, lambda),
          make_global_gamma(Cx(0.3, 0.8), 1.0, lambda)};
}

// second-order central-difference curvature from the connection form
double fd_curvature_error(const ModelMonopole& m, double t, Cx w, double h) {
  const Cx I(0.0, 1.0);
  auto wp = [&](Cx ww) {
    return m.p == 1 ? ww : std::exp(std::log(ww) / static_cast<double>(m.p));
  };
  auto A = [&](double tt, Cx ww) {
    return connection_form(m, SamplePoint{tt, wp(ww)});
  };
  auto d = [&](auto pick, int dir) -> Cx {
    Cx step = dir == 0 ? Cx(h) : (dir == 1 ? Cx(h) : Cx(0.0, h));
    if (dir == 0)
      return (pick(A(t + h, w)) - pick(A(t - h, w))) / (2.0 * h);
    return (pick(A(t, w + step)) - pick(A(t, w - step))) / (2.0 * h);
  };
  auto dw = [&](auto pick) { return 0.5 * (d(pick, 1) - I * d(pick, 2)); };
  auto dwbar = [&](auto pick) { return 0.5 * (d(pick, 1) + I * d(pick, 2)); };
  auto At = [](const ConnForm& c) { return c.At; };
  auto Aw = [](const ConnForm& c) { return c.Aw; };
  auto Awbar = [](const ConnForm& c) { return c.Awbar; };
  CurvForm Fc = curvature_form(m, SamplePoint{t, wp(w)});
  return std::abs(d(Aw, 0) - dw(At) - Fc.Ftw) +
         std::abs(d(Awbar, 0) - dwbar(At) - Fc.Ftwbar) +
         std::abs(dw(Awbar) - dwbar(Aw) - Fc.Fwwbar);
}

bool c7_bogomolny(std::string& detail) {
  bool ok = true;
  for (const ModelMonopole& m : families(Cx(0.0))) {
    auto pts = admissible_samples(m, 64);
    ok &= check(max_entry(residual_sweep_parallel(m, pts)) < 1e-12,
                "Bogomolny residual < 1e-12 at 64 points", detail);
  }
  struct Case {
    ModelMonopole m;
    double t;
    Cx w;
  };
  for (const Case& c :
       {Case{make_basic_lp_ell(1, 2), 0.4, Cx(2.0, 0.6)},
        Case{make_frobenius({Cx(0.8, 0.3), Cx(0.5)}, 2), 0.2, Cx(2.5, 0.4)},
        Case{make_tame(0.5, Cx(0.3, 0.2)), 0.6, Cx(1.8, -0.5)}}) {
    double e1 = fd_curvature_error(c.m, c.t, c.w, 1e-2);
    double e2 = fd_curvature_error(c.m, c.t, c.w, 5e-3);
    double ratio = e1 / e2;
    ok &= check(ratio > 3.5 && ratio < 4.5, "O(h^2) refinement ratio", detail);
  }
  return ok;
}

bool c8_monodromy(std::string& detail) {
  bool ok = true;
  const Cx I(0.0, 1.0);
  double T = 1.3;
  // constant scalar field
  MatCx fc(1, 1);
  fc(0, 0) = Cx(0.3, 0.8);
  {
    Cx exact = std::exp(2.0 * I * T * fc(0, 0));
    ok &= check(std::abs(monodromy(fc, T, 10000).M(0, 0) - exact) < 1e-8,
                "constant field within 1e-8", detail);
    double e1 = std::abs(monodromy(fc, T, 400).M(0, 0) - exact);
    double e2 = std::abs(monodromy(fc, T, 800).M(0, 0) - exact);
    ok &= check(e1 / e2 > 14.0 && e1 / e2 < 18.0, "step-halving ratio ~ 16",
                detail);
  }
  // nilpotent field
  {
    MatCx fn(2, 2);
    fn(0, 1) = Cx(1.5, -0.5);
    MatCx ref = matcx_exp(fn.scaled(2.0 * I * T));
    MatCx M = monodromy(fn, T, 10000).M;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        ok &= check(std::abs(M(i, j) - ref(i, j)) < 1e-8,
                    "nilpotent field within 1e-8", detail);
  }
  // 1/w residue field evaluated at w = 2
  {
    MatCx fr(2, 2);
    fr(0, 0) = Cx(0.2, 0.1) / Cx(2.0);
    fr(0, 1) = Cx(1.0) / Cx(2.0);
    fr(1, 1) = Cx(-0.3, 0.4) / Cx(2.0);
    MatCx ref = matcx_exp(fr.scaled(2.0 * I * T));
    MatCx M = monodromy(fr, T, 10000).M;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        ok &= check(std::abs(M(i, j) - ref(i, j)) < 1e-8,
                    "residue field within 1e-8", detail);
  }
  return ok;
}

bool c9_global_degree(std::string& detail) {
  bool ok = true;
  std::uniform_int_distribution<long> di(-5, 5), dp(1, 9);
  for (int k = 0; k < 20; ++k) {
    int ell = static_cast<int>(di(rng));
    Rat a = rat(di(rng), dp(rng));
    Rat T = rat(dp(rng), dp(rng));
    Rat t0 = Rat(T * rat(dp(rng) - 1, 9));
    ok &= check(global_degree(make_dirac_l(ell, a, t0, T)) ==
                    Rat(-(a + rat(ell, 2))),
                "DiracL degree = -(a + ell/2)", detail);
  }
  ok &= check(global_degree(make_global_gamma(Cx(1.0, 1.0))) == 0,
              "GlobalGamma weight 0 degree", detail);
  return ok;
}

bool c10_g_identity(std::string& detail) {
  bool ok = true;
  for (Cx lambda : {Cx(0.0), Cx(1.0), Cx(0.0, 1.0)}) {
    for (const ModelMonopole& m : families(lambda)) {
      auto pts = admissible_samples(m, 32);
      ok &= check(max_entry(g_check_sweep_parallel(m, pts)) < 1e-10,
                  "identity deviation < 1e-10", detail);
    }
  }
  return ok;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool c11_cli(std::string& detail) {
  bool ok = true;
  const std::string root = DMKH_SOURCE_DIR;
  const std::vector<std::pair<std::string, std::string>> suite = {
      {"classify", "example_b_classify"},
      {"classify", "example_a_degree"},
      {"classify", "minimal_rank1"},
      {"degree", "example_a_degree"},
      {"degree", "example_b_stability"},
      {"degree", "monopole_dirac_degree"},
      {"degree", "monopole_gamma"},
      {"stability", "diag_unstable"},
      {"stability", "example_a_stability"},
      {"stability", "example_b_stability"},
      {"psi", "connection_psi"},
      {"kms", "connection_kms"},
      {"verify-monopole", "monopole_tame"},
      {"verify-monopole", "monopole_lp_ell"},
      {"verify-monopole", "monopole_gamma"},
  };
  for (const auto& [command, name] : suite) {
    std::string text = read_file(root + "/tests/fixtures/" + name + ".dm");
    RunResult rr = run_command(command, text);
    ok &= check(rr.exit_code == 0, "fixture command succeeded", detail);
    ok &= check(rr.report.dump(2) + "\n" ==
                    read_file(root + "/tests/golden/" + command + "_" + name +
                              ".json"),
                "golden-file JSON equality", detail);
    Manifest m = parse_manifest(text);
    std::string printed = print_manifest(m);
    ok &= check(print_manifest(parse_manifest(printed)) == printed,
                "parse/print round trip", detail);
  }
  return ok;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;  // 0 = no stated limit
    std::function<bool(std::string&)> body;
  };
  const std::vector<Criterion> criteria = {
      {"1 Newton polygon exactness (examples A, B)", 1.0, c1_newton_polygon},
      {"2 parabolic degree closed forms + summand evaluation", 10.0,
       c2_degree_closed_forms},
      {"3 lattice degree: local exponents, cocycle, Smith oracle", 0.0,
       c3_lattice_degree},
      {"4 stability verdicts and bound monotonicity", 30.0, c4_stability},
      {"5 Psi* round trip, rank-1 closed form, m-step cocycle", 60.0,
       c5_psi_roundtrip},
      {"6 kappa(lambda): identity at 0, real first coordinate", 0.0, c6_kms},
      {"7 Bogomolny certification + O(h^2) cross-check", 10.0, c7_bogomolny},
      {"8 RK4 scattering monodromy", 0.0, c8_monodromy},
      {"9 exact filtered degree of the global models", 0.0, c9_global_degree},
      {"10 contracted curvature identity", 0.0, c10_g_identity},
      {"11 CLI determinism and round trip", 0.0, c11_cli},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    if (c.limit_s > 0 && secs >= c.limit_s) {
      ok = false;
      if (detail.empty()) detail = "time limit exceeded";
    }
    std::printf("%s criterion %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.name,
                secs, detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
