// Parabolic degrees, slopes, induced structures, stability, and the two
// worked example families.
#include "dmkh/parabolic.hpp"

#include <algorithm>
#include <climits>
#include <optional>
#include <sstream>
#include <utility>

namespace dmkh {

namespace {

Poly poly_lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  Poly g = poly_gcd(a, b);
  return poly_monic(poly_divmod(a * b, g).first);
}

// (beta - x)^e as a rational function, e of either sign
RF linear_power(const GQ& x, long e) {
  Poly lin = Poly::var() - Poly(x);
  if (e >= 0) return RF(lin.pow(static_cast<int>(e)));
  return RF(Poly(GQ(1)), lin.pow(static_cast<int>(-e)));
}

RF beta_power(long e) {
  if (e >= 0) return RF(Poly::monomial(GQ(1), static_cast<int>(e)));
  return RF(Poly(GQ(1)), Poly::monomial(GQ(1), static_cast<int>(-e)));
}

// x^{deg p} * p(1/x)
Poly poly_reverse(const Poly& p) {
  Poly r;
  int d = p.deg();
  for (int i = 0; i <= d; ++i) r = r + Poly::monomial(p.coeff(d - i), i);
  return r;
}

// exact square root of a monic polynomial, if one exists
std::optional<Poly> poly_sqrt_monic(const Poly& p) {
  int d = p.deg();
  if (d < 0) return Poly();
  if (d % 2 != 0) return std::nullopt;
  int n = d / 2;
  std::vector<GQ> m(static_cast<size_t>(n) + 1);
  m[static_cast<size_t>(n)] = GQ(1);
  GQ half(rat(1, 2));
  for (int k = n - 1; k >= 0; --k) {
    GQ s;
    for (int i = k + 1; i <= n - 1; ++i) {
      int j = n + k - i;
      if (j > n - 1 || j < k + 1) continue;
      s = s + m[static_cast<size_t>(i)] * m[static_cast<size_t>(j)];
    }
    m[static_cast<size_t>(k)] = (p.coeff(n + k) - s) * half;
  }
  Poly root;
  for (int i = 0; i <= n; ++i) root = root + Poly::monomial(m[static_cast<size_t>(i)], i);
  if (root * root != p) return std::nullopt;
  return root;
}

// square-root series of a polynomial of even-looking leading behaviour:
// P = lc * beta^d * (1 + lower), returned with ramification ram (2 | ram*d
// required so the exponent d/2 lives in (1/ram) Z).
PS poly_sqrt_series(const Poly& P, int ram, int order) {
  int d = P.deg();
  GQ lc = P.lead();
  auto sc = gq_sqrt(lc);
  if (!sc)
    throw std::domain_error("example builder: leading coefficient has no Q(i) square root");
  PS ps = ps_from_rf(RF(P), order).with_ram(ram);
  PS unit = ps * PS::monomial(lc.inv(), static_cast<long>(d) * ram, ram);
  long half_idx = static_cast<long>(d) * ram / 2;
  return unit.pow_rat(rat(1, 2)) * PS::monomial(*sc, -half_idx, ram);
}

bool riccati_holds(const MatRF& M, const RF& g, const GQ& nu) {
  RF sg = g.shift_arg(nu);
  return g * (M(0, 0) + sg * M(0, 1)) == M(1, 0) + sg * M(1, 1);
}

// nontrivial kernel vector of a square homogeneous system, if any
std::optional<std::vector<GQ>> nullspace_vector(std::vector<std::vector<GQ>> a) {
  if (a.empty()) return std::nullopt;
  size_t rows = a.size(), cols = a[0].size();
  std::vector<int> pivot_of_col(cols, -1);
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && a[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[rank], a[piv]);
    GQ inv = a[rank][col].inv();
    for (size_t j = col; j < cols; ++j) a[rank][j] = a[rank][j] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][col].is_zero()) continue;
      GQ f = a[i][col];
      for (size_t j = col; j < cols; ++j) a[i][j] = a[i][j] - f * a[rank][j];
    }
    pivot_of_col[col] = static_cast<int>(rank);
    ++rank;
  }
  // first free column gives a kernel vector
  for (size_t col = 0; col < cols; ++col) {
    if (pivot_of_col[col] >= 0) continue;
    std::vector<GQ> x(cols);
    x[col] = GQ(1);
    for (size_t c2 = 0; c2 < cols; ++c2)
      if (pivot_of_col[c2] >= 0)
        x[c2] = -a[static_cast<size_t>(pivot_of_col[c2])][col];
    return x;
  }
  return std::nullopt;
}

// Reconstruct a rational function g(beta) whose expansion at infinity matches
// the series r (in x = beta^{-1}, ramification 1), with numerator/denominator
// degree at most L in x. Returns nullopt when no such function matches the
// trusted window (or the window is too short to decide).
std::optional<RF> pade_from_series(const PS& r, long L) {
  if (r.known_zero()) {
    if (r.hi >= kExact || r.hi - r.lo >= 2 * L + 2) return RF();
    return std::nullopt;
  }
  PS s = r;
  s.drop_leading_zeros();
  if (s.p != 1) {
    // only integer exponents can come from a rational function of beta
    for (long j = s.lo; j < std::min(s.hi, s.lo + static_cast<long>(s.c.size()));
         ++j)
      if (j % s.p != 0 && !s.coeff_idx(j).is_zero()) return std::nullopt;
    PS t;
    t.p = 1;
    t.lo = (s.lo >= 0) ? (s.lo + s.p - 1) / s.p : s.lo / s.p;
    t.hi = (s.hi >= kExact) ? kExact : s.hi / s.p;
    for (long j = t.lo; j < ((t.hi >= kExact)
                                 ? t.lo + static_cast<long>(s.c.size()) / s.p + 1
                                 : t.hi);
         ++j)
      t.c.push_back(s.coeff_idx(j * s.p));
    s = t;
    s.drop_leading_zeros();
  }
  long k0 = s.lo;
  long need = 2 * L + 2;
  long have = (s.hi >= kExact) ? need : s.hi - k0;
  if (have < need) return std::nullopt;
  std::vector<GQ> c0(static_cast<size_t>(need));
  for (long t = 0; t < need; ++t) c0[static_cast<size_t>(t)] = s.coeff_idx(k0 + t);
  // q * c0 must have zero coefficients in degrees L+1 .. 2L+1
  std::vector<std::vector<GQ>> sys;
  for (long t = L + 1; t <= 2 * L + 1; ++t) {
    std::vector<GQ> row(static_cast<size_t>(L) + 1);
    for (long i = 0; i <= L; ++i)
      if (t - i >= 0) row[static_cast<size_t>(i)] = c0[static_cast<size_t>(t - i)];
    sys.push_back(std::move(row));
  }
  auto q = nullspace_vector(std::move(sys));
  if (!q) return std::nullopt;
  Poly qx, px;
  for (long i = 0; i <= L; ++i) qx = qx + Poly::monomial((*q)[static_cast<size_t>(i)], static_cast<int>(i));
  if (qx.is_zero()) return std::nullopt;
  for (long t = 0; t <= L; ++t) {
    GQ acc;
    for (long i = 0; i <= std::min(t, L); ++i)
      acc = acc + (*q)[static_cast<size_t>(i)] * c0[static_cast<size_t>(t - i)];
    px = px + Poly::monomial(acc, static_cast<int>(t));
  }
  if (px.is_zero()) return std::nullopt;  // nonzero series can't reduce to 0
  long dp = px.deg(), dq = qx.deg();
  RF g = RF(poly_reverse(px), poly_reverse(qx)) * beta_power(dq - dp - k0);
  return g;
}

std::string line_name(const std::vector<RF>& u) {
  std::ostringstream os;
  os << "span{(";
  for (size_t i = 0; i < u.size(); ++i) {
    if (i) os << ", ";
    os << rf_to_string(u[i], "b");
  }
  os << ")}";
  return os.str();
}

// scale to a primitive polynomial vector with lex-first monic pivot
std::vector<RF> primitive_vector(std::vector<RF> u) {
  Poly den(GQ(1));
  for (const RF& f : u)
    if (!f.is_zero()) den = poly_lcm(den, f.den);
  for (RF& f : u) f = f * RF(den);
  Poly content;
  for (const RF& f : u) content = poly_gcd(content, f.num);
  if (content.is_zero()) throw std::domain_error("induced_submodule: zero vector");
  GQ scale;
  std::vector<RF> out;
  for (const RF& f : u) {
    Poly q = poly_divmod(f.num, content).first;
    if (scale.is_zero() && !q.is_zero()) scale = q.lead().inv();
    out.push_back(RF(q));
  }
  for (RF& f : out) f = f * RF(scale);
  return out;
}

}  // namespace

Rat filtered_bundle_degree_P1(const ParabolicDifferenceModule& pdm) {
  Rat v = det_valuation_inf(pdm.adapted_basis);
  Rat wsum = 0;
  for (const Rat& d : pdm.weights) wsum += d;
  return -v - wsum / pdm.p;
}

Rat parabolic_degree(const ParabolicDifferenceModule& pdm, int order) {
  Rat deg = filtered_bundle_degree_P1(pdm);
  for (const SingularityRecord& rec : singularity_data(pdm.module, pdm.finite))
    deg += (Rat(1) - rec.t / pdm.module.T) * Rat(rec.jump);
  SlopeDecomposition sd = newton_polygon(pdm.module, order);
  for (const SlopeComponent& comp : sd.components)
    deg -= comp.omega / 2 * Rat(comp.multiplicity);
  return deg;
}

Rat parabolic_slope(const ParabolicDifferenceModule& pdm, int order) {
  return parabolic_degree(pdm, order) / Rat(pdm.module.rank);
}

ParabolicDifferenceModule induced_submodule(
    const ParabolicDifferenceModule& pdm,
    const std::vector<std::vector<RF>>& basis, int order) {
  int r = pdm.module.rank;
  if (basis.empty())
    throw std::invalid_argument("induced_submodule: empty subspace");
  for (const auto& v : basis)
    if (static_cast<int>(v.size()) != r)
      throw std::invalid_argument("induced_submodule: vector length mismatch");

  if (static_cast<int>(basis.size()) == r) {
    MatRF B(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) B(i, j) = basis[static_cast<size_t>(j)][static_cast<size_t>(i)];
    if (mat_det(B).is_zero())
      throw std::domain_error("induced_submodule: basis is degenerate");
    return pdm;  // the full module induces itself
  }
  if (basis.size() != 1)
    throw std::invalid_argument(
        "induced_submodule: only lines and the full space are supported");

  std::vector<RF> u = primitive_vector(basis[0]);
  std::vector<RF> w = apply_phi(pdm.module, u, 1);
  int piv = -1;
  for (int i = 0; i < r; ++i)
    if (!u[static_cast<size_t>(i)].is_zero()) {
      piv = i;
      break;
    }
  RF c = w[static_cast<size_t>(piv)] / u[static_cast<size_t>(piv)];
  for (int i = 0; i < r; ++i)
    if (w[static_cast<size_t>(i)] != c * u[static_cast<size_t>(i)])
      throw std::domain_error("induced_submodule: subspace is not Phi*-invariant");
  if (c.is_zero())
    throw std::domain_error("induced_submodule: induced action is singular");

  ParabolicDifferenceModule sub;
  MatRF phi1(1, 1);
  phi1(0, 0) = c;
  sub.module = make_module(pdm.module.lambda, pdm.module.T, 1, phi1);

  // finite places: intersect each chain lattice with the line
  for (const ParabolicPlace& pl : pdm.finite.places) {
    auto chain = parabolic_chain(pdm.module, pl);
    std::vector<MatRF> interior;
    for (size_t i = 1; i + 1 < chain.size(); ++i) {
      MatRF Binv = mat_inv(chain[i].basis);
      long minval = LONG_MAX;
      for (int row = 0; row < r; ++row) {
        RF coord;
        for (int j = 0; j < r; ++j) coord = coord + Binv(row, j) * u[static_cast<size_t>(j)];
        if (!coord.is_zero())
          minval = std::min(minval, static_cast<long>(coord.valuation_at(pl.x)));
      }
      MatRF one(1, 1);
      one(0, 0) = linear_power(pl.x, -minval);
      interior.push_back(std::move(one));
    }
    sub.finite.places.push_back({pl.x, pl.weights, std::move(interior)});
  }

  // infinity: parabolic degree of the generator in the adapted frame
  MatPS ucol(r, 1);
  for (int i = 0; i < r; ++i) ucol(i, 0) = ps_from_rf(u[static_cast<size_t>(i)], order);
  MatPS coords = mat_inv(pdm.adapted_basis) * ucol;
  bool found = false;
  Rat du = 0;
  for (int i = 0; i < r; ++i) {
    const PS& ci = coords(i, 0);
    if (ci.known_zero()) continue;
    Rat cand = pdm.weights[static_cast<size_t>(i)] - ci.val();
    if (!found || cand > du) du = cand;
    found = true;
  }
  if (!found)
    throw std::runtime_error(
        "induced_submodule: generator vanishes on the adapted frame's window");
  sub.p = 1;
  sub.adapted_basis = MatPS(1, 1);
  sub.adapted_basis(0, 0) = PS::constant(GQ(1));
  sub.weights = {du};
  return sub;
}

// ---------------------------------------------------------------------------
// stability
// ---------------------------------------------------------------------------
StabilityVerdict stability_check(const ParabolicDifferenceModule& pdm,
                                 int degree_bound) {
  int r = pdm.module.rank;
  if (r > 2)
    throw std::invalid_argument("stability_check: rank > 2 is unsupported");
  StabilityVerdict v;
  v.total_mu = parabolic_slope(pdm);
  if (r == 1) {
    v.status = StabilityStatus::Stable;
    v.note = "rank 1: no proper subspaces";
    return v;
  }

  long maxpole = 0;
  for (const RF& f : pdm.module.phi.a)
    maxpole = std::max({maxpole, static_cast<long>(f.num.deg()),
                        static_cast<long>(f.den.deg())});
  long B = (degree_bound >= 0) ? degree_bound : 2 * maxpole + r;
  v.bound_used = static_cast<int>(B);

  SlopeDecomposition sd = newton_polygon(pdm.module);
  if (sd.p > 1) {
    v.status = StabilityStatus::Stable;
    v.note = "irreducible: the slope at infinity is ramified";
    return v;
  }

  const MatRF& M = pdm.module.phi;
  const RF &m00 = M(0, 0), &m01 = M(0, 1), &m10 = M(1, 0), &m11 = M(1, 1);
  std::vector<std::vector<RF>> lines;
  bool exhaustive = false;
  std::string why_partial;

  if (m01.is_zero()) lines.push_back({RF(), RF(GQ(1))});  // e2

  if (pdm.module.nu.is_zero()) {
    // sigma = id: invariant lines (1, g) are eigenlines,
    // m01 g^2 + (m00 - m11) g - m10 = 0
    RF A = m00 - m11;
    if (m01.is_zero()) {
      if (!A.is_zero()) {
        lines.push_back({RF(GQ(1)), m10 / A});
        exhaustive = true;
      } else if (m10.is_zero()) {
        lines.push_back({RF(GQ(1)), RF()});
        why_partial = "scalar action: every line is invariant; coordinate lines examined";
      } else {
        exhaustive = true;  // no line of the form (1, g)
      }
    } else {
      RF disc = A * A + RF(GQ(4)) * m01 * m10;
      if (disc.is_zero()) {
        lines.push_back({RF(GQ(1)), -A / (RF(GQ(2)) * m01)});
        exhaustive = true;
      } else {
        Poly nd = disc.num * disc.den;
        auto root = poly_sqrt_monic(poly_monic(nd));
        if (!root) {
          exhaustive = true;  // discriminant is not a square: no eigenlines
        } else {
          auto sc = gq_sqrt(nd.lead());
          if (!sc) {
            why_partial =
                "eigenlines are defined over a quadratic extension of Q(i)";
          } else {
            RF sq = RF(*root * *sc) / RF(disc.den);
            lines.push_back({RF(GQ(1)), (-A + sq) / (RF(GQ(2)) * m01)});
            lines.push_back({RF(GQ(1)), (-A - sq) / (RF(GQ(2)) * m01)});
            exhaustive = true;
          }
        }
      }
    }
  } else {
    // lambda != 0: each rational invariant line expands to a formal branch;
    // reconstruct the branches by Pade approximation and verify exactly.
    long L = 2 * B + 2;
    long need = 2 * L + 2;
    int ord = static_cast<int>(need + B + 12);
    FormalModule fm = formal_from_module(pdm.module, 2 * ord + 16);
    SplitResult sr = spectral_split(fm, ord);
    if (!sr.complete) {
      why_partial = "formal splitting incomplete: " + sr.residue;
    } else {
      std::vector<std::string> branch_names;
      auto add_branch_line = [&](std::vector<RF> u) {
        u = primitive_vector(std::move(u));
        std::string nm = line_name(u);
        for (const std::string& seen : branch_names)
          if (seen == nm) return;
        branch_names.push_back(std::move(nm));
        lines.push_back(std::move(u));
      };
      for (const SplitBlock& blk : sr.blocks) {
        if (blk.indices.size() != 1) continue;
        int idx = blk.indices[0];
        const PS& v1 = sr.conjugation(0, idx);
        const PS& v2 = sr.conjugation(1, idx);
        if (v1.known_zero()) {
          if (m01.is_zero()) add_branch_line({RF(), RF(GQ(1))});
          continue;
        }
        if (v2.known_zero() && m10.is_zero()) {
          add_branch_line({RF(GQ(1)), RF()});  // exactly verified as e1
          continue;
        }
        auto g = pade_from_series(v2 * v1.inv(), L);
        if (g && riccati_holds(M, *g, pdm.module.nu))
          add_branch_line({RF(GQ(1)), *g});
      }
      // distinct formal branches expand distinct lines, so two verified
      // lines exhaust the rank-2 invariant-line supply
      if (branch_names.size() == 2)
        exhaustive = true;
      else if (why_partial.empty())
        why_partial = "a formal branch matched no rational line within the bound";
    }
    if (m10.is_zero()) lines.push_back({RF(GQ(1)), RF()});  // e1
  }

  struct Cand {
    std::string name;
    Rat mu;
  };
  std::vector<Cand> cands;
  for (const auto& line : lines) {
    std::vector<RF> u = primitive_vector(line);
    std::string name = line_name(u);
    bool dup = false;
    for (const Cand& c : cands) dup = dup || c.name == name;
    if (dup) continue;
    ParabolicDifferenceModule sub = induced_submodule(pdm, {u});
    cands.push_back({std::move(name), parabolic_slope(sub)});
  }
  std::sort(cands.begin(), cands.end(),
            [](const Cand& a, const Cand& b) { return a.name < b.name; });

  const Cand* best = nullptr;
  for (const Cand& c : cands)
    if (!best || c.mu > best->mu) best = &c;

  if (best && best->mu > v.total_mu) {
    v.status = StabilityStatus::Unstable;
    v.witness = best->name;
    v.witness_mu = best->mu;
    return v;
  }
  if (best && best->mu == v.total_mu) {
    v.status = StabilityStatus::Semistable;
    v.witness = best->name;
    v.witness_mu = best->mu;
    int equal = 0;
    for (const Cand& c : cands) equal += (c.mu == v.total_mu);
    if (equal >= 2)
      v.note = "polystable: two equal-slope invariant lines give a direct sum";
    if (!exhaustive)
      v.note += (v.note.empty() ? "" : "; ") + why_partial;
    return v;
  }
  if (exhaustive) {
    v.status = StabilityStatus::Stable;
    return v;
  }
  v.status = StabilityStatus::StableUpToBound;
  v.note = why_partial;
  return v;
}

// ---------------------------------------------------------------------------
// example families
// ---------------------------------------------------------------------------
BuiltExample build_example_A(const std::vector<GQ>& S,
                             const std::vector<long>& ell,
                             const std::vector<Rat>& t,
                             const std::vector<Rat>& d, const Rat& T,
                             int order) {
  if (S.size() != ell.size() || S.size() != t.size())
    throw std::invalid_argument("example A: S, ell, t must have equal length");
  for (size_t i = 0; i < S.size(); ++i)
    for (size_t j = i + 1; j < S.size(); ++j)
      if (S[i] == S[j]) throw std::invalid_argument("example A: repeated point");
  long total = 0;
  bool any_odd = false;
  Poly P(GQ(1));
  for (size_t i = 0; i < S.size(); ++i) {
    if (ell[i] <= 0) throw std::invalid_argument("example A: ell must be positive");
    total += ell[i];
    any_odd = any_odd || (ell[i] % 2 != 0);
    P = P * (Poly::var() - Poly(S[i])).pow(static_cast<int>(ell[i]));
  }
  bool even = (total % 2 == 0);
  if (d.size() != (even ? 2u : 1u))
    throw std::invalid_argument(even ? "example A (even): need d1, d2"
                                     : "example A (odd): need a single d");

  BuiltExample out;
  if (!any_odd)
    out.warning = "all ell(a) even: the family's stability claim needs one odd multiplicity";

  MatRF phi(2, 2);
  phi(0, 1) = RF(P);
  phi(1, 0) = RF(GQ(1));
  out.pdm.module = make_module(GQ(0), T, 2, phi);
  for (size_t i = 0; i < S.size(); ++i)
    out.pdm.finite.places.push_back({S[i], {t[i]}, {}});

  // eigenframe v_{1,2} = s e1 +- e2 with s^2 = P
  int ram = even ? 1 : 2;
  PS s = poly_sqrt_series(P, ram, order);
  out.pdm.p = ram;
  out.pdm.adapted_basis = MatPS(2, 2);
  out.pdm.adapted_basis(0, 0) = s;
  out.pdm.adapted_basis(0, 1) = s;
  out.pdm.adapted_basis(1, 0) = PS::constant(GQ(1));
  out.pdm.adapted_basis(1, 1) = PS::constant(GQ(-1));
  out.pdm.weights = even ? std::vector<Rat>{d[0], d[1]} : std::vector<Rat>{d[0], d[0]};

  Rat cf = even ? Rat(-d[0] - d[1]) : Rat(-d[0]);
  for (size_t i = 0; i < S.size(); ++i)
    cf -= (Rat(1) - t[i] / T) * Rat(ell[i]);
  out.closed_form = cf;
  return out;
}

BuiltExample build_example_B(const std::vector<GQ>& P_roots, const GQ& P_lead,
                             const Poly& Q, const std::vector<Rat>& t,
                             const Rat& d1, const Rat& d2, const Rat& T,
                             int order) {
  if (P_lead.is_zero()) throw std::invalid_argument("example B: P must be nonzero");
  if (P_roots.size() != t.size())
    throw std::invalid_argument("example B: one weight per root of P");
  for (size_t i = 0; i < P_roots.size(); ++i)
    for (size_t j = i + 1; j < P_roots.size(); ++j)
      if (P_roots[i] == P_roots[j])
        throw std::invalid_argument("example B: P must have simple zeroes");
  int n = static_cast<int>(P_roots.size());
  int k = Q.deg();
  if (n == 0 && k <= 0)
    throw std::invalid_argument("example B: (deg P, deg Q) = (0, 0) is rejected");
  if (k < 0 || 2 * k < n)
    throw std::invalid_argument("example B: need 2 deg Q >= deg P");
  Poly P(P_lead);
  for (const GQ& a : P_roots) P = P * (Poly::var() - Poly(a));
  Poly disc = Q * Q - P * GQ(4);
  if (2 * k == n && disc.deg() < 2 * k)
    throw std::invalid_argument("example B: degenerate, q^2 - 4p = 0");

  BuiltExample out;
  MatRF phi(2, 2);
  phi(0, 1) = RF(P);
  phi(1, 0) = RF(GQ(-1));
  phi(1, 1) = RF(Q);
  out.pdm.module = make_module(GQ(0), T, 2, phi);
  for (size_t i = 0; i < P_roots.size(); ++i)
    out.pdm.finite.places.push_back({P_roots[i], {t[i]}, {}});

  // eigenframe v_i = P e1 + alpha_i e2, alpha_{1,2} = (Q +- sqrt(Q^2-4P))/2
  PS sq = poly_sqrt_series(disc, 1, order + 2 * std::max(k, 1));
  PS Qps = ps_from_rf(RF(Q), order + 2 * std::max(k, 1));
  PS Pps = ps_from_rf(RF(P), order + 2 * std::max(k, 1));
  GQ half(rat(1, 2));
  out.pdm.p = 1;
  out.pdm.adapted_basis = MatPS(2, 2);
  out.pdm.adapted_basis(0, 0) = Pps;
  out.pdm.adapted_basis(0, 1) = Pps;
  out.pdm.adapted_basis(1, 0) = (Qps + sq) * half;
  out.pdm.adapted_basis(1, 1) = (Qps - sq) * half;
  out.pdm.weights = {d1, d2};

  Rat cf = rat(n, 2) + Rat(k) - d1 - d2;
  for (const Rat& ti : t) cf -= Rat(1) - ti / T;
  out.closed_form = cf;
  return out;
}

}  // namespace dmkh
