#include "dmkh/classify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dmkh {

namespace {

PS ps_trunc_window(const PS& s, long hi) { return s.truncated(hi); }

std::vector<GQ> roots_of_unity_in_qi(int q) {
  std::vector<GQ> out{GQ(1)};
  for (const GQ& u : {GQ(-1), gq_i(), -gq_i()}) {
    GQ pw(1);
    for (int k = 0; k < q; ++k) pw = pw * u;
    if (pw == GQ(1)) out.push_back(u);
  }
  return out;
}

// exact roots (with multiplicity) of a polynomial over Q(i); factors of
// degree > 2 after squarefree reduction are left unresolved
struct RootList {
  std::vector<std::pair<GQ, int>> roots;
  int unresolved_degree = 0;
  std::string note;
};

// all Gaussian-integer divisors of a nonzero Gaussian integer
std::vector<GQ> gaussian_divisors(const GQ& z) {
  std::vector<GQ> out;
  Rat nz = z.norm();
  if (nz == 0 || nz > 100000000) return out;  // bail out; caller falls back
  long n = nz.get_num().get_si();
  for (long a = 0; a * a <= n; ++a) {
    for (long b = 0; a * a + b * b <= n; ++b) {
      if (a == 0 && b == 0) continue;
      long nd = a * a + b * b;
      if (n % nd != 0) continue;
      GQ d{Rat(a), Rat(b)};
      GQ q = z / d;
      if (q.re.get_den() == 1 && q.im.get_den() == 1) {
        out.push_back(d);
        if (a != 0) out.push_back(GQ(Rat(-a), Rat(b)));
        if (b != 0) out.push_back(GQ(Rat(a), Rat(-b)));
        if (a != 0 && b != 0) out.push_back(GQ(Rat(-a), Rat(-b)));
      }
    }
  }
  return out;
}

// roots of f in Q(i) via the rational-root theorem over the PID Z[i]
std::vector<GQ> gaussian_rational_roots(const Poly& f) {
  std::vector<GQ> out;
  if (f.deg() < 1) return out;
  // clear denominators
  mpz_class den(1);
  for (const auto& c : f.c) {
    den = lcm(den, c.re.get_den());
    den = lcm(den, c.im.get_den());
  }
  Poly g = f * GQ(Rat(den));
  GQ c0;
  int k0 = 0;
  while (g.coeff(k0).is_zero()) ++k0;  // factor out z^k0
  if (k0 > 0) out.push_back(GQ(0));
  c0 = g.coeff(k0);
  GQ cn = g.lead();
  auto P = gaussian_divisors(c0);
  auto Q = gaussian_divisors(cn);
  for (const auto& p : P)
    for (const auto& q : Q) {
      GQ r = p / q;
      if (g.eval(r).is_zero()) {
        bool seen = false;
        for (const auto& s : out)
          if (s == r) seen = true;
        if (!seen) out.push_back(r);
      }
    }
  return out;
}

RootList poly_roots(Poly R) {
  RootList out;
  auto take_root = [&](const GQ& a) {
    int m = poly_root_multiplicity(R, a);
    out.roots.push_back({a, m});
    Poly f = (Poly::var() - Poly(a)).pow(m);
    R = poly_divmod(R, f).first;
  };
  // first peel off every root lying in Q(i)
  if (R.deg() > 2)
    for (const GQ& r : gaussian_rational_roots(R))
      if (poly_root_multiplicity(R, r) > 0) take_root(r);
  while (R.deg() > 0) {
    Poly g = poly_gcd(R, R.derivative());
    Poly S = (g.deg() > 0) ? poly_divmod(R, g).first : R;
    if (S.deg() == 1) {
      take_root(-S.coeff(0) / S.coeff(1));
    } else if (S.deg() == 2) {
      GQ a = S.coeff(2), b = S.coeff(1), c = S.coeff(0);
      auto sd = gq_sqrt(b * b - GQ(4) * a * c);
      if (!sd) {
        out.unresolved_degree = R.deg();
        out.note = "residual factor with non-Q(i) roots: " +
                   poly_to_string(S, "z");
        return out;
      }
      GQ two_a = GQ(2) * a;
      take_root((-b + *sd) / two_a);
      if (!R.is_zero() && R.deg() > 0 && *sd != GQ(0)) {
        GQ r2 = (-b - *sd) / two_a;
        if (poly_root_multiplicity(R, r2) > 0) take_root(r2);
      }
    } else {
      out.unresolved_degree = R.deg();
      out.note =
          "residual factor of degree > 2: " + poly_to_string(S, "z");
      return out;
    }
  }
  return out;
}

// residual polynomial along the polygon edge of slope omega, and its roots
RootList residual_roots(const FormalModule& fm, const Rat& omega,
                        const SlopeDecomposition& sd) {
  auto a = char_poly(fm.M);
  long j1 = -1, j2 = -1;
  Rat v1;
  for (size_t k = 1; k < sd.polygon.size(); ++k) {
    Rat s = (sd.polygon[k].second - sd.polygon[k - 1].second) /
            Rat(sd.polygon[k].first - sd.polygon[k - 1].first);
    if (s == omega) {
      j1 = sd.polygon[k - 1].first;
      v1 = sd.polygon[k - 1].second;
      j2 = sd.polygon[k].first;
      break;
    }
  }
  if (j1 < 0)
    throw std::invalid_argument("leading_constants: omega is not a slope");
  Poly R;
  for (long j = j1; j <= j2; ++j) {
    const PS& s = a[static_cast<size_t>(j)];
    if (s.known_zero()) continue;
    Rat line_v = v1 + omega * Rat(j - j1);
    GQ cj = s.coeff(line_v);
    if (!cj.is_zero()) R = R + Poly::monomial(cj, static_cast<int>(j - j1));
  }
  return poly_roots(R);
}

// exponents of s strictly inside (0,1)
PS frac_part_01(const PS& s) {
  PS r;
  r.p = s.p;
  r.lo = s.lo;
  r.hi = s.hi;
  r.c.assign(s.c.size(), GQ());
  for (size_t k = 0; k < s.c.size(); ++k) {
    long j = s.lo + static_cast<long>(k);
    if (j > 0 && j < s.p) r.c[k] = s.c[k];
  }
  r.drop_leading_zeros();
  return r;
}

}  // namespace

FormalModule formal_from_module(const DiffModule& mod, int order) {
  FormalModule fm;
  fm.q = 1;
  fm.nu = mod.nu;
  fm.M = MatPS(mod.rank, mod.rank);
  for (size_t k = 0; k < mod.phi.a.size(); ++k)
    fm.M.a[k] = ps_from_rf(mod.phi.a[k], order);
  return fm;
}

FormalModule basic_module(int q, long ell, const GQ& alpha, const GQ& nu) {
  if (alpha.is_zero()) throw std::invalid_argument("basic_module: alpha = 0");
  FormalModule fm;
  fm.q = q;
  fm.nu = nu;
  fm.M = MatPS(1, 1);
  fm.M(0, 0) = PS::monomial(alpha, -ell, q);  // y_q^{ell} = x_q^{-ell}
  return fm;
}

std::vector<PS> char_poly(const MatPS& M) {
  int r = M.n;
  std::vector<PS> c(static_cast<size_t>(r) + 1);
  c[static_cast<size_t>(r)] = PS::constant(GQ(1));
  MatPS N = M;
  for (int k = 1; k <= r; ++k) {
    if (k > 1) {
      MatPS shifted = N;
      for (int i = 0; i < r; ++i)
        shifted(i, i) = shifted(i, i) + c[static_cast<size_t>(r - k + 1)];
      N = M * shifted;
    }
    PS tr;
    for (int i = 0; i < r; ++i) tr = tr + N(i, i);
    c[static_cast<size_t>(r - k)] = tr * GQ(rat(-1, k));
  }
  return c;
}

SlopeDecomposition newton_polygon(const FormalModule& fm) {
  auto a = char_poly(fm.M);
  int r = fm.M.n;
  int p_in = 1;
  for (const auto& s : a) p_in = std::lcm(p_in, s.p);
  std::vector<std::pair<long, Rat>> pts;  // (j, v(a_j))
  for (int j = 0; j <= r; ++j) {
    const PS& s = a[static_cast<size_t>(j)];
    if (s.known_zero()) {
      if (j == 0)
        throw std::domain_error(
            "newton_polygon: determinant unresolved at truncation order");
      continue;
    }
    pts.push_back({j, s.val()});
  }
  // lower convex hull, left to right, dropping collinear interior points
  std::vector<std::pair<long, Rat>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& A = hull[hull.size() - 2];
      const auto& B = hull[hull.size() - 1];
      // keep B only if it lies strictly below the chord A--pt
      Rat lhs = (B.second - A.second) * (pt.first - A.first);
      Rat rhs = (pt.second - A.second) * (B.first - A.first);
      if (lhs < rhs) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  SlopeDecomposition out;
  out.polygon = hull;
  out.p = p_in;
  for (size_t k = 1; k < hull.size(); ++k) {
    SlopeComponent comp;
    comp.omega =
        (hull[k].second - hull[k - 1].second) / Rat(hull[k].first - hull[k - 1].first);
    comp.multiplicity = static_cast<int>(hull[k].first - hull[k - 1].first);
    out.components.push_back(comp);
    out.p = std::lcm(out.p, static_cast<int>(comp.omega.get_den().get_si()));
  }
  return out;
}

SlopeDecomposition newton_polygon(const DiffModule& mod, int order) {
  return newton_polygon(formal_from_module(mod, order));
}

std::vector<SlopeComponent> leading_constants(const FormalModule& fm,
                                              const Rat& omega) {
  SlopeDecomposition sd = newton_polygon(fm);
  RootList roots = residual_roots(fm, omega, sd);
  int q = static_cast<int>(omega.get_den().get_si());
  auto units = roots_of_unity_in_qi(q);
  std::vector<SlopeComponent> out;
  std::vector<bool> used(roots.roots.size(), false);
  for (size_t i = 0; i < roots.roots.size(); ++i) {
    if (used[i]) continue;
    if (roots.roots[i].first.is_zero()) continue;  // z=0 is never a constant
    SlopeComponent comp;
    comp.omega = omega;
    comp.alpha_resolved = true;
    comp.alpha = roots.roots[i].first;
    comp.multiplicity = roots.roots[i].second;
    comp.orbit_size = 1;
    for (size_t k = i + 1; k < roots.roots.size(); ++k) {
      if (used[k]) continue;
      for (const auto& u : units) {
        if (u == GQ(1)) continue;
        if (roots.roots[k].first == roots.roots[i].first * u) {
          used[k] = true;
          comp.multiplicity += roots.roots[k].second;
          comp.orbit_size += 1;
          if (gq_lex_less(roots.roots[k].first, comp.alpha))
            comp.alpha = roots.roots[k].first;
          break;
        }
      }
    }
    out.push_back(comp);
  }
  if (roots.unresolved_degree > 0) {
    SlopeComponent comp;
    comp.omega = omega;
    comp.alpha_resolved = false;
    comp.multiplicity = roots.unresolved_degree;
    comp.note = roots.note;
    out.push_back(comp);
  }
  return out;
}

FormalModule twist_by_basic(const FormalModule& fm, long ell, const GQ& alpha) {
  if (alpha.is_zero()) throw std::invalid_argument("twist_by_basic: alpha = 0");
  FormalModule out = fm;
  PS f = PS::monomial(alpha.inv(), ell, fm.q);  // alpha^{-1} y_q^{-ell}
  out.M = fm.M.map([&](const PS& s) { return s * f; });
  return out;
}

FormalModule ramified_pullback(const FormalModule& fm, int p) {
  if (p % fm.q != 0)
    throw std::invalid_argument("ramified_pullback: q must divide p");
  FormalModule out;
  out.q = p;
  out.nu = fm.nu;
  out.M = fm.M.map([&](const PS& s) { return s.with_ram(p); });
  return out;
}

Level level_check(const FormalModule& fm, int order) {
  (void)order;
  SlopeDecomposition sd = newton_polygon(fm);
  for (const auto& comp : sd.components)
    if (comp.omega != 0) return Level::Higher;
  int r = fm.M.n;
  // the representative must be a lattice matrix
  for (const auto& e : fm.M.a) {
    for (size_t k = 0; k < e.c.size(); ++k) {
      long j = e.lo + static_cast<long>(k);
      if (j < 0 && !e.c[k].is_zero())
        throw std::domain_error(
            "level_check: representative has entry poles at the zero slope "
            "(no lattice normalization implemented)");
    }
  }
  Mat<GQ> U(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) U(i, j) = fm.M(i, j).coeff(Rat(0));
  Mat<GQ> N = U - Mat<GQ>::identity(r, GQ(1));
  Mat<GQ> Nk = N;
  for (int k = 1; k < r; ++k) Nk = Nk * N;
  bool nilpotent = true;
  for (const auto& e : Nk.a)
    if (!e.is_zero()) nilpotent = false;
  if (!nilpotent) return Level::Higher;
  bool u_is_id = true;
  for (const auto& e : N.a)
    if (!e.is_zero()) u_is_id = false;
  if (!u_is_id) return Level::LessThanOne;
  // level 0 requires Phi* - id to gain a full y^{-1} on the standard lattice:
  // coefficients at fractional exponents below y^{-1} must vanish
  for (const auto& e : fm.M.a)
    for (size_t k = 0; k < e.c.size(); ++k) {
      long j = e.lo + static_cast<long>(k);
      if (j > 0 && j < fm.q && !e.c[k].is_zero()) return Level::LessThanOne;
    }
  return Level::Zero;
}

// ---------------------------------------------------------------------------
// spectral splitting
// ---------------------------------------------------------------------------

namespace {

PS eval_poly_ps(const std::vector<PS>& coeffs, const PS& x) {
  PS acc;
  for (size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

// connected components of the off-diagonal support graph
std::vector<std::vector<int>> support_components(const MatPS& M) {
  int r = M.n;
  std::vector<int> comp(static_cast<size_t>(r), -1);
  int nc = 0;
  for (int s = 0; s < r; ++s) {
    if (comp[static_cast<size_t>(s)] >= 0) continue;
    std::vector<int> stack{s};
    comp[static_cast<size_t>(s)] = nc;
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < r; ++j) {
        if (comp[static_cast<size_t>(j)] >= 0) continue;
        if (!M(i, j).known_zero() || !M(j, i).known_zero()) {
          comp[static_cast<size_t>(j)] = nc;
          stack.push_back(j);
        }
      }
    }
    ++nc;
  }
  std::vector<std::vector<int>> out(static_cast<size_t>(nc));
  for (int i = 0; i < r; ++i) out[static_cast<size_t>(comp[(size_t)i])].push_back(i);
  return out;
}

MatPS submatrix(const MatPS& M, const std::vector<int>& idx) {
  MatPS S(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < idx.size(); ++j)
      S(static_cast<int>(i), static_cast<int>(j)) = M(idx[i], idx[j]);
  return S;
}

struct CoreSplit {
  bool ok = false;
  MatPS G, D;
  std::string residue;
};

// split a matrix whose leading data (omega_i, alpha_i) are pairwise distinct
// and unramified; returns the gauge G and the (diagonal) D
CoreSplit core_split(const FormalModule& fm, int order) {
  CoreSplit out;
  int r = fm.M.n;
  MatPS M = fm.M.map([&](const PS& s) { return ps_trunc_window(s, order); });
  int p_work = 1;
  for (const auto& e : M.a) p_work = std::lcm(p_work, e.p);
  SlopeDecomposition sd = newton_polygon(fm);
  // raw residual roots, not grouped into Galois orbits: members of one orbit
  // are still distinct eigenvalues and split from each other
  std::vector<std::pair<Rat, GQ>> eigen;
  for (const auto& edge : sd.components) {
    if (p_work % static_cast<int>(edge.omega.get_den().get_si()) != 0) {
      out.residue = "fractional slope; apply ramified_pullback first";
      return out;
    }
    RootList roots = residual_roots(fm, edge.omega, sd);
    if (roots.unresolved_degree > 0) {
      out.residue = "unresolved leading constant: " + roots.note;
      return out;
    }
    for (const auto& [alpha, mult] : roots.roots) {
      if (alpha.is_zero()) continue;
      if (mult != 1) {
        out.residue = "repeated leading data; not separable at this order";
        return out;
      }
      eigen.push_back({edge.omega, alpha});
    }
  }
  if (static_cast<int>(eigen.size()) != r) {
    out.residue = "leading data does not separate the full rank";
    return out;
  }
  auto chi = char_poly(M);
  std::vector<PS> chi_d(chi.size() - 1);
  for (size_t k = 1; k < chi.size(); ++k)
    chi_d[k - 1] = chi[k] * GQ(rat(static_cast<long>(k), 1));
  // stage 1: Newton-Puiseux eigenvalues and ordinary eigenvectors
  MatPS G1(r, r);
  for (int i = 0; i < r; ++i) {
    long widx = Rat(eigen[static_cast<size_t>(i)].first * p_work).get_num().get_si();
    PS mu = PS::monomial(eigen[static_cast<size_t>(i)].second, -widx, p_work)
                .truncated(-widx + order);
    for (int it = 0; it < 16; ++it) {
      PS f = eval_poly_ps(chi, mu);
      if (f.known_zero()) break;
      PS fp = eval_poly_ps(chi_d, mu);
      mu = mu - f * fp.inv();
    }
    MatPS A = M;
    for (int k = 0; k < r; ++k) A(k, k) = A(k, k) - mu;
    // kernel vector from the adjugate: adj(A)*A = det(A)*I ~ 0
    int bestcol = -1;
    std::vector<PS> v(static_cast<size_t>(r));
    for (int j = 0; j < r && bestcol < 0; ++j) {
      bool nonzero = false;
      for (int k = 0; k < r; ++k) {
        PS cof = (r == 1) ? PS::constant(GQ(1)) : mat_det(A.minor_at(j, k));
        if ((j + k) % 2 == 1) cof = -cof;
        v[static_cast<size_t>(k)] = cof;
        if (!cof.known_zero()) nonzero = true;
      }
      if (nonzero) bestcol = j;
    }
    if (bestcol < 0) {
      out.residue = "eigenvector not resolved at this order";
      return out;
    }
    // normalize by the least-valuation entry so the pivot is 1 + O(x)
    int piv = -1;
    Rat pv;
    for (int k = 0; k < r; ++k) {
      if (v[static_cast<size_t>(k)].known_zero()) continue;
      Rat w = v[static_cast<size_t>(k)].val();
      if (piv < 0 || w < pv) {
        piv = k;
        pv = w;
      }
    }
    Rat norm_idx = -pv * p_work;
    PS norm = PS::monomial(v[static_cast<size_t>(piv)].lead().inv(),
                           norm_idx.get_num().get_si(), p_work);
    for (int k = 0; k < r; ++k) G1(k, i) = v[static_cast<size_t>(k)] * norm;
  }
  PS detG1 = mat_det(G1);
  if (detG1.known_zero()) {
    out.residue = "stage-1 eigenvector matrix is singular at this order";
    return out;
  }
  MatPS Mi = mat_inv(G1) * M * mps_shift(G1, fm.nu);
  MatPS Gtot = G1;
  // stage 2: iterative difference-conjugation cleanup of off-diagonal terms
  long bigW = 2 * order + 8;
  for (int it = 0; it < 400; ++it) {
    int bi = -1, bj = -1;
    Rat bv;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        if (i == j || Mi(i, j).known_zero()) continue;
        Rat v = Mi(i, j).val();
        if (bi < 0 || v < bv) {
          bi = i;
          bj = j;
          bv = v;
        }
      }
    if (bi < 0) break;  // clean to the working order
    // gauge I + g E_{bi,bj} x^{k}: leading response is g*(d_i - d_j)*x^{k}
    PS dd = Mi(bi, bi) - Mi(bj, bj);
    if (dd.known_zero()) {
      out.residue = "diagonal leading terms collide during cleanup";
      out.G = Gtot;
      out.D = Mi;
      return out;
    }
    Rat kexp = bv - dd.val();
    int pl = std::lcm(p_work, std::lcm(static_cast<int>(kexp.get_den().get_si()),
                                       Mi(bi, bj).p));
    long kidx = Rat(kexp * pl).get_num().get_si();
    GQ c0 = Mi(bi, bj).coeff(bv);
    GQ g = -(c0 / dd.lead());
    MatPS Gk = mps_identity(r).map([&](const PS& s) { return ps_trunc_window(s, bigW * pl); });
    Gk(bi, bj) = PS::monomial(g, kidx, pl).truncated(bigW * pl);
    MatPS Gk_inv = mps_identity(r).map([&](const PS& s) { return ps_trunc_window(s, bigW * pl); });
    Gk_inv(bi, bj) = PS::monomial(-g, kidx, pl).truncated(bigW * pl);
    MatPS next = Gk_inv * Mi * mps_shift(Gk, fm.nu);
    // progress check: the attacked entry's valuation must increase
    bool progressed = next(bi, bj).known_zero();
    if (!progressed) progressed = next(bi, bj).val() > bv;
    if (!progressed) {
      out.residue = "no progress in off-diagonal cleanup";
      out.G = Gtot;
      out.D = Mi;
      return out;
    }
    Mi = next;
    Gtot = Gtot * Gk;
  }
  // fail if anything off-diagonal survived
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (i != j && !Mi(i, j).known_zero()) {
        out.residue = "cleanup iteration cap reached";
        out.G = Gtot;
        out.D = Mi;
        return out;
      }
  out.ok = true;
  out.G = Gtot;
  out.D = Mi;
  return out;
}

}  // namespace

SplitResult spectral_split(const FormalModule& fm, int order) {
  SplitResult res;
  int r = fm.M.n;
  auto comps = support_components(fm.M);
  res.conjugation = mps_identity(r);
  res.split = fm.M;
  res.complete = true;
  for (auto& idx : comps) {
    std::sort(idx.begin(), idx.end());
    FormalModule sub;
    sub.q = fm.q;
    sub.nu = fm.nu;
    sub.M = submatrix(fm.M, idx);
    bool diagonalized = false;
    MatPS subG, subD;
    if (static_cast<int>(idx.size()) == 1) {
      diagonalized = true;
      subG = mps_identity(1);
      subD = sub.M;
    } else {
      CoreSplit cs = core_split(sub, order);
      if (cs.ok) {
        diagonalized = true;
        subG = cs.G;
        subD = cs.D;
      } else {
        res.complete = false;
        if (!res.residue.empty()) res.residue += "; ";
        res.residue += cs.residue;
        subG = mps_identity(static_cast<int>(idx.size()));
        subD = sub.M;
      }
    }
    // write the sub-result back into the ambient matrices
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = 0; j < idx.size(); ++j) {
        res.conjugation(idx[i], idx[j]) =
            subG(static_cast<int>(i), static_cast<int>(j));
        res.split(idx[i], idx[j]) = subD(static_cast<int>(i), static_cast<int>(j));
      }
    // off-diagonal entries of a diagonalized block are known zero within
    // their truncation windows; they are kept as such (replacing them with
    // exact zeros would overstate the achieved order)
    // emit one block record per rank-1 piece (or one for an unsplit residue)
    if (diagonalized) {
      for (size_t i = 0; i < idx.size(); ++i) {
        SplitBlock b;
        b.indices = {idx[i]};
        const PS& d = res.split(idx[i], idx[i]);
        b.omega = -d.val();
        b.alpha = d.lead();
        PS xw = PS::monomial(b.alpha.inv(),
                             Rat(b.omega * d.p).get_num().get_si(), d.p);
        b.frakb = frac_part_01(xw * d - PS::constant(GQ(1)));
        b.block = MatPS(1, 1);
        b.block(0, 0) = d;
        res.blocks.push_back(b);
      }
    } else {
      SplitBlock b;
      b.indices = idx;
      b.block = subD;
      SlopeDecomposition sd = newton_polygon(sub);
      if (sd.components.size() == 1) b.omega = sd.components[0].omega;
      res.blocks.push_back(b);
    }
  }
  return res;
}

PS basic_phi_power(int q, long ell, const GQ& lambda, const Rat& T, int m,
                   int order) {
  if (m < 1) throw std::invalid_argument("basic_phi_power: m >= 1 required");
  if (ell == 0) return PS::constant(GQ(1));
  GQ nu = GQ(Rat(0), Rat(2)) * lambda * GQ(T);
  GQ mnu = nu * GQ((long)m);
  long hi = order;
  // y_q^{-m ell} = x_q^{m ell}
  PS f = PS::monomial(GQ(1), m * ell, q);
  // (1 + m nu y^{-1})^{-m ell / q}
  PS base = (PS::constant(GQ(1)) + PS::monomial(mnu, q, q))
                .truncated(hi + std::max(0L, -m * ell) + q);
  f = f * base.pow_rat(rat(-m * ell, q));
  // exp((m ell / q) G(m nu y^{-1})), G(x) = 1 - x^{-1} log(1+x)
  if (!mnu.is_zero()) {
    PS g;
    g.p = q;
    g.lo = q;
    g.hi = hi + q;
    g.c.assign(static_cast<size_t>(g.hi - g.lo), GQ());
    PS cx = PS::monomial(mnu, q, q).truncated(hi + q);
    PS pw = PS::constant(GQ(1)).with_ram(q).truncated(hi + q);
    for (long j = 1; j * q <= hi + q; ++j) {
      pw = pw * cx;
      Rat coef = rat((j % 2 == 1) ? 1 : -1, j + 1);
      g = g + pw * GQ(coef);
    }
    f = f * series_exp(g * GQ(rat(m * ell, q)));
  }
  return f.truncated(m * ell + hi);
}

FiltrationCheck good_filtration_check(const SplitResult& split,
                                      const MatPS& filtration_coords,
                                      const std::vector<Rat>& weights,
                                      const GQ& nu, int order) {
  FiltrationCheck out;
  int r = filtration_coords.n;
  if (static_cast<int>(weights.size()) != r) {
    out.ok = false;
    out.message = "weight count does not match rank";
    return out;
  }
  if (!split.complete) {
    out.ok = false;
    out.message = "decomposition incomplete: " + split.residue;
    return out;
  }
  // condition 1: every filtration vector lives in a single block
  std::vector<int> block_of(static_cast<size_t>(r), -1);
  for (size_t b = 0; b < split.blocks.size(); ++b)
    for (int idx : split.blocks[b].indices)
      block_of[static_cast<size_t>(idx)] = static_cast<int>(b);
  std::vector<int> col_block(static_cast<size_t>(r), -1);
  for (int j = 0; j < r; ++j) {
    for (int i = 0; i < r; ++i) {
      if (filtration_coords(i, j).known_zero()) continue;
      int b = block_of[static_cast<size_t>(i)];
      if (col_block[static_cast<size_t>(j)] < 0)
        col_block[static_cast<size_t>(j)] = b;
      else if (col_block[static_cast<size_t>(j)] != b) {
        out.ok = false;
        out.message = "filtration vector " + std::to_string(j + 1) +
                      " mixes distinct spectral components";
        return out;
      }
    }
  }
  // condition 2: the containment on each component and weight level.
  // In the split frame, Phi* acts on each component by
  // alpha x^{-omega} (1 + frakb) sigma (up to lower order); a filtration
  // vector u_j of weight d_j is good when
  //   alpha^{-1} x^{omega} Phi*(x^{e_j} u_j) - (1 + frakb) x^{e_j} u_j
  // drops by a full power of x on each row, for every level a, with
  // e_j = ceil(p (d_j - a))/p the exponent placing u_j in the level-a lattice.
  int p = 1;
  for (const auto& e : split.split.a) p = std::lcm(p, e.p);
  for (const auto& w : weights)
    p = std::lcm(p, static_cast<int>(w.get_den().get_si()));
  // owner[i] = the filtration column supported on row i (unique for a basis
  // adapted to rank-1 components)
  std::vector<int> owner(static_cast<size_t>(r), -1);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (!filtration_coords(i, j).known_zero()) owner[static_cast<size_t>(i)] = j;
  for (size_t b = 0; b < split.blocks.size(); ++b) {
    const SplitBlock& blk = split.blocks[b];
    if (blk.indices.size() > 1) {
      out.ok = false;
      out.message = "component of rank > 1 not supported by the check";
      return out;
    }
    std::vector<int> cols;
    for (int j = 0; j < r; ++j)
      if (col_block[static_cast<size_t>(j)] == static_cast<int>(b)) cols.push_back(j);
    if (cols.empty()) continue;
    PS xw = PS::monomial(blk.alpha.inv(),
                         Rat(blk.omega * p).get_num().get_si(), p);
    PS one_plus_b = PS::constant(GQ(1)) + blk.frakb;
    for (const Rat& a : weights) {
      for (int j : cols) {
        Rat e_j = rat_ceil(Rat(p) * (weights[static_cast<size_t>(j)] - a)) / p;
        long e_idx = Rat(e_j * p).get_num().get_si();
        PS xe = PS::monomial(GQ(1), e_idx, p).truncated(e_idx + order);
        PS sh = series_shift(xe, nu);
        for (int i : blk.indices) {
          PS acc;
          for (int k = 0; k < r; ++k)
            acc = acc + split.split(i, k) *
                            series_shift(filtration_coords(k, j).with_ram(
                                             std::lcm(filtration_coords(k, j).p, p)),
                                         nu);
          PS img = xw * sh * acc - one_plus_b * xe * filtration_coords(i, j);
          int own = owner[static_cast<size_t>(i)];
          Rat e_i = (own >= 0)
                        ? rat_ceil(Rat(p) * (weights[static_cast<size_t>(own)] - a)) / p
                        : e_j;
          if (!img.known_zero() && img.val() < e_i + 1) {
            out.ok = false;
            out.message = "containment fails on component " +
                          std::to_string(b + 1) + " at weight level " +
                          rat_to_string(a);
            return out;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace dmkh
