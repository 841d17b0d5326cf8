// The lambda-connection / difference-module bridge and the KMS map.
#include "dmkh/bridge.hpp"

#include <stdexcept>
#include <vector>

namespace dmkh {

namespace {

using MatGQ = Mat<GQ>;

bool matq_is_zero(const MatGQ& M) {
  for (const GQ& a : M.a)
    if (!a.is_zero()) return false;
  return true;
}

bool matq_nilpotent(const MatGQ& M) {
  MatGQ P = M;
  for (int k = 1; k < M.n; ++k) P = P * M;
  return matq_is_zero(P);
}

MatGQ matq_log_unipotent(const MatGQ& U) {
  int r = U.n;
  MatGQ N = U - MatGQ::identity(r, GQ(1));
  MatGQ out(r, r);
  MatGQ pw = MatGQ::identity(r, GQ(1));
  for (int k = 1; k < r; ++k) {
    pw = pw * N;
    out = out + pw.scaled(GQ(rat((k % 2) ? 1 : -1, k)));
  }
  return out;
}

// matrices of polynomials in t, index = t-degree
using PolyMat = std::vector<MatGQ>;

PolyMat pm_zero(int r) { return {MatGQ(r, r)}; }

PolyMat pm_add(const PolyMat& a, const PolyMat& b) {
  PolyMat out(std::max(a.size(), b.size()), MatGQ(a[0].n, a[0].m));
  for (size_t k = 0; k < out.size(); ++k) {
    if (k < a.size()) out[k] = out[k] + a[k];
    if (k < b.size()) out[k] = out[k] + b[k];
  }
  return out;
}

PolyMat pm_mul(const PolyMat& a, const PolyMat& b) {
  PolyMat out(a.size() + b.size() - 1, MatGQ(a[0].n, b[0].m));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  return out;
}

PolyMat pm_integrate(const PolyMat& a) {
  PolyMat out(a.size() + 1, MatGQ(a[0].n, a[0].m));
  for (size_t k = 0; k < a.size(); ++k)
    out[k + 1] = a[k].scaled(GQ(rat(1, static_cast<long>(k) + 1)));
  return out;
}

MatGQ pm_eval(const PolyMat& a, const GQ& t) {
  MatGQ out = a.back();
  for (size_t k = a.size() - 1; k-- > 0;) out = out.scaled(t) + a[k];
  return out;
}

Rat binom_rat(const Rat& a, int j) {
  Rat b = 1;
  for (int i = 1; i <= j; ++i) b = b * (a - Rat(i - 1)) / Rat(i);
  return b;
}

// normalized copy of the connection matrix: ramification q, window check,
// no negative exponents
MatPS normalize_entries(const MatPS& A, int q, int N, const char* who) {
  MatPS out(A.n, A.m);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.m; ++j) {
      PS e = A(i, j).with_ram(q);
      for (long k = e.lo; k < 0; ++k)
        if (!e.coeff_idx(k).is_zero())
          throw std::invalid_argument(std::string(who) +
                                      ": negative exponents are not allowed");
      if (e.hi < kExact && e.hi < N)
        throw std::runtime_error(std::string(who) +
                                 ": entry window shorter than the requested order");
      out(i, j) = std::move(e);
    }
  return out;
}

// solve M x = b over Q(i); throws on a singular system
std::vector<GQ> gq_solve(std::vector<std::vector<GQ>> M, std::vector<GQ> b) {
  size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && M[piv][col].is_zero()) ++piv;
    if (piv == n) throw std::runtime_error("bridge: singular order correction");
    std::swap(M[col], M[piv]);
    std::swap(b[col], b[piv]);
    GQ inv = M[col][col].inv();
    for (size_t j = col; j < n; ++j) M[col][j] = M[col][j] * inv;
    b[col] = b[col] * inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == col || M[i][col].is_zero()) continue;
      GQ f = M[i][col];
      for (size_t j = col; j < n; ++j) M[i][j] = M[i][j] - f * M[col][j];
      b[i] = b[i] - f * b[col];
    }
  }
  return b;
}

}  // namespace

KmsPoint kms_map(const GQ& lambda, const KmsPoint& pt) {
  GQ prod = lambda * pt.alpha.conj();
  KmsPoint out;
  out.a = Rat(pt.a + 2 * prod.re);
  out.alpha = pt.alpha - GQ(pt.a) * lambda - pt.alpha.conj() * lambda * lambda;
  return out;
}

PS psi_forward_rank1(const Poly& frak_a, int q, const GQ& lambda, const Rat& T,
                     int order) {
  if (lambda.is_zero())
    throw std::invalid_argument("psi_forward_rank1: lambda must be nonzero");
  if (frak_a.deg() >= q)
    throw std::invalid_argument("psi_forward_rank1: need deg frak_a < q");
  if (!frak_a.coeff(0).is_zero())
    throw std::invalid_argument("psi_forward_rank1: need frak_a(0) = 0");
  GQ nu = GQ(Rat(0), Rat(2)) * lambda * GQ(T);
  PS e;
  for (int k = 1; k <= frak_a.deg(); ++k) {
    GQ ak = frak_a.coeff(k);
    if (ak.is_zero()) continue;
    PS base = (PS::constant(GQ(1)) + PS::monomial(nu, q, q)).truncated(order + q);
    PS pw = base.pow_rat(rat(k, q)) - PS::constant(GQ(1));
    e = e + pw * PS::monomial(ak * lambda.inv(), -k, q);
  }
  if (e.known_zero()) return PS::constant(GQ(1));
  return series_exp(e).truncated(order);
}

MatPS psi_forward_regular(const Mat<GQ>& A, const GQ& lambda, const Rat& T,
                          int order) {
  if (lambda.is_zero())
    throw std::invalid_argument("psi_forward_regular: lambda must be nonzero");
  GQ nu = GQ(Rat(0), Rat(2)) * lambda * GQ(T);
  PS l = series_log(
      (PS::constant(GQ(1)) + PS::monomial(nu, 1, 1)).truncated(order + 1));
  MatPS arg(A.n, A.n);
  GQ li = lambda.inv();
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j)
      if (!A(i, j).is_zero()) arg(i, j) = l * (li * A(i, j));
  return mps_exp(arg, A.n);
}

MatPS psi_forward_general(const FormalLambdaConnection& conn) {
  int r = conn.A.n;
  int q = conn.q;
  int N = conn.order;
  if (r != conn.A.m || r == 0)
    throw std::invalid_argument("psi_forward_general: square matrix required");
  MatPS A = normalize_entries(conn.A, q, N, "psi_forward_general");
  MatGQ A0(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) A0(i, j) = A(i, j).coeff_idx(0);
  if (!matq_nilpotent(A0))
    throw std::invalid_argument(
        "psi_forward_general: constant term must be nilpotent (Poincare rank < q)");

  GQ two_i(Rat(0), Rat(2));
  if (conn.lambda.is_zero()) {
    // monodromy convention: G = exp(2 sqrt(-1) T A); truncating the input
    // first keeps the mps_exp term bound proportional to N
    MatPS arg(r, r);
    GQ s = two_i * GQ(conn.T);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) arg(i, j) = A(i, j).truncated(N) * s;
    MatPS G = mps_exp(arg, r);
    for (PS& e : G.a) e = e.truncated(N);
    return G;
  }

  // B(t, x) = 2 sqrt(-1) A(x (1 + 2 sqrt(-1) lambda t x^q)^{-1/q}),
  // expanded order by order in x with polynomial-in-t coefficients
  GQ tl = two_i * conn.lambda;
  std::vector<PolyMat> B(static_cast<size_t>(N), pm_zero(r));
  for (size_t k = 0; k < B.size(); ++k)
    B[k].assign(static_cast<size_t>(N) / q + 1, MatGQ(r, r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int m = 0; m < N; ++m) {
        GQ am = A(i, j).coeff_idx(m);
        if (am.is_zero()) continue;
        GQ tpow(1);
        for (int jj = 0; m + q * jj < N; ++jj) {
          GQ coef = two_i * am * GQ(binom_rat(rat(-m, q), jj)) * tpow;
          B[static_cast<size_t>(m + q * jj)][static_cast<size_t>(jj)](i, j) =
              B[static_cast<size_t>(m + q * jj)][static_cast<size_t>(jj)](i, j) + coef;
          tpow = tpow * tl;
        }
      }

  MatGQ B0 = B[0][0];  // = 2 sqrt(-1) A0, nilpotent
  PolyMat S0(static_cast<size_t>(r), MatGQ(r, r));
  PolyMat Em(static_cast<size_t>(r), MatGQ(r, r));
  {
    MatGQ pw = MatGQ::identity(r, GQ(1));
    long fact = 1;
    for (int k = 0; k < r; ++k) {
      if (k > 0) {
        pw = pw * B0;
        fact *= k;
      }
      S0[static_cast<size_t>(k)] = pw.scaled(GQ(rat(1, fact)));
      Em[static_cast<size_t>(k)] = pw.scaled(GQ(rat((k % 2) ? -1 : 1, fact)));
    }
  }

  std::vector<PolyMat> S(static_cast<size_t>(N), pm_zero(r));
  S[0] = S0;
  for (int n = 1; n < N; ++n) {
    PolyMat R = pm_zero(r);
    for (int k = 0; k < n; ++k) {
      bool empty = true;
      for (const MatGQ& c : B[static_cast<size_t>(n - k)])
        empty = empty && matq_is_zero(c);
      if (empty) continue;
      R = pm_add(R, pm_mul(S[static_cast<size_t>(k)], B[static_cast<size_t>(n - k)]));
    }
    S[static_cast<size_t>(n)] = pm_mul(pm_integrate(pm_mul(R, Em)), S0);
  }

  GQ tT(conn.T, Rat(0));
  MatPS G(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      PS e;
      e.p = q;
      e.lo = 0;
      e.hi = N;
      e.c.assign(static_cast<size_t>(N), GQ());
      for (int n = 0; n < N; ++n)
        e.c[static_cast<size_t>(n)] = pm_eval(S[static_cast<size_t>(n)], tT)(i, j);
      e.drop_leading_zeros();
      G(i, j) = std::move(e);
    }
  return G;
}

FormalLambdaConnection psi_inverse(const MatPS& G, int q, const GQ& lambda,
                                   const Rat& T, int order) {
  int r = G.n;
  if (r != G.m || r == 0)
    throw std::invalid_argument("psi_inverse: square matrix required");
  MatPS Gn(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      PS e = G(i, j).with_ram(q);
      for (long k = e.lo; k < 0; ++k)
        if (!e.coeff_idx(k).is_zero())
          throw std::domain_error("psi_inverse: input has level >= 1 (pole)");
      if (e.hi < kExact && e.hi < order)
        throw std::runtime_error("psi_inverse: input window shorter than order");
      Gn(i, j) = std::move(e);
    }
  MatGQ G0(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) G0(i, j) = Gn(i, j).coeff_idx(0);
  if (!matq_nilpotent(G0 - MatGQ::identity(r, GQ(1))))
    throw std::domain_error(
        "psi_inverse: input has level >= 1 (constant term not unipotent)");

  GQ inv2iT = GQ(Rat(0), Rat(2) * T).inv();
  FormalLambdaConnection conn;
  conn.q = q;
  conn.lambda = lambda;
  conn.T = T;
  conn.order = order;

  if (lambda.is_zero()) {
    MatPS Gt(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) Gt(i, j) = Gn(i, j).truncated(order);
    MatPS L = mps_log(Gt, r);
    conn.A = MatPS(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) conn.A(i, j) = (L(i, j) * inv2iT).truncated(order);
    return conn;
  }

  MatGQ A0 = matq_log_unipotent(G0).scaled(inv2iT);
  conn.A = MatPS(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      PS e;
      e.p = q;
      e.lo = 0;
      e.hi = order;
      e.c.assign(static_cast<size_t>(order), GQ());
      e.c[0] = A0(i, j);
      conn.A(i, j) = std::move(e);
    }

  for (int n = 1; n < order; ++n) {
    FormalLambdaConnection cur = conn;
    cur.order = n + 1;
    MatPS Gcur = psi_forward_general(cur);
    std::vector<GQ> D(static_cast<size_t>(r) * r);
    bool all_zero = true;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        GQ d = Gn(i, j).coeff_idx(n) - Gcur(i, j).coeff_idx(n);
        all_zero = all_zero && d.is_zero();
        D[static_cast<size_t>(i) * r + j] = d;
      }
    if (all_zero) continue;
    // the order-n response to a unit perturbation of each A_n entry is exact
    // (lower orders are unchanged), so one probe per basis matrix suffices
    std::vector<std::vector<GQ>> L(static_cast<size_t>(r) * r,
                                   std::vector<GQ>(static_cast<size_t>(r) * r));
    for (int bi = 0; bi < r; ++bi)
      for (int bj = 0; bj < r; ++bj) {
        FormalLambdaConnection probe = cur;
        probe.A(bi, bj).c[static_cast<size_t>(n)] =
            probe.A(bi, bj).c[static_cast<size_t>(n)] + GQ(1);
        MatPS Gp = psi_forward_general(probe);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j)
            L[static_cast<size_t>(i) * r + j][static_cast<size_t>(bi) * r + bj] =
                Gp(i, j).coeff_idx(n) - Gcur(i, j).coeff_idx(n);
      }
    std::vector<GQ> x = gq_solve(std::move(L), std::move(D));
    for (int bi = 0; bi < r; ++bi)
      for (int bj = 0; bj < r; ++bj)
        conn.A(bi, bj).c[static_cast<size_t>(n)] =
            conn.A(bi, bj).c[static_cast<size_t>(n)] +
            x[static_cast<size_t>(bi) * r + bj];
  }
  return conn;
}

}  // namespace dmkh
