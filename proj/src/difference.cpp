#include "dmkh/difference.hpp"

#include <algorithm>
#include <sstream>

namespace dmkh {

namespace {

std::vector<RF> mat_vec(const MatRF& M, const std::vector<RF>& v) {
  std::vector<RF> r(static_cast<size_t>(M.n));
  for (int i = 0; i < M.n; ++i) {
    RF acc;
    for (int j = 0; j < M.m; ++j) acc = acc + M(i, j) * v[static_cast<size_t>(j)];
    r[static_cast<size_t>(i)] = acc;
  }
  return r;
}

// does q(beta) have all of its roots inside D?  (divide out the known
// linear factors; a constant remainder certifies yes)
bool roots_contained_in(const Poly& q, const std::vector<GQ>& D) {
  Poly r = q;
  for (const auto& x : D) {
    Poly f = Poly::var() - Poly(x);
    while (r.deg() > 0) {
      auto [quot, rem] = poly_divmod(r, f);
      if (!rem.is_zero()) break;
      r = quot;
    }
  }
  return r.deg() <= 0;
}

}  // namespace

DiffModule make_module(const GQ& lambda, const Rat& T, int rank, MatRF phi) {
  if (phi.n != rank || phi.m != rank)
    throw std::invalid_argument("make_module: phi must be rank x rank");
  if (T <= 0) throw std::invalid_argument("make_module: T must be positive");
  if (mat_det(phi).is_zero())
    throw std::invalid_argument("make_module: phi is not invertible");
  DiffModule m;
  m.lambda = lambda;
  m.T = T;
  m.rank = rank;
  m.phi = std::move(phi);
  m.nu = GQ(Rat(0), Rat(2)) * lambda * GQ(T);
  return m;
}

MatRF mrf_shift(const MatRF& M, const GQ& nu) {
  if (nu.is_zero()) return M;
  return M.map([&](const RF& f) { return f.shift_arg(nu); });
}

std::vector<RF> vrf_shift(const std::vector<RF>& v, const GQ& nu) {
  if (nu.is_zero()) return v;
  std::vector<RF> r = v;
  for (auto& f : r) f = f.shift_arg(nu);
  return r;
}

std::vector<RF> apply_phi(const DiffModule& mod, std::vector<RF> v, int n) {
  if (static_cast<int>(v.size()) != mod.rank)
    throw std::invalid_argument("apply_phi: vector length mismatch");
  if (n >= 0) {
    for (int k = 0; k < n; ++k) v = mat_vec(mod.phi, vrf_shift(v, mod.nu));
  } else {
    MatRF phi_inv = mat_inv(mod.phi);
    for (int k = 0; k < -n; ++k) v = vrf_shift(mat_vec(phi_inv, v), -mod.nu);
  }
  return v;
}

int lattice_degree(const Lattice& L1, const Lattice& L2) {
  if (L1.place != L2.place)
    throw std::invalid_argument("lattice_degree: places differ");
  RF d1 = mat_det(L1.basis), d2 = mat_det(L2.basis);
  if (d1.is_zero() || d2.is_zero())
    throw std::domain_error("lattice_degree: singular basis");
  return d1.valuation_at(L1.place) - d2.valuation_at(L2.place);
}

int lattice_degree_smith(const Lattice& L1, const Lattice& L2) {
  if (L1.place != L2.place)
    throw std::invalid_argument("lattice_degree_smith: places differ");
  const GQ& x = L1.place;
  MatRF M = mat_inv(L2.basis) * L1.basis;
  int n = M.n;
  int total = 0;
  // diagonalize over the local ring at x; the pivot of least valuation is a
  // unit times (beta-x)^v, so all elimination quotients stay in the ring
  for (int k = 0; k < n; ++k) {
    int bi = -1, bj = -1, bv = 0;
    for (int i = k; i < n; ++i)
      for (int j = k; j < n; ++j) {
        if (M(i, j).is_zero()) continue;
        int v = M(i, j).valuation_at(x);
        if (bi < 0 || v < bv) {
          bi = i;
          bj = j;
          bv = v;
        }
      }
    if (bi < 0) throw std::domain_error("lattice_degree_smith: singular matrix");
    for (int j = 0; j < n; ++j) std::swap(M.a[(size_t)k * n + j], M.a[(size_t)bi * n + j]);
    for (int i = 0; i < n; ++i) std::swap(M.a[(size_t)i * n + k], M.a[(size_t)i * n + bj]);
    for (int i = k + 1; i < n; ++i) {
      if (M(i, k).is_zero()) continue;
      RF f = M(i, k) / M(k, k);
      for (int j = k; j < n; ++j) M(i, j) = M(i, j) - f * M(k, j);
    }
    for (int j = k + 1; j < n; ++j) {
      if (M(k, j).is_zero()) continue;
      RF f = M(k, j) / M(k, k);
      for (int i = k; i < n; ++i) M(i, j) = M(i, j) - f * M(i, k);
    }
    total += bv;
  }
  return total;
}

Lattice standard_lattice(const DiffModule& mod, const GQ& x) {
  Lattice L;
  L.place = x;
  L.basis = MatRF::identity(mod.rank, RF(GQ(1)));
  return L;
}

Lattice phi_preimage_lattice(const DiffModule& mod, const GQ& x) {
  Lattice L;
  L.place = x;
  L.basis = mrf_shift(mat_inv(mod.phi), -mod.nu);
  return L;
}

std::vector<Lattice> parabolic_chain(const DiffModule& mod,
                                     const ParabolicPlace& pl) {
  size_t m = pl.weights.size();
  if (m == 0) return {standard_lattice(mod, pl.x)};
  if (pl.chain.size() + 1 != m)
    throw std::invalid_argument("parabolic_chain: need m-1 interior lattices");
  std::vector<Lattice> out;
  out.push_back(standard_lattice(mod, pl.x));
  for (const auto& B : pl.chain) {
    Lattice L;
    L.place = pl.x;
    L.basis = B;
    out.push_back(L);
  }
  out.push_back(phi_preimage_lattice(mod, pl.x));
  return out;
}

std::vector<SingularityRecord> singularity_data(const DiffModule& mod,
                                                const ParabolicFinite& data) {
  std::vector<SingularityRecord> out;
  for (const auto& pl : data.places) {
    auto chain = parabolic_chain(mod, pl);
    for (size_t i = 1; i < chain.size(); ++i)
      out.push_back({pl.weights[i - 1], pl.x,
                     lattice_degree(chain[i], chain[i - 1])});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.x != b.x) return gq_lex_less(a.x, b.x);
    return a.t < b.t;
  });
  return out;
}

ValidationReport parabolic_validate(const DiffModule& mod,
                                    const ParabolicFinite& data) {
  ValidationReport rep;
  std::vector<GQ> D;
  for (const auto& pl : data.places) {
    if (!pl.weights.empty()) D.push_back(pl.x);
  }
  // weight sequences strictly increasing within [0, T)
  for (const auto& pl : data.places) {
    Rat prev(-1);
    for (const auto& t : pl.weights) {
      if (t < 0 || t >= mod.T || t <= prev) {
        rep.ok = false;
        rep.message = "weights not strictly increasing in [0,T) at x = " +
                      gq_to_string(pl.x);
        return rep;
      }
      prev = t;
    }
    if (!pl.weights.empty() && pl.chain.size() + 1 != pl.weights.size()) {
      rep.ok = false;
      rep.message = "chain length mismatch at x = " + gq_to_string(pl.x);
      return rep;
    }
    for (const auto& B : pl.chain)
      if (mat_det(B).is_zero()) {
        rep.ok = false;
        rep.message = "singular chain lattice at x = " + gq_to_string(pl.x);
        return rep;
      }
  }
  // localization equality away from D: the transition between V and
  // (Phi*)^{-1}(V) must be regular and invertible outside D
  MatRF Bm = mrf_shift(mat_inv(mod.phi), -mod.nu);
  MatRF Bm_inv = mrf_shift(mod.phi, -mod.nu);
  for (const MatRF* M : {&Bm, &Bm_inv}) {
    for (const auto& e : M->a) {
      if (!roots_contained_in(e.den, D)) {
        rep.ok = false;
        rep.message =
            "localization equality fails outside the declared divisor";
        return rep;
      }
    }
  }
  // places declared with m = 0 must satisfy the equality at x itself
  for (const auto& pl : data.places) {
    if (!pl.weights.empty()) continue;
    for (const MatRF* M : {&Bm, &Bm_inv})
      for (const auto& e : M->a)
        if (poly_root_multiplicity(e.den, pl.x) > 0) {
          rep.ok = false;
          rep.message = "localization equality fails at m=0 place x = " +
                        gq_to_string(pl.x);
          return rep;
        }
  }
  return rep;
}

}  // namespace dmkh
