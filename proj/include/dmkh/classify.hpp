// Classification of formal difference modules at infinity: Newton polygons,
// slopes and multiplicities, leading constants, twists by basic modules,
// ramified pullback, level detection, spectral splitting, the m-step basic
// cocycle, and the good-filtration containment check.
#pragma once

#include "dmkh/difference.hpp"
#include "dmkh/puiseux.hpp"

#include <string>
#include <vector>

namespace dmkh {

// A formal difference module over C((y_q^{-1})): matrix entries are Puiseux
// series in x = y^{-1} with ramification q (so the entry lattice is x^{1/q}).
struct FormalModule {
  int q = 1;
  GQ nu;     // shift parameter of the underlying Z-action
  MatPS M;   // Phi* matrix, columns giving Phi* of the frame
};

FormalModule formal_from_module(const DiffModule& mod, int order);

// rank-1 basic module with slope ell/q: Phi*(e) = alpha * y_q^{ell} * e
FormalModule basic_module(int q, long ell, const GQ& alpha, const GQ& nu);

// ---------------------------------------------------------------------------
// Newton polygon / slope data
// ---------------------------------------------------------------------------
struct SlopeComponent {
  Rat omega;              // slope
  int multiplicity = 0;   // contribution to r(omega) of this (alpha, b) part
  bool alpha_resolved = false;
  GQ alpha;               // Galois-orbit representative (valid if resolved)
  int orbit_size = 1;
  PS frakb;               // fractional part of the normalized eigenvalue
  std::string note;       // "unresolved..." diagnostics
};

struct SlopeDecomposition {
  int p = 1;  // ramification: lcm of slope denominators (and input lattice)
  std::vector<SlopeComponent> components;         // sorted by ascending omega
  std::vector<std::pair<long, Rat>> polygon;      // lower-hull vertices (j, v_j)
};

// characteristic polynomial of M by Faddeev-LeVerrier; index k holds the
// coefficient of X^k
std::vector<PS> char_poly(const MatPS& M);

// slopes + multiplicities only (one component per polygon edge)
SlopeDecomposition newton_polygon(const FormalModule& fm);
SlopeDecomposition newton_polygon(const DiffModule& mod, int order = 2 * kDefaultOrder);

// leading constants along the edge of slope omega (throws if not a slope);
// one entry per residual root found, with multiplicities; roots of residual
// factors of degree > 2 are reported unresolved
std::vector<SlopeComponent> leading_constants(const FormalModule& fm,
                                              const Rat& omega);

// tensor with L_q(ell, alpha)^{-1}: multiplies phi by alpha^{-1} y_q^{-ell}
FormalModule twist_by_basic(const FormalModule& fm, long ell, const GQ& alpha);

FormalModule ramified_pullback(const FormalModule& fm, int p);

enum class Level { Zero, LessThanOne, Higher };
Level level_check(const FormalModule& fm, int order);

// ---------------------------------------------------------------------------
// spectral splitting
// ---------------------------------------------------------------------------
struct SplitBlock {
  std::vector<int> indices;  // positions in the split frame
  Rat omega;
  GQ alpha;
  PS frakb;
  MatPS block;  // the diagonal block of the split matrix
};

struct SplitResult {
  bool complete = false;
  MatPS conjugation;  // G with G^{-1} M sigma(G) block-diagonal
  MatPS split;        // the block-diagonal matrix
  std::vector<SplitBlock> blocks;
  std::string residue;  // non-empty if splitting stopped early
};

SplitResult spectral_split(const FormalModule& fm, int order);

// closed form for the m-step cocycle of the basic object (lemma of the m-fold
// product); equals the m-fold shift-composition of the single-step factor
PS basic_phi_power(int q, long ell, const GQ& lambda, const Rat& T, int m,
                   int order);

// ---------------------------------------------------------------------------
// good filtration check
// ---------------------------------------------------------------------------
struct FiltrationCheck {
  bool ok = true;
  std::string message;
};

// filtration_coords: columns give the filtration-adapted basis in the split
// frame; weights[j] is the parabolic degree of column j.
FiltrationCheck good_filtration_check(const SplitResult& split,
                                      const MatPS& filtration_coords,
                                      const std::vector<Rat>& weights,
                                      const GQ& nu, int order);

}  // namespace dmkh
