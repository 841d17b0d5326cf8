// Parabolic difference modules: filtered-bundle degree at infinity, the
// parabolic degree and slope, induced structures on invariant subspaces,
// stability verdicts for rank <= 2, and the two worked example families.
#pragma once

#include "dmkh/classify.hpp"
#include "dmkh/difference.hpp"
#include "dmkh/puiseux.hpp"

#include <string>
#include <vector>

namespace dmkh {

// The full parabolic tuple: a difference module, lattice chains with weights
// at the finite places, and a good filtration at infinity recorded by an
// adapted frame (columns in the V-basis, Puiseux entries with ramification p)
// whose i-th column carries parabolic degree weights[i].
struct ParabolicDifferenceModule {
  DiffModule module;
  ParabolicFinite finite;
  int p = 1;                 // ramification of the adapted frame at infinity
  MatPS adapted_basis;       // columns: adapted frame in the V-basis
  std::vector<Rat> weights;  // d_i = parabolic degree of column i
};

// deg of the filtered bundle on the projective line:
//   -v_inf(det adapted_basis) - (1/p) * sum_i d_i
Rat filtered_bundle_degree_P1(const ParabolicDifferenceModule& pdm);

// deg = deg(filtered bundle) + sum_x sum_i (1 - t^(i)/T) deg(L_i, L_{i-1})
//       - sum_omega (omega/2) r(omega)
Rat parabolic_degree(const ParabolicDifferenceModule& pdm,
                     int order = 2 * kDefaultOrder);

// mu = deg / rank
Rat parabolic_slope(const ParabolicDifferenceModule& pdm,
                    int order = 2 * kDefaultOrder);

// Induced parabolic structure on a Phi*-invariant subspace, given by a basis
// of coordinate vectors. Supported: the full space (returns the input) and
// lines (rank-1 subspaces). Throws std::domain_error if the subspace is not
// Phi*-invariant, std::invalid_argument on empty/unsupported dimensions.
ParabolicDifferenceModule induced_submodule(
    const ParabolicDifferenceModule& pdm,
    const std::vector<std::vector<RF>>& basis, int order = 2 * kDefaultOrder);

// ---------------------------------------------------------------------------
// stability
// ---------------------------------------------------------------------------
enum class StabilityStatus { Stable, Semistable, Unstable, StableUpToBound };

struct StabilityVerdict {
  StabilityStatus status = StabilityStatus::Stable;
  std::string witness;   // description of the (de)stabilizing line, if any
  Rat witness_mu;        // slope of the witness (valid when witness nonempty)
  Rat total_mu;
  int bound_used = 0;    // Riccati degree bound actually searched
  std::string note;      // why the search stopped short, when it did
};

// Exhaustive invariant-line search for rank <= 2 (rank 1 is trivially
// stable; rank > 2 throws std::invalid_argument). degree_bound < 0 selects
// the default 2 * (max pole order of phi entries) + rank.
StabilityVerdict stability_check(const ParabolicDifferenceModule& pdm,
                                 int degree_bound = -1);

// ---------------------------------------------------------------------------
// worked example families
// ---------------------------------------------------------------------------
struct BuiltExample {
  ParabolicDifferenceModule pdm;
  Rat closed_form;      // the closed-form parabolic degree
  std::string warning;  // nonempty when a stated precondition is relaxed
};

// Family A: phi = [[0, P], [1, 0]] with P = prod_a (beta - a)^{ell(a)},
// one weight t_a per marked point, infinity weights d (two values for even
// total ell, one value - used twice on the ramified frame - for odd).
BuiltExample build_example_A(const std::vector<GQ>& S,
                             const std::vector<long>& ell,
                             const std::vector<Rat>& t,
                             const std::vector<Rat>& d, const Rat& T = Rat(1),
                             int order = 2 * kDefaultOrder);

// Family B: phi = [[0, P], [-1, Q]] with P = lead * prod (beta - root),
// simple roots, 2 deg Q >= deg P, (deg P, deg Q) != (0, 0); one weight t per
// root of P and infinity weights (d1, d2) on the eigenframe.
BuiltExample build_example_B(const std::vector<GQ>& P_roots, const GQ& P_lead,
                             const Poly& Q, const std::vector<Rat>& t,
                             const Rat& d1, const Rat& d2, const Rat& T = Rat(1),
                             int order = 2 * kDefaultOrder);

}  // namespace dmkh
