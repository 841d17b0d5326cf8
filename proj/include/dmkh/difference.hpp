// Difference modules over C(beta_1) with the twisted shift
// Phi*(beta_1) = beta_1 + nu, nu = 2*lambda*sqrt(-1)*T, their lattices at
// finite places, and parabolic structure at finite places.
#pragma once

#include "dmkh/exact.hpp"
#include "dmkh/matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace dmkh {

using MatRF = Mat<RF>;

struct DiffModule {
  GQ lambda;
  Rat T = 1;
  int rank = 0;
  MatRF phi;  // columns give Phi* of the standard basis
  GQ nu;      // cached 2*lambda*i*T
};

// throws std::invalid_argument on singular phi / shape mismatch
DiffModule make_module(const GQ& lambda, const Rat& T, int rank, MatRF phi);

// coefficient shift sigma: beta -> beta + nu, applied entrywise
MatRF mrf_shift(const MatRF& M, const GQ& nu);
std::vector<RF> vrf_shift(const std::vector<RF>& v, const GQ& nu);

// (Phi*)^n of a vector of rational-function coordinates
std::vector<RF> apply_phi(const DiffModule& mod, std::vector<RF> v, int n);

// ---------------------------------------------------------------------------
// lattices at finite places
// ---------------------------------------------------------------------------
struct Lattice {
  GQ place;      // finite point x in Q(i)
  MatRF basis;   // columns express the lattice basis in the ambient basis
  int precision = 16;  // retained knob; bases are exact, so never raised
};

// deg(L1, L2) = val_x det(B1) - val_x det(B2); antisymmetric, cocycle law.
int lattice_degree(const Lattice& L1, const Lattice& L2);

// independent oracle: valuations of the elementary divisors (Smith normal
// form over the local ring at the place) of B2^{-1} B1, summed
int lattice_degree_smith(const Lattice& L1, const Lattice& L2);

// the two implicit end lattices of a parabolic chain at x
Lattice standard_lattice(const DiffModule& mod, const GQ& x);
Lattice phi_preimage_lattice(const DiffModule& mod, const GQ& x);

// ---------------------------------------------------------------------------
// parabolic structure at finite places
// ---------------------------------------------------------------------------
struct ParabolicPlace {
  GQ x;
  std::vector<Rat> weights;        // 0 <= t(1) < ... < t(m) < T
  std::vector<MatRF> chain;        // interior lattices L_{x,1},...,L_{x,m-1}
};

struct ParabolicFinite {
  std::vector<ParabolicPlace> places;  // the divisor D is the set of x's
};

struct SingularityRecord {
  Rat t;
  GQ x;
  int jump;  // deg(L_{x,i}, L_{x,i-1})
};

// full lattice chain L_{x,0..m} at one place (ends made explicit)
std::vector<Lattice> parabolic_chain(const DiffModule& mod,
                                     const ParabolicPlace& pl);

std::vector<SingularityRecord> singularity_data(const DiffModule& mod,
                                                const ParabolicFinite& data);

struct ValidationReport {
  bool ok = true;
  std::string message;  // first violation, with the offending place
};

ValidationReport parabolic_validate(const DiffModule& mod,
                                    const ParabolicFinite& data);

}  // namespace dmkh
