// Text manifests (.dm files) describing difference modules with parabolic
// data, formal lambda-connections, and model monopoles; strict key=value
// grammar with bracketed matrices over polynomial expressions, a canonical
// printer satisfying parse(print(m)) = m, and builders into the core types.
#pragma once

#include "dmkh/bridge.hpp"
#include "dmkh/monopole.hpp"
#include "dmkh/parabolic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dmkh {

struct ManifestError : std::runtime_error {
  int line;
  ManifestError(int ln, const std::string& what)
      : std::runtime_error("line " + std::to_string(ln) + ": " + what),
        line(ln) {}
};

struct Manifest {
  int version = 1;
  std::string entity;  // difference_module | lambda_connection | monopole_model

  GQ lambda;
  Rat T = 1;

  // --- difference_module ---------------------------------------------------
  std::string form = "explicit";  // explicit | example_A | example_B
  std::optional<Mat<RF>> phi;     // polynomials in b
  struct PlaceSpec {
    GQ x;
    std::vector<Rat> weights;
    std::vector<Mat<RF>> chain;  // interior lattices (optional)
  };
  std::vector<PlaceSpec> places;
  int inf_p = 1;
  std::optional<MatPS> inf_basis;  // polynomials in y (negative powers allowed)
  std::vector<Rat> inf_weights;
  // example_A parameters
  std::vector<GQ> S;
  std::vector<long> ell;
  std::vector<Rat> t, d;
  // example_B parameters
  std::vector<GQ> P_roots;
  GQ P_lead = GQ(1);
  std::optional<Poly> Q;

  // --- lambda_connection ---------------------------------------------------
  int q = 1;
  std::optional<MatPS> A;  // polynomials in w^{-1} (exponents <= 0 in w)
  std::optional<Rat> point_a;
  std::optional<GQ> point_alpha;

  // --- monopole_model ------------------------------------------------------
  std::string family;  // lp_ell | frobenius | tame | global_gamma | dirac_l
  int mono_p = 1;      // `ell` reuses the shared ell list (first entry)
  Rat mono_a = 0;
  GQ mono_alpha, mono_gamma;
  std::vector<GQ> frak_a;
  Rat mono_weight = 0, mono_t1_0 = 0;

  // --- options ---------------------------------------------------------
  std::optional<int> opt_order;
  std::optional<int> opt_degree_bound;
  std::optional<int> opt_samples;
};

// Strict parser: unknown keys, malformed values, and shape mismatches raise
// ManifestError with the offending line.
Manifest parse_manifest(const std::string& text);

// Canonical printer; parse_manifest(print_manifest(m)) reproduces m.
std::string print_manifest(const Manifest& m);

// ---------------------------------------------------------------------------
// builders into core types (throw std::invalid_argument / ManifestError on
// semantic problems)
// ---------------------------------------------------------------------------

struct BuiltPdm {
  ParabolicDifferenceModule pdm;
  std::optional<Rat> closed_form;  // set for the example families
  std::string warning;
};

BuiltPdm manifest_to_pdm(const Manifest& m, int order);
FormalLambdaConnection manifest_to_connection(const Manifest& m, int order);
ModelMonopole manifest_to_monopole(const Manifest& m);

}  // namespace dmkh
