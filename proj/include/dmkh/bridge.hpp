// The bridge between formal lambda-connections of Poincare rank < q and
// formal difference modules of level < 1: rank-1 and regular-singular closed
// forms, the general order-by-order transform and its inverse, and the
// pointwise KMS comparison map kappa(lambda).
#pragma once

#include "dmkh/classify.hpp"
#include "dmkh/puiseux.hpp"

namespace dmkh {

// A formal lambda-connection written in the w_q-chart at infinity:
// the connection coefficient is A = sum_{j >= 0} A_j w_q^{-j}, stored as a
// matrix of Puiseux series in x_q = w_q^{-1} (nonnegative exponents only),
// with nilpotent constant term A_0 (Poincare rank < q).
struct FormalLambdaConnection {
  int q = 1;
  GQ lambda;
  Rat T = 1;
  int order = kDefaultOrder;  // trusted truncation order N (in 1/q steps)
  MatPS A;
};

struct KmsPoint {
  Rat a;
  GQ alpha;
};

// kappa(lambda, a, alpha) = (a + 2 Re(lambda conj(alpha)),
//                            alpha - a lambda - conj(alpha) lambda^2)
KmsPoint kms_map(const GQ& lambda, const KmsPoint& pt);

// Rank-1 closed form: the cocycle factor
//   exp(lambda^{-1} (frak_a(y_q (1 + nu y^{-1})^{1/q}) - frak_a(y_q)))
// for frak_a in w_q C[w_q] with deg < q; returns 1 + O(y_q^{-1}).
PS psi_forward_rank1(const Poly& frak_a, int q, const GQ& lambda, const Rat& T,
                     int order);

// Regular-singular closed form: exp(lambda^{-1} A log(1 + nu y^{-1})) for a
// constant matrix A.
MatPS psi_forward_regular(const Mat<GQ>& A, const GQ& lambda, const Rat& T,
                          int order);

// General transform. lambda != 0: solve d/dt S = S * (2 sqrt(-1)) A(w_q(t)^{-1})
// with S(0) = Id along w = y + 2 sqrt(-1) lambda t (each series order is an
// exact polynomial in t by nilpotence of A_0) and return G = S(T) in the
// t = 0 frame. lambda = 0: the monodromy convention G = exp(2 sqrt(-1) T A).
MatPS psi_forward_general(const FormalLambdaConnection& conn);

// Order-by-order inverse: recovers the connection whose transform is G.
// Requires level(G) < 1 (unipotent constant term, no negative exponents).
FormalLambdaConnection psi_inverse(const MatPS& G, int q, const GQ& lambda,
                                   const Rat& T, int order);

}  // namespace dmkh
