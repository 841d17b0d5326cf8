// Truncated Puiseux series over Q(i) in a distinguished small variable x
// (x stands for beta_1^{-1}, y^{-1}, or w^{-1} depending on context).
//
// A series stores coefficients for exponents j/p with lo <= j < hi; hi is
// the first *unknown* index, so the window records how far the value is
// trusted. Operations propagate windows honestly: adding/multiplying two
// series can only shrink the trusted range. A saturating sentinel marks
// exactly-known (polynomial) values.
#pragma once

#include "dmkh/exact.hpp"
#include "dmkh/matrix.hpp"

#include <limits>

namespace dmkh {

inline constexpr int kDefaultOrder = 12;  // default truncation window length
inline constexpr long kExact = std::numeric_limits<long>::max() / 4;

struct PS {
  int p = 1;          // ramification: exponents live in (1/p)Z
  long lo = 0;        // lowest tracked exponent index
  long hi = kExact;   // first unknown index (exclusive)
  std::vector<GQ> c;  // c[k] = coefficient of x^{(lo+k)/p}

  PS() = default;  // exact zero

  static PS constant(GQ a) { return monomial(std::move(a), 0, 1); }
  static PS monomial(GQ a, long j, int p);

  bool known_zero() const;     // all known coefficients vanish
  GQ coeff_idx(long j) const;  // coefficient of x^{j/p} (0 if outside window)
  GQ coeff(const Rat& e) const;  // coefficient at rational exponent e

  // lowest nonzero exponent as a rational; throws if zero on the window
  Rat val() const;
  GQ lead() const;

  PS with_ram(int newp) const;     // embed into finer ramification (p | newp)
  PS truncated(long new_hi) const;  // shrink the trusted window
  void drop_leading_zeros();

  PS operator-() const;
  PS operator+(const PS& o) const;
  PS operator-(const PS& o) const;
  PS operator*(const PS& o) const;
  PS operator*(const GQ& s) const;
  PS inv() const;

  // (1 + s)^a for rational a, where *this = 1 + (positive valuation);
  // principal branch binomial series.
  PS pow_rat(const Rat& a) const;
  PS pow_int(long n) const;  // integer powers of arbitrary invertible series
};

// are a and b equal on the overlap of their trusted windows?
bool ps_equal(const PS& a, const PS& b);

std::string ps_to_string(const PS& s, const std::string& var);

// exp(s) for val(s) > 0;  log(u) for u = 1 + (positive valuation)
PS series_exp(const PS& s);
PS series_log(const PS& u);

// The shift automorphism of C((y_q^{-1})): Phi*(y_q) = y_q (1 + nu y^{-1})^{1/q}
// acting on a series in x_q = y_q^{-1} (so q = s.p and x_q^q = y^{-1}):
// x_q^j  ->  x_q^j (1 + nu x_q^q)^{-j/q}.
PS series_shift(const PS& s, const GQ& nu);

// expansion of a rational function in beta at infinity, x = beta^{-1},
// with window [v_inf, v_inf + order)
PS ps_from_rf(const RF& f, int order);

// matrix helpers ------------------------------------------------------------

using MatPS = Mat<PS>;

MatPS mps_identity(int r);
MatPS mps_shift(const MatPS& M, const GQ& nu);
bool mps_equal(const MatPS& A, const MatPS& B);

// valuation of det at infinity (lowest exponent of the determinant);
// throws if the determinant vanishes on its trusted window
Rat det_valuation_inf(const MatPS& M);

// matrix exp/log: exp for positive-valuation or nilpotent-constant-part
// arguments (finitely many terms contribute per tracked order); log for
// I + N with N of positive valuation or nilpotent constant part.
MatPS mps_exp(const MatPS& A, int nilpotent_rank_bound);
MatPS mps_log(const MatPS& U, int nilpotent_rank_bound);

}  // namespace dmkh
