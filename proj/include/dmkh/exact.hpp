// Exact arithmetic foundation: rationals (GMP), Gaussian rationals,
// univariate polynomials and rational functions over Q(i).
//
// All types are immutable value types; operations are pure.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dmkh {

using Rat = mpq_class;

inline Rat rat(long n, long d = 1) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);  // "p", "p/q", with sign

// Exact square root of a nonnegative rational, if it exists.
std::optional<Rat> rat_sqrt(const Rat& r);

// floor/ceil of a rational as an exact rational integer
Rat rat_floor(const Rat& r);
Rat rat_ceil(const Rat& r);

// ---------------------------------------------------------------------------
// Gaussian rationals Q(i)
// ---------------------------------------------------------------------------
struct GQ {
  Rat re, im;

  GQ() : re(0), im(0) {}
  GQ(long n) : re(n), im(0) {}
  explicit GQ(const Rat& r) : re(r), im(0) {}
  GQ(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GQ conj() const { return {re, -im}; }
  Rat norm() const { return re * re + im * im; }  // |z|^2

  GQ operator-() const { return {-re, -im}; }
  GQ operator+(const GQ& o) const { return {re + o.re, im + o.im}; }
  GQ operator-(const GQ& o) const { return {re - o.re, im - o.im}; }
  GQ operator*(const GQ& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GQ inv() const {
    if (is_zero()) throw std::domain_error("GQ: division by zero");
    Rat n = norm();
    return {re / n, -im / n};
  }
  GQ operator/(const GQ& o) const { return *this * o.inv(); }
  bool operator==(const GQ& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GQ& o) const { return !(*this == o); }
};

inline GQ gq_i() { return GQ(Rat(0), Rat(1)); }

// lexicographic order on (re, im); used only for canonical representatives
bool gq_lex_less(const GQ& a, const GQ& b);

std::string gq_to_string(const GQ& z);          // canonical "a/b+c/d i" form
GQ gq_from_string(const std::string& s);        // parser for the same grammar

// Exact square root in Q(i), if one exists. Returns the root with
// lexicographically least (re, im) among the two.
std::optional<GQ> gq_sqrt(const GQ& z);

// ---------------------------------------------------------------------------
// Dense univariate polynomials over Q(i), coefficients ascending.
// The zero polynomial has empty coefficient vector and degree -1.
// ---------------------------------------------------------------------------
struct Poly {
  std::vector<GQ> c;

  Poly() = default;
  explicit Poly(GQ a) {
    if (!a.is_zero()) c.push_back(std::move(a));
  }
  static Poly monomial(GQ a, int k);
  static Poly var() { return monomial(GQ(1), 1); }

  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  GQ coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : GQ();
  }
  GQ lead() const {
    if (is_zero()) throw std::domain_error("Poly: lead of zero");
    return c.back();
  }
  void trim();

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const GQ& s) const;
  bool operator==(const Poly& o) const { return c == o.c; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  GQ eval(const GQ& x) const;
  Poly derivative() const;
  Poly pow(int n) const;

  // Taylor shift: p(x) -> p(x + a)
  Poly shift_arg(const GQ& a) const;
};

// Euclidean division (field coefficients): a = q*b + r, deg r < deg b.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);  // monic gcd (or zero)
Poly poly_monic(const Poly& p);

// Multiplicity of root x in p (0 if not a root).
int poly_root_multiplicity(const Poly& p, const GQ& x);

std::string poly_to_string(const Poly& p, const std::string& var);

// ---------------------------------------------------------------------------
// Rational functions over Q(i), stored gcd-reduced with monic denominator.
// ---------------------------------------------------------------------------
struct RF {
  Poly num, den;  // den monic, gcd(num, den) = 1

  RF() : num(), den(Poly(GQ(1))) {}
  RF(Poly n, Poly d);
  explicit RF(const GQ& a) : num(Poly(a)), den(Poly(GQ(1))) {}
  explicit RF(const Poly& p) : num(p), den(Poly(GQ(1))) {}
  static RF var() { return RF(Poly::var()); }

  bool is_zero() const { return num.is_zero(); }
  bool is_constant() const { return num.deg() <= 0 && den.deg() == 0; }
  GQ constant() const;

  RF operator-() const;
  RF operator+(const RF& o) const;
  RF operator-(const RF& o) const;
  RF operator*(const RF& o) const;
  RF operator/(const RF& o) const;
  bool operator==(const RF& o) const { return num == o.num && den == o.den; }
  bool operator!=(const RF& o) const { return !(*this == o); }

  RF inv() const;

  // valuation at infinity: v_inf = deg den - deg num (v_inf(0) = +infinity,
  // reported via the optional).
  std::optional<int> v_inf() const;

  // order of vanishing at a finite point x (negative for a pole)
  int valuation_at(const GQ& x) const;

  // evaluation (throws on pole)
  GQ eval(const GQ& x) const;

  // argument shift beta -> beta + a
  RF shift_arg(const GQ& a) const;
};

std::string rf_to_string(const RF& f, const std::string& var);

}  // namespace dmkh
