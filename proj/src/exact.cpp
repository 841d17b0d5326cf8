#include "dmkh/exact.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dmkh {

// ---------------------------------------------------------------------------
// rationals
// ---------------------------------------------------------------------------

std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  r.canonicalize();
  return r;
}

std::optional<Rat> rat_sqrt(const Rat& r) {
  if (r < 0) return std::nullopt;
  mpz_class n = r.get_num(), d = r.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  Rat out(sn, sd);
  out.canonicalize();
  return out;
}

Rat rat_floor(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return Rat(q);
}

Rat rat_ceil(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return Rat(q);
}

// ---------------------------------------------------------------------------
// Gaussian rationals
// ---------------------------------------------------------------------------

bool gq_lex_less(const GQ& a, const GQ& b) {
  if (a.re != b.re) return a.re < b.re;
  return a.im < b.im;
}

std::string gq_to_string(const GQ& z) {
  if (z.im == 0) return rat_to_string(z.re);
  std::string imabs = rat_to_string(abs(z.im));
  std::string ipart = (imabs == "1") ? "i" : imabs + "i";
  if (z.re == 0) return (z.im < 0 ? "-" : "") + ipart;
  return rat_to_string(z.re) + (z.im < 0 ? "-" : "+") + ipart;
}

namespace {

// One term of "a", "a i", "i" (sign already consumed); pos at term start.
// Returns (value, is_imaginary).
std::pair<Rat, bool> parse_gq_term(const std::string& s, size_t& pos) {
  size_t n = s.size();
  auto skip_ws = [&] {
    while (pos < n && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  skip_ws();
  if (pos < n && (s[pos] == 'i' || s[pos] == 'I')) {
    ++pos;
    return {Rat(1), true};
  }
  size_t start = pos;
  while (pos < n && (std::isdigit(static_cast<unsigned char>(s[pos])) ||
                     s[pos] == '/'))
    ++pos;
  if (pos == start) throw std::invalid_argument("bad Gaussian rational: " + s);
  Rat v = rat_from_string(s.substr(start, pos - start));
  skip_ws();
  if (pos < n && (s[pos] == 'i' || s[pos] == 'I')) {
    ++pos;
    return {v, true};
  }
  return {v, false};
}

}  // namespace

GQ gq_from_string(const std::string& s) {
  size_t pos = 0, n = s.size();
  GQ out;
  bool any = false;
  while (true) {
    while (pos < n && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos >= n) break;
    int sign = 1;
    while (pos < n && (s[pos] == '+' || s[pos] == '-')) {
      if (s[pos] == '-') sign = -sign;
      ++pos;
      while (pos < n && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    auto [v, imag] = parse_gq_term(s, pos);
    if (sign < 0) v = -v;
    if (imag)
      out.im += v;
    else
      out.re += v;
    any = true;
  }
  if (!any) throw std::invalid_argument("empty Gaussian rational literal");
  return out;
}

std::optional<GQ> gq_sqrt(const GQ& z) {
  if (z.is_zero()) return GQ();
  // (x+yi)^2 = a+bi:  x^2 - y^2 = a, 2xy = b.  With n = |z|, x^2 = (a+n)/2.
  auto n = rat_sqrt(z.norm());
  if (!n) return std::nullopt;
  Rat x2 = (z.re + *n) / 2;
  auto x = rat_sqrt(x2);
  GQ root;
  if (x && *x != 0) {
    root = GQ(*x, z.im / (2 * *x));
  } else {
    // a + n == 0: z is a negative real; root is purely imaginary
    auto y = rat_sqrt(-z.re);
    if (!y) return std::nullopt;
    root = GQ(Rat(0), *y);
  }
  if (root * root != z) return std::nullopt;
  GQ other = -root;
  return gq_lex_less(root, other) ? root : other;
}

// ---------------------------------------------------------------------------
// polynomials
// ---------------------------------------------------------------------------

Poly Poly::monomial(GQ a, int k) {
  Poly p;
  if (a.is_zero()) return p;
  p.c.assign(static_cast<size_t>(k) + 1, GQ());
  p.c[static_cast<size_t>(k)] = std::move(a);
  return p;
}

void Poly::trim() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& a : r.c) a = -a;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.c.resize(std::max(c.size(), o.c.size()));
  for (size_t k = 0; k < r.c.size(); ++k) r.c[k] = coeff((int)k) + o.coeff((int)k);
  r.trim();
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  Poly r;
  r.c.assign(c.size() + o.c.size() - 1, GQ());
  for (size_t a = 0; a < c.size(); ++a)
    for (size_t b = 0; b < o.c.size(); ++b) r.c[a + b] = r.c[a + b] + c[a] * o.c[b];
  r.trim();
  return r;
}

Poly Poly::operator*(const GQ& s) const {
  if (s.is_zero()) return Poly();
  Poly r = *this;
  for (auto& a : r.c) a = a * s;
  return r;
}

GQ Poly::eval(const GQ& x) const {
  GQ acc;
  for (size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
  return acc;
}

Poly Poly::derivative() const {
  Poly r;
  for (size_t k = 1; k < c.size(); ++k) r.c.push_back(c[k] * GQ((long)k));
  r.trim();
  return r;
}

Poly Poly::pow(int n) const {
  Poly r(GQ(1)), base = *this;
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

Poly Poly::shift_arg(const GQ& a) const {
  // Horner: p(x+a) built from the top coefficient down
  Poly r;
  Poly xa = Poly::var() + Poly(a);
  for (size_t k = c.size(); k-- > 0;) r = r * xa + Poly(c[k]);
  return r;
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("Poly: division by zero");
  Poly q, r = a;
  GQ inv_lead = b.lead().inv();
  while (!r.is_zero() && r.deg() >= b.deg()) {
    int k = r.deg() - b.deg();
    GQ f = r.lead() * inv_lead;
    q = q + Poly::monomial(f, k);
    r = r - b * Poly::monomial(f, k);
  }
  return {q, r};
}

Poly poly_monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p * p.lead().inv();
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a);
}

int poly_root_multiplicity(const Poly& p, const GQ& x) {
  if (p.is_zero()) throw std::domain_error("root multiplicity of zero poly");
  Poly factor = Poly::var() - Poly(x);
  Poly r = p;
  int m = 0;
  while (true) {
    auto [q, rem] = poly_divmod(r, factor);
    if (!rem.is_zero()) return m;
    r = q;
    ++m;
  }
}

std::string poly_to_string(const Poly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.deg(); k >= 0; --k) {
    GQ a = p.coeff(k);
    if (a.is_zero()) continue;
    std::string term;
    bool unit = (a == GQ(1)) && k > 0;
    bool munit = (a == GQ(-1)) && k > 0;
    std::string coefs = gq_to_string(a);
    bool needs_paren = coefs.find('+') != std::string::npos ||
                       (coefs.rfind('-') != std::string::npos &&
                        coefs.rfind('-') > 0);
    if (k == 0) {
      term = needs_paren ? "(" + coefs + ")" : coefs;
    } else {
      std::string xpow = (k == 1) ? var : var + "^" + std::to_string(k);
      if (unit)
        term = xpow;
      else if (munit)
        term = "-" + xpow;
      else
        term = (needs_paren ? "(" + coefs + ")" : coefs) + "*" + xpow;
    }
    if (out.empty()) {
      out = term;
    } else if (!term.empty() && term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// rational functions
// ---------------------------------------------------------------------------

RF::RF(Poly n, Poly d) {
  if (d.is_zero()) throw std::domain_error("RF: zero denominator");
  if (n.is_zero()) {
    num = Poly();
    den = Poly(GQ(1));
    return;
  }
  Poly g = poly_gcd(n, d);
  if (g.deg() > 0) {
    n = poly_divmod(n, g).first;
    d = poly_divmod(d, g).first;
  }
  GQ lead_inv = d.lead().inv();
  num = n * lead_inv;
  den = d * lead_inv;
}

GQ RF::constant() const {
  if (!is_constant()) throw std::domain_error("RF: not constant");
  return num.coeff(0);
}

RF RF::operator-() const {
  RF r;
  r.num = -num;
  r.den = den;
  return r;
}

RF RF::operator+(const RF& o) const {
  return RF(num * o.den + o.num * den, den * o.den);
}
RF RF::operator-(const RF& o) const { return *this + (-o); }
RF RF::operator*(const RF& o) const { return RF(num * o.num, den * o.den); }
RF RF::inv() const {
  if (is_zero()) throw std::domain_error("RF: inverse of zero");
  return RF(den, num);
}
RF RF::operator/(const RF& o) const { return *this * o.inv(); }

std::optional<int> RF::v_inf() const {
  if (is_zero()) return std::nullopt;
  return den.deg() - num.deg();
}

int RF::valuation_at(const GQ& x) const {
  if (is_zero()) throw std::domain_error("RF: valuation of zero");
  return poly_root_multiplicity(num, x) - poly_root_multiplicity(den, x);
}

GQ RF::eval(const GQ& x) const {
  GQ d = den.eval(x);
  if (d.is_zero()) throw std::domain_error("RF: evaluation at a pole");
  return num.eval(x) / d;
}

RF RF::shift_arg(const GQ& a) const { return RF(num.shift_arg(a), den.shift_arg(a)); }

std::string rf_to_string(const RF& f, const std::string& var) {
  if (f.den == Poly(GQ(1))) return poly_to_string(f.num, var);
  return "(" + poly_to_string(f.num, var) + ")/(" + poly_to_string(f.den, var) +
         ")";
}

}  // namespace dmkh
