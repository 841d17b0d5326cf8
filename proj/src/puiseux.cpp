#include "dmkh/puiseux.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dmkh {

namespace {

long sat_add(long a, long b) {
  if (a >= kExact || b >= kExact) return kExact;
  return a + b;
}

bool is_exact_zero(const PS& s) {
  if (s.hi != kExact) return false;
  for (const auto& a : s.c)
    if (!a.is_zero()) return false;
  return true;
}

// bring a, b to a common ramification
void align_ram(PS& a, PS& b) {
  if (a.p == b.p) return;
  int l = std::lcm(a.p, b.p);
  a = a.with_ram(l);
  b = b.with_ram(l);
}

}  // namespace

PS PS::monomial(GQ a, long j, int p) {
  PS s;
  s.p = p;
  s.lo = j;
  s.hi = kExact;
  s.c.assign(1, std::move(a));
  return s;
}

bool PS::known_zero() const {
  for (const auto& a : c)
    if (!a.is_zero()) return false;
  return true;
}

GQ PS::coeff_idx(long j) const {
  if (j < lo || j >= lo + static_cast<long>(c.size())) return GQ();
  return c[static_cast<size_t>(j - lo)];
}

GQ PS::coeff(const Rat& e) const {
  Rat idx = e * p;
  if (idx.get_den() != 1) return GQ();
  return coeff_idx(idx.get_num().get_si());
}

Rat PS::val() const {
  for (size_t k = 0; k < c.size(); ++k)
    if (!c[k].is_zero()) return rat(lo + static_cast<long>(k), p);
  throw std::domain_error("PS: valuation of a (truncation-)zero series");
}

GQ PS::lead() const {
  for (const auto& a : c)
    if (!a.is_zero()) return a;
  throw std::domain_error("PS: leading coefficient of a zero series");
}

PS PS::with_ram(int newp) const {
  if (newp == p) return *this;
  if (newp % p != 0)
    throw std::invalid_argument("PS: ramification must refine the old one");
  long f = newp / p;
  PS r;
  r.p = newp;
  r.lo = lo * f;
  r.hi = (hi >= kExact) ? kExact : hi * f;
  if (!c.empty()) {
    r.c.assign(c.size() * static_cast<size_t>(f) - (f - 1), GQ());
    for (size_t k = 0; k < c.size(); ++k) r.c[k * f] = c[k];
  }
  return r;
}

PS PS::truncated(long new_hi) const {
  PS r = *this;
  if (new_hi < r.hi) {
    r.hi = new_hi;
    long keep = std::max(0L, new_hi - r.lo);
    if (static_cast<long>(r.c.size()) > keep) r.c.resize(static_cast<size_t>(keep));
  }
  return r;
}

void PS::drop_leading_zeros() {
  size_t k = 0;
  while (k < c.size() && c[k].is_zero()) ++k;
  if (k > 0) {
    c.erase(c.begin(), c.begin() + static_cast<long>(k));
    lo += static_cast<long>(k);
  }
}

PS PS::operator-() const {
  PS r = *this;
  for (auto& a : r.c) a = -a;
  return r;
}

PS PS::operator+(const PS& o) const {
  if (is_exact_zero(*this)) return o;
  if (is_exact_zero(o)) return *this;
  PS a = *this, b = o;
  align_ram(a, b);
  PS r;
  r.p = a.p;
  r.lo = std::min(a.lo, b.lo);
  r.hi = std::min(a.hi, b.hi);
  long top_a = (a.hi >= kExact) ? a.lo + static_cast<long>(a.c.size()) : a.hi;
  long top_b = (b.hi >= kExact) ? b.lo + static_cast<long>(b.c.size()) : b.hi;
  long top = (r.hi >= kExact) ? std::max(top_a, top_b)
                              : std::min(r.hi, std::max(top_a, top_b));
  if (top < r.lo) top = r.lo;
  r.c.assign(static_cast<size_t>(top - r.lo), GQ());
  for (long j = r.lo; j < top; ++j)
    r.c[static_cast<size_t>(j - r.lo)] = a.coeff_idx(j) + b.coeff_idx(j);
  r.drop_leading_zeros();  // keep lo tight so later window mins stay honest
  return r;
}

PS PS::operator-(const PS& o) const { return *this + (-o); }

PS PS::operator*(const PS& o) const {
  if (is_exact_zero(*this) || is_exact_zero(o)) return PS();
  PS a = *this, b = o;
  align_ram(a, b);
  PS r;
  r.p = a.p;
  r.lo = sat_add(a.lo, b.lo);
  long ha = (a.hi >= kExact) ? kExact : a.hi;
  long hb = (b.hi >= kExact) ? kExact : b.hi;
  r.hi = std::min(sat_add(a.lo, hb), sat_add(b.lo, ha));
  long top;
  if (r.hi >= kExact) {
    top = a.lo + static_cast<long>(a.c.size()) + b.lo +
          static_cast<long>(b.c.size()) - 1;
    if (a.c.empty() || b.c.empty()) top = r.lo;
  } else {
    top = r.hi;
  }
  if (top < r.lo) top = r.lo;
  r.c.assign(static_cast<size_t>(top - r.lo), GQ());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      long idx = a.lo + static_cast<long>(i) + b.lo + static_cast<long>(j);
      if (idx >= top) break;
      r.c[static_cast<size_t>(idx - r.lo)] =
          r.c[static_cast<size_t>(idx - r.lo)] + a.c[i] * b.c[j];
    }
  }
  r.drop_leading_zeros();  // keep lo tight so later window mins stay honest
  return r;
}

PS PS::operator*(const GQ& s) const {
  PS r = *this;
  for (auto& a : r.c) a = a * s;
  return r;
}

PS PS::inv() const {
  PS a = *this;
  a.drop_leading_zeros();
  if (a.c.empty() || a.c[0].is_zero())
    throw std::domain_error("PS: cannot invert (zero or unresolved leading term)");
  long v = a.lo;
  long window = (a.hi >= kExact) ? static_cast<long>(std::max<size_t>(a.c.size(), 1))
                                 : a.hi - a.lo;
  if (a.hi >= kExact && window < kDefaultOrder) window = kDefaultOrder;
  // a = c0 x^{v/p} (1 + w);  invert the unit part by geometric series
  GQ c0 = a.c[0];
  PS w;
  w.p = a.p;
  w.lo = 1;
  w.hi = window;
  w.c.assign(static_cast<size_t>(std::max(0L, window - 1)), GQ());
  GQ c0i = c0.inv();
  for (long j = 1; j < window; ++j)
    w.c[static_cast<size_t>(j - 1)] = a.coeff_idx(v + j) * c0i;
  // (1+w)^{-1} = sum (-w)^k
  PS acc = PS::constant(GQ(1)).truncated(window);
  acc.p = a.p;
  PS term = PS::constant(GQ(1)).truncated(window);
  term.p = a.p;
  PS mw = -w;
  for (long k = 1; k < window; ++k) {
    term = term * mw;
    if (term.known_zero()) break;
    acc = acc + term;
  }
  PS r = acc * PS::monomial(c0i, -v, a.p);
  return r.truncated(-v + window);
}

PS PS::pow_rat(const Rat& a) const {
  // *this must be 1 + s with val(s) > 0
  PS u = *this;
  PS s = u - PS::constant(GQ(1));
  for (long j = s.lo; j <= 0 && j < s.lo + static_cast<long>(s.c.size()); ++j)
    if (!s.coeff_idx(j).is_zero())
      throw std::domain_error("PS: pow_rat needs the form 1 + (positive valuation)");
  long window = (u.hi >= kExact) ? kDefaultOrder + static_cast<long>(u.c.size())
                                 : u.hi;
  PS acc = PS::constant(GQ(1));
  acc.p = u.p;
  acc = acc.truncated(window);
  PS term = PS::constant(GQ(1));
  term.p = u.p;
  term = term.truncated(window);
  Rat binom(1);
  for (long k = 1;; ++k) {
    binom = binom * (a - (k - 1)) / k;
    term = term * s;
    if (term.known_zero() || binom == 0) break;
    acc = acc + term * GQ(binom);
    if (term.lo >= window) break;
  }
  return acc;
}

PS PS::pow_int(long n) const {
  if (n == 0) return PS::constant(GQ(1));
  PS base = (n < 0) ? inv() : *this;
  unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
  PS r = PS::constant(GQ(1));
  r.p = base.p;
  while (e > 0) {
    if (e & 1UL) r = r * base;
    base = base * base;
    e >>= 1UL;
  }
  return r;
}

bool ps_equal(const PS& a, const PS& b) {
  PS d = a - b;
  return d.known_zero();
}

std::string ps_to_string(const PS& s, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < s.c.size(); ++k) {
    if (s.c[k].is_zero()) continue;
    long j = s.lo + static_cast<long>(k);
    if (!first) os << " + ";
    os << "(" << gq_to_string(s.c[k]) << ")";
    if (j != 0) {
      os << "*" << var << "^(" << j;
      if (s.p != 1) os << "/" << s.p;
      os << ")";
    }
    first = false;
  }
  if (first) os << "0";
  if (s.hi < kExact) os << " + O(" << var << "^(" << s.hi << "/" << s.p << "))";
  return os.str();
}

PS series_exp(const PS& s) {
  if (is_exact_zero(s)) return PS::constant(GQ(1));
  PS t = s;
  t.drop_leading_zeros();
  if (!t.c.empty() && t.lo <= 0)
    throw std::domain_error("series_exp: argument must have positive valuation");
  long window = (s.hi >= kExact) ? s.lo + static_cast<long>(s.c.size()) +
                                       kDefaultOrder
                                 : s.hi;
  PS acc = PS::constant(GQ(1));
  acc.p = s.p;
  acc = acc.truncated(window);
  PS term = acc;
  Rat fact(1);
  for (long k = 1;; ++k) {
    term = term * s;
    fact = fact / k;
    if (term.known_zero() || term.lo >= window) break;
    acc = acc + term * GQ(fact);
  }
  return acc;
}

PS series_log(const PS& u) {
  PS w = u - PS::constant(GQ(1));
  if (!w.known_zero()) {
    PS t = w;
    t.drop_leading_zeros();
    if (!t.c.empty() && t.lo <= 0)
      throw std::domain_error("series_log: argument must be 1 + (positive val)");
  }
  long window = (u.hi >= kExact) ? static_cast<long>(u.c.size()) + kDefaultOrder
                                 : u.hi;
  PS acc;
  acc.p = u.p;
  acc.hi = window;
  PS term = PS::constant(GQ(1));
  term.p = u.p;
  term = term.truncated(window);
  for (long k = 1;; ++k) {
    term = term * w;
    if (term.known_zero() || term.lo >= window) break;
    Rat coef = rat((k % 2 == 1) ? 1 : -1, static_cast<long>(k));
    acc = acc + term * GQ(coef);
  }
  return acc;
}

PS series_shift(const PS& s, const GQ& nu) {
  if (nu.is_zero() || is_exact_zero(s)) return s;
  int q = s.p;
  long window_hi = (s.hi >= kExact)
                       ? s.lo + static_cast<long>(s.c.size()) + kDefaultOrder
                       : s.hi;
  // base = 1 + nu x^{q/p} = 1 + nu y^{-1}
  PS base = PS::constant(GQ(1)) + PS::monomial(nu, q, q);
  base = base.truncated(window_hi - std::min(0L, s.lo));
  PS acc;
  acc.p = q;
  acc.hi = window_hi;
  for (size_t k = 0; k < s.c.size(); ++k) {
    if (s.c[k].is_zero()) continue;
    long j = s.lo + static_cast<long>(k);
    PS term = PS::monomial(s.c[k], j, q) * base.pow_rat(rat(-j, q));
    acc = acc + term.truncated(window_hi);
  }
  return acc.truncated(window_hi);
}

PS ps_from_rf(const RF& f, int order) {
  if (f.is_zero()) return PS();
  int dn = f.num.deg(), dd = f.den.deg();
  long v = dd - dn;
  auto reversed = [](const Poly& p) {
    PS s;
    s.p = 1;
    s.lo = 0;
    s.hi = kExact;
    s.c.assign(p.c.size(), GQ());
    for (int k = 0; k <= p.deg(); ++k)
      s.c[static_cast<size_t>(p.deg() - k)] = p.coeff(k);
    return s;
  };
  PS rn = reversed(f.num).truncated(order);
  PS rd = reversed(f.den).truncated(order);
  PS unit = rn * rd.inv();
  PS r = unit * PS::monomial(GQ(1), v, 1);
  return r.truncated(v + order);
}

MatPS mps_identity(int r) { return MatPS::identity(r, PS::constant(GQ(1))); }

MatPS mps_shift(const MatPS& M, const GQ& nu) {
  return M.map([&](const PS& s) { return series_shift(s, nu); });
}

bool mps_equal(const MatPS& A, const MatPS& B) {
  if (A.n != B.n || A.m != B.m) return false;
  for (size_t k = 0; k < A.a.size(); ++k)
    if (!ps_equal(A.a[k], B.a[k])) return false;
  return true;
}

Rat det_valuation_inf(const MatPS& M) {
  PS d = mat_det(M);
  return d.val();
}

MatPS mps_exp(const MatPS& A, int nilpotent_rank_bound) {
  int r = A.n;
  MatPS acc = mps_identity(r);
  MatPS term = acc;
  long window = kDefaultOrder;
  for (const auto& e : A.a)
    if (e.hi < kExact) window = std::max(window, e.hi);
  long kmax = nilpotent_rank_bound * (window + 2) + nilpotent_rank_bound + 4;
  Rat fact(1);
  for (long k = 1; k <= kmax; ++k) {
    term = term * A;
    fact = fact / k;
    bool allzero = true;
    for (const auto& e : term.a)
      if (!e.known_zero()) {
        allzero = false;
        break;
      }
    if (allzero) break;
    acc = acc + term.map([&](const PS& s) { return s * GQ(fact); });
  }
  return acc;
}

MatPS mps_log(const MatPS& U, int nilpotent_rank_bound) {
  int r = U.n;
  MatPS N = U - mps_identity(r);
  MatPS acc(r, r);
  MatPS term = mps_identity(r);
  long window = kDefaultOrder;
  for (const auto& e : U.a)
    if (e.hi < kExact) window = std::max(window, e.hi);
  long kmax = nilpotent_rank_bound * (window + 2) + nilpotent_rank_bound + 4;
  for (long k = 1; k <= kmax; ++k) {
    term = term * N;
    bool allzero = true;
    for (const auto& e : term.a)
      if (!e.known_zero()) {
        allzero = false;
        break;
      }
    if (allzero) break;
    Rat coef = rat((k % 2 == 1) ? 1 : -1, static_cast<long>(k));
    acc = acc + term.map([&](const PS& s) { return s * GQ(coef); });
  }
  return acc;
}

}  // namespace dmkh
