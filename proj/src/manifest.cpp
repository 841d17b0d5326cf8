#include "dmkh/manifest.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace dmkh {

namespace {

// ---------------------------------------------------------------------------
// value parser: lists and polynomial expressions in one variable
// ---------------------------------------------------------------------------

// sparse univariate polynomial over Q(i), integer exponents (may be negative)
using SPoly = std::map<long, GQ>;

SPoly sp_const(GQ a) {
  SPoly r;
  if (!a.is_zero()) r[0] = std::move(a);
  return r;
}

SPoly sp_mul(const SPoly& a, const SPoly& b) {
  SPoly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      GQ v = r.count(ea + eb) ? r[ea + eb] + ca * cb : ca * cb;
      if (v.is_zero())
        r.erase(ea + eb);
      else
        r[ea + eb] = v;
    }
  return r;
}

SPoly sp_add(SPoly a, const SPoly& b, bool subtract) {
  for (const auto& [e, c] : b) {
    GQ v = a.count(e) ? (subtract ? a[e] - c : a[e] + c) : (subtract ? -c : c);
    if (v.is_zero())
      a.erase(e);
    else
      a[e] = v;
  }
  return a;
}

struct ValueParser {
  const std::string& s;
  size_t pos = 0;
  int line;

  explicit ValueParser(const std::string& text, int ln) : s(text), line(ln) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ManifestError(line, msg + " at column " + std::to_string(pos + 1) +
                                  " of value '" + s + "'");
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }

  long parse_integer() {
    skip_ws();
    bool neg = accept('-');
    if (!neg) accept('+');
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start) fail("expected an integer");
    long v = std::stol(s.substr(start, pos - start));
    return neg ? -v : v;
  }

  Rat parse_unsigned_rational() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start) fail("expected a number");
    std::string num = s.substr(start, pos - start);
    if (accept('/')) {
      skip_ws();
      size_t ds = pos;
      while (pos < s.size() &&
             std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      if (pos == ds) fail("expected a denominator");
      return rat_from_string(num + "/" + s.substr(ds, pos - ds));
    }
    return rat_from_string(num);
  }

  // primary := '(' expr ')' | rational | 'i' | variable
  // variable in {b, w, y, x}; records the name for diagnostics
  SPoly parse_primary(std::string& var_seen) {
    skip_ws();
    if (accept('(')) {
      SPoly e = parse_expr(var_seen);
      expect(')');
      return e;
    }
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      return sp_const(GQ(parse_unsigned_rational()));
    if (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) {
      char c = s[pos++];
      if (c == 'i' || c == 'I') return sp_const(gq_i());
      if (c == 'b' || c == 'w' || c == 'y' || c == 'x') {
        var_seen = std::string(1, c);
        SPoly v;
        v[1] = GQ(1);
        return v;
      }
      fail(std::string("unknown symbol '") + c + "'");
    }
    fail("expected a term");
  }

  // postfix := primary ('^' signed-integer)?
  SPoly parse_postfix(std::string& var_seen) {
    SPoly base = parse_primary(var_seen);
    if (accept('^')) {
      long e = parse_integer();
      if (base.size() == 1) {
        // monomial power, negative exponents allowed
        auto [be, bc] = *base.begin();
        GQ acc(1);
        for (long k = 0; k < std::abs(e); ++k) acc = acc * bc;
        if (e < 0) acc = acc.inv();
        SPoly r;
        r[be * e] = acc;
        return r;
      }
      if (e < 0) fail("negative exponent on a sum");
      SPoly acc = sp_const(GQ(1));
      for (long k = 0; k < e; ++k) acc = sp_mul(acc, base);
      return acc;
    }
    return base;
  }

  bool starts_factor() {
    skip_ws();
    if (pos >= s.size()) return false;
    char c = s[pos];
    return c == '(' || std::isdigit(static_cast<unsigned char>(c)) ||
           std::isalpha(static_cast<unsigned char>(c));
  }

  // term := ('-'|'+')* postfix (('*')? postfix)*   (adjacency multiplies)
  SPoly parse_term(std::string& var_seen) {
    skip_ws();
    bool neg = false;
    while (peek('-') || peek('+')) {
      if (accept('-'))
        neg = !neg;
      else
        accept('+');
    }
    SPoly acc = parse_postfix(var_seen);
    while (true) {
      if (accept('*')) {
        acc = sp_mul(acc, parse_postfix(var_seen));
        continue;
      }
      if (starts_factor()) {
        acc = sp_mul(acc, parse_postfix(var_seen));
        continue;
      }
      break;
    }
    return neg ? sp_mul(sp_const(GQ(-1L)), acc) : acc;
  }

  // expr := term (('+'|'-') term)*
  SPoly parse_expr(std::string& var_seen) {
    SPoly acc = parse_term(var_seen);
    while (true) {
      skip_ws();
      if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        bool sub = s[pos] == '-';
        ++pos;
        acc = sp_add(std::move(acc), parse_term(var_seen), sub);
      } else {
        break;
      }
    }
    return acc;
  }

  template <typename F>
  void parse_list(const F& element) {
    expect('[');
    if (accept(']')) return;
    while (true) {
      element();
      if (accept(']')) return;
      expect(',');
    }
  }
};

// ---------------------------------------------------------------------------
// conversions from sparse polynomials
// ---------------------------------------------------------------------------

GQ sp_to_gq(const SPoly& p, const ValueParser& vp) {
  for (const auto& [e, c] : p)
    if (e != 0 && !c.is_zero()) vp.fail("expected a constant");
  auto it = p.find(0);
  return it == p.end() ? GQ() : it->second;
}

Rat sp_to_rat(const SPoly& p, const ValueParser& vp) {
  GQ z = sp_to_gq(p, vp);
  if (!(z.im == 0)) vp.fail("expected a real rational");
  return z.re;
}

Poly sp_to_poly(const SPoly& p, const ValueParser& vp) {
  Poly out;
  for (const auto& [e, c] : p) {
    if (e < 0) vp.fail("negative exponents not allowed here");
    out = out + Poly::monomial(c, static_cast<int>(e));
  }
  return out;
}

// polynomial in w^{-1}: exponents <= 0, w^{-j} -> x^{j/q}
PS sp_to_ps_w(const SPoly& p, int q, const ValueParser& vp) {
  PS out;
  for (const auto& [e, c] : p) {
    if (e > 0) vp.fail("connection entries must use non-positive powers of w");
    out = out + PS::monomial(c, -e, q);
  }
  return out.with_ram(q);
}

// polynomial in y (the p-th root chart): y^k -> x^{-k/p}
PS sp_to_ps_y(const SPoly& p, int ram, const ValueParser&) {
  PS out;
  for (const auto& [e, c] : p) out = out + PS::monomial(c, -e, ram);
  return out.with_ram(ram);
}

// ---------------------------------------------------------------------------
// key handling
// ---------------------------------------------------------------------------

struct LogicalLine {
  int line;
  std::string key;
  std::string value;
};

std::vector<LogicalLine> split_lines(const std::string& text) {
  std::vector<LogicalLine> out;
  std::string cur;
  int depth = 0, line = 1, start_line = 1;
  bool comment = false;
  auto flush = [&](int ln) {
    size_t a = cur.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
      cur.clear();
      return;
    }
    size_t eq = cur.find('=');
    if (eq == std::string::npos)
      throw ManifestError(ln, "expected 'key = value'");
    auto trim = [](std::string v) {
      size_t b = v.find_first_not_of(" \t\r");
      size_t e = v.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
    };
    std::string key = trim(cur.substr(0, eq));
    std::string value = trim(cur.substr(eq + 1));
    if (key.empty()) throw ManifestError(ln, "empty key");
    if (value.empty()) throw ManifestError(ln, "empty value for '" + key + "'");
    out.push_back({ln, key, value});
    cur.clear();
  };
  for (char c : text) {
    if (c == '\n') {
      comment = false;
      if (depth == 0) {
        flush(start_line);
        start_line = line + 1;
      } else {
        cur += ' ';
      }
      ++line;
      continue;
    }
    if (comment) continue;
    if (c == '#') {
      comment = true;
      continue;
    }
    if (c == '[') ++depth;
    if (c == ']') --depth;
    cur += c;
  }
  if (depth != 0) throw ManifestError(line, "unbalanced brackets");
  flush(start_line);
  return out;
}

std::vector<std::string> split_key(const std::string& key) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : key) {
    if (c == '.') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

Manifest parse_manifest(const std::string& text) {
  Manifest m;
  std::map<int, Manifest::PlaceSpec> places;
  std::string var;  // last variable symbol seen (diagnostic only)

  auto matrix_rf = [&](ValueParser& vp) {
    std::vector<std::vector<RF>> rows;
    vp.parse_list([&] {
      rows.emplace_back();
      vp.parse_list(
          [&] { rows.back().push_back(RF(sp_to_poly(vp.parse_expr(var), vp))); });
    });
    if (rows.empty()) vp.fail("empty matrix");
    Mat<RF> M(static_cast<int>(rows.size()),
              static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows[0].size())
        vp.fail("row " + std::to_string(i + 1) + " has " +
                std::to_string(rows[i].size()) + " entries, expected " +
                std::to_string(rows[0].size()));
      for (size_t j = 0; j < rows[i].size(); ++j)
        M(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
    return M;
  };

  for (const LogicalLine& ll : split_lines(text)) {
    ValueParser vp(ll.value, ll.line);
    std::vector<std::string> parts = split_key(ll.key);
    const std::string& k0 = parts[0];

    auto unknown = [&]() -> void {
      throw ManifestError(ll.line, "unknown key '" + ll.key + "'");
    };
    auto finish = [&] {
      if (!vp.done()) vp.fail("trailing input");
    };

    if (parts.size() == 1) {
      if (k0 == "version") {
        m.version = static_cast<int>(vp.parse_integer());
      } else if (k0 == "entity" || k0 == "form" || k0 == "family") {
        // bare identifier value
        std::string& dst =
            (k0 == "entity") ? m.entity : (k0 == "form" ? m.form : m.family);
        vp.skip_ws();
        size_t start = vp.pos;
        while (vp.pos < ll.value.size() &&
               (std::isalnum(static_cast<unsigned char>(ll.value[vp.pos])) ||
                ll.value[vp.pos] == '_'))
          ++vp.pos;
        dst = ll.value.substr(start, vp.pos - start);
        if (dst.empty()) vp.fail("expected an identifier");
      } else if (k0 == "lambda") {
        m.lambda = sp_to_gq(vp.parse_expr(var), vp);
      } else if (k0 == "T") {
        m.T = sp_to_rat(vp.parse_expr(var), vp);
      } else if (k0 == "phi") {
        m.phi = matrix_rf(vp);
      } else if (k0 == "S") {
        vp.parse_list([&] { m.S.push_back(sp_to_gq(vp.parse_expr(var), vp)); });
      } else if (k0 == "ell") {
        vp.parse_list([&] { m.ell.push_back(vp.parse_integer()); });
      } else if (k0 == "t") {
        vp.parse_list([&] { m.t.push_back(sp_to_rat(vp.parse_expr(var), vp)); });
      } else if (k0 == "d") {
        vp.parse_list([&] { m.d.push_back(sp_to_rat(vp.parse_expr(var), vp)); });
      } else if (k0 == "P_roots") {
        vp.parse_list(
            [&] { m.P_roots.push_back(sp_to_gq(vp.parse_expr(var), vp)); });
      } else if (k0 == "P_lead") {
        m.P_lead = sp_to_gq(vp.parse_expr(var), vp);
      } else if (k0 == "Q") {
        m.Q = sp_to_poly(vp.parse_expr(var), vp);
      } else if (k0 == "q") {
        m.q = static_cast<int>(vp.parse_integer());
      } else if (k0 == "A") {
        std::vector<std::vector<SPoly>> rows;
        vp.parse_list([&] {
          rows.emplace_back();
          vp.parse_list([&] { rows.back().push_back(vp.parse_expr(var)); });
        });
        if (rows.empty()) vp.fail("empty matrix");
        MatPS M(static_cast<int>(rows.size()),
                static_cast<int>(rows[0].size()));
        for (size_t i = 0; i < rows.size(); ++i) {
          if (rows[i].size() != rows[0].size())
            vp.fail("row " + std::to_string(i + 1) + " has " +
                    std::to_string(rows[i].size()) + " entries, expected " +
                    std::to_string(rows[0].size()));
          for (size_t j = 0; j < rows[i].size(); ++j)
            M(static_cast<int>(i), static_cast<int>(j)) =
                sp_to_ps_w(rows[i][j], m.q, vp);
        }
        m.A = M;
      } else if (k0 == "p") {
        m.mono_p = static_cast<int>(vp.parse_integer());
      } else if (k0 == "a") {
        m.mono_a = sp_to_rat(vp.parse_expr(var), vp);
      } else if (k0 == "alpha") {
        m.mono_alpha = sp_to_gq(vp.parse_expr(var), vp);
      } else if (k0 == "gamma") {
        m.mono_gamma = sp_to_gq(vp.parse_expr(var), vp);
      } else if (k0 == "frak_a") {
        vp.parse_list(
            [&] { m.frak_a.push_back(sp_to_gq(vp.parse_expr(var), vp)); });
      } else if (k0 == "weight") {
        m.mono_weight = sp_to_rat(vp.parse_expr(var), vp);
      } else if (k0 == "t1_0") {
        m.mono_t1_0 = sp_to_rat(vp.parse_expr(var), vp);
      } else {
        unknown();
      }
      finish();
      continue;
    }

    if (k0 == "options" && parts.size() == 2) {
      if (parts[1] == "order")
        m.opt_order = static_cast<int>(vp.parse_integer());
      else if (parts[1] == "degree_bound")
        m.opt_degree_bound = static_cast<int>(vp.parse_integer());
      else if (parts[1] == "samples")
        m.opt_samples = static_cast<int>(vp.parse_integer());
      else
        unknown();
      finish();
      continue;
    }
    if (k0 == "point" && parts.size() == 2) {
      if (parts[1] == "a")
        m.point_a = sp_to_rat(vp.parse_expr(var), vp);
      else if (parts[1] == "alpha")
        m.point_alpha = sp_to_gq(vp.parse_expr(var), vp);
      else
        unknown();
      finish();
      continue;
    }
    if (k0 == "infinity" && parts.size() == 2) {
      if (parts[1] == "p") {
        m.inf_p = static_cast<int>(vp.parse_integer());
      } else if (parts[1] == "weights") {
        vp.parse_list([&] {
          m.inf_weights.push_back(sp_to_rat(vp.parse_expr(var), vp));
        });
      } else if (parts[1] == "basis") {
        std::vector<std::vector<SPoly>> rows;
        vp.parse_list([&] {
          rows.emplace_back();
          vp.parse_list([&] { rows.back().push_back(vp.parse_expr(var)); });
        });
        if (rows.empty()) vp.fail("empty matrix");
        MatPS M(static_cast<int>(rows.size()),
                static_cast<int>(rows[0].size()));
        for (size_t i = 0; i < rows.size(); ++i) {
          if (rows[i].size() != rows[0].size())
            vp.fail("ragged matrix");
          for (size_t j = 0; j < rows[i].size(); ++j)
            M(static_cast<int>(i), static_cast<int>(j)) =
                sp_to_ps_y(rows[i][j], m.inf_p, vp);
        }
        m.inf_basis = M;
      } else {
        unknown();
      }
      finish();
      continue;
    }
    if (k0 == "place" && parts.size() == 3) {
      int idx = 0;
      try {
        idx = std::stoi(parts[1]);
      } catch (...) {
        unknown();
      }
      Manifest::PlaceSpec& pl = places[idx];
      if (parts[2] == "x") {
        pl.x = sp_to_gq(vp.parse_expr(var), vp);
      } else if (parts[2] == "weights") {
        vp.parse_list(
            [&] { pl.weights.push_back(sp_to_rat(vp.parse_expr(var), vp)); });
      } else if (parts[2] == "chain") {
        vp.parse_list([&] { pl.chain.push_back(matrix_rf(vp)); });
      } else {
        unknown();
      }
      finish();
      continue;
    }
    unknown();
  }

  for (auto& [idx, pl] : places) m.places.push_back(std::move(pl));

  if (m.entity != "difference_module" && m.entity != "lambda_connection" &&
      m.entity != "monopole_model")
    throw ManifestError(1, "entity must be one of difference_module, "
                           "lambda_connection, monopole_model (got '" +
                               m.entity + "')");
  return m;
}

// ---------------------------------------------------------------------------
// canonical printer
// ---------------------------------------------------------------------------

namespace {

// one canonical term: coefficient times var^e
std::string term_string(const GQ& c, long e, const std::string& vn) {
  std::string varpart;
  if (e == 1)
    varpart = vn;
  else if (e != 0)
    varpart = vn + "^" + std::to_string(e);
  bool complex = !(c.im == 0);
  std::string cs = gq_to_string(c);
  if (complex) cs = "(" + cs + ")";
  if (varpart.empty()) return cs;
  if (c == GQ(1)) return varpart;
  if (c == GQ(-1L)) return "-" + varpart;
  return cs + " " + varpart;
}

std::string sp_print(const std::vector<std::pair<long, GQ>>& terms,
                     const std::string& vn) {
  if (terms.empty()) return "0";
  std::string out;
  for (size_t k = 0; k < terms.size(); ++k) {
    std::string ts = term_string(terms[k].second, terms[k].first, vn);
    if (k == 0) {
      out = ts;
    } else if (ts[0] == '-') {
      out += " - " + ts.substr(1);
    } else {
      out += " + " + ts;
    }
  }
  return out;
}

std::string poly_print(const Poly& p, const std::string& vn) {
  std::vector<std::pair<long, GQ>> terms;
  for (int k = 0; k <= p.deg(); ++k)
    if (!p.coeff(k).is_zero()) terms.push_back({k, p.coeff(k)});
  return sp_print(terms, vn);
}

std::string rf_print(const RF& f, const std::string& vn) {
  if (f.den.deg() == 0) return poly_print(f.num, vn);
  // denominators are not produced by the canonical builders; print guarded
  return "(" + poly_print(f.num, vn) + ") (" + poly_print(f.den, vn) + ")^-1";
}

// PS with nonnegative x-exponents as a polynomial in w^{-1}
std::string ps_print_w(const PS& s) {
  std::vector<std::pair<long, GQ>> terms;
  for (long j = s.lo; j < (s.hi == kExact ? s.lo + static_cast<long>(s.c.size())
                                          : s.hi);
       ++j)
    if (!s.coeff_idx(j).is_zero()) terms.push_back({-j, s.coeff_idx(j)});
  return sp_print(terms, "w");
}

// PS as a polynomial in y (x-exponent j prints as y^-j)
std::string ps_print_y(const PS& s) {
  std::vector<std::pair<long, GQ>> terms;
  for (long j = s.lo; j < (s.hi == kExact ? s.lo + static_cast<long>(s.c.size())
                                          : s.hi);
       ++j)
    if (!s.coeff_idx(j).is_zero()) terms.push_back({-j, s.coeff_idx(j)});
  return sp_print(terms, "y");
}

template <typename T, typename F>
std::string matrix_print(const Mat<T>& M, const F& entry) {
  std::string out = "[";
  for (int i = 0; i < M.n; ++i) {
    out += (i ? ", [" : "[");
    for (int j = 0; j < M.m; ++j) {
      if (j) out += ", ";
      out += entry(M(i, j));
    }
    out += "]";
  }
  return out + "]";
}

template <typename T, typename F>
std::string list_print(const std::vector<T>& v, const F& entry) {
  std::string out = "[";
  for (size_t k = 0; k < v.size(); ++k) {
    if (k) out += ", ";
    out += entry(v[k]);
  }
  return out + "]";
}

}  // namespace

std::string print_manifest(const Manifest& m) {
  std::ostringstream os;
  auto rat_s = [](const Rat& r) { return rat_to_string(r); };
  auto gq_s = [](const GQ& z) { return gq_to_string(z); };
  os << "version = " << m.version << "\n";
  os << "entity = " << m.entity << "\n";
  if (m.entity == "difference_module") {
    os << "lambda = " << gq_s(m.lambda) << "\n";
    os << "T = " << rat_s(m.T) << "\n";
    os << "form = " << m.form << "\n";
    if (m.form == "explicit") {
      if (m.phi)
        os << "phi = "
           << matrix_print(*m.phi, [](const RF& f) { return rf_print(f, "b"); })
           << "\n";
      for (size_t k = 0; k < m.places.size(); ++k) {
        const auto& pl = m.places[k];
        std::string pre = "place." + std::to_string(k + 1) + ".";
        os << pre << "x = " << gq_s(pl.x) << "\n";
        os << pre << "weights = " << list_print(pl.weights, rat_s) << "\n";
        if (!pl.chain.empty())
          os << pre << "chain = "
             << list_print(pl.chain,
                           [](const Mat<RF>& M) {
                             return matrix_print(M, [](const RF& f) {
                               return rf_print(f, "b");
                             });
                           })
             << "\n";
      }
      os << "infinity.p = " << m.inf_p << "\n";
      if (m.inf_basis)
        os << "infinity.basis = " << matrix_print(*m.inf_basis, ps_print_y)
           << "\n";
      if (!m.inf_weights.empty())
        os << "infinity.weights = " << list_print(m.inf_weights, rat_s)
           << "\n";
    } else if (m.form == "example_A") {
      os << "S = " << list_print(m.S, gq_s) << "\n";
      os << "ell = "
         << list_print(m.ell, [](long v) { return std::to_string(v); }) << "\n";
      os << "t = " << list_print(m.t, rat_s) << "\n";
      os << "d = " << list_print(m.d, rat_s) << "\n";
    } else if (m.form == "example_B") {
      os << "P_roots = " << list_print(m.P_roots, gq_s) << "\n";
      os << "P_lead = " << gq_s(m.P_lead) << "\n";
      if (m.Q) os << "Q = " << poly_print(*m.Q, "b") << "\n";
      os << "t = " << list_print(m.t, rat_s) << "\n";
      os << "d = " << list_print(m.d, rat_s) << "\n";
    }
  } else if (m.entity == "lambda_connection") {
    os << "lambda = " << gq_s(m.lambda) << "\n";
    os << "T = " << rat_s(m.T) << "\n";
    os << "q = " << m.q << "\n";
    if (m.A) os << "A = " << matrix_print(*m.A, ps_print_w) << "\n";
    if (m.point_a) os << "point.a = " << rat_s(*m.point_a) << "\n";
    if (m.point_alpha) os << "point.alpha = " << gq_s(*m.point_alpha) << "\n";
  } else if (m.entity == "monopole_model") {
    os << "family = " << m.family << "\n";
    os << "lambda = " << gq_s(m.lambda) << "\n";
    os << "T = " << rat_s(m.T) << "\n";
    if (m.family == "lp_ell") {
      os << "p = " << m.mono_p << "\n";
      os << "ell = "
         << list_print(m.ell, [](long v) { return std::to_string(v); })
         << "\n";
    } else if (m.family == "frobenius") {
      os << "p = " << m.mono_p << "\n";
      os << "frak_a = " << list_print(m.frak_a, gq_s) << "\n";
    } else if (m.family == "tame") {
      os << "a = " << rat_s(m.mono_a) << "\n";
      os << "alpha = " << gq_s(m.mono_alpha) << "\n";
    } else if (m.family == "global_gamma") {
      os << "gamma = " << gq_s(m.mono_gamma) << "\n";
      os << "weight = " << rat_s(m.mono_weight) << "\n";
    } else if (m.family == "dirac_l") {
      os << "ell = "
         << list_print(m.ell, [](long v) { return std::to_string(v); })
         << "\n";
      os << "weight = " << rat_s(m.mono_weight) << "\n";
      os << "t1_0 = " << rat_s(m.mono_t1_0) << "\n";
    }
  }
  if (m.opt_order) os << "options.order = " << *m.opt_order << "\n";
  if (m.opt_degree_bound)
    os << "options.degree_bound = " << *m.opt_degree_bound << "\n";
  if (m.opt_samples) os << "options.samples = " << *m.opt_samples << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// builders
// ---------------------------------------------------------------------------

BuiltPdm manifest_to_pdm(const Manifest& m, int order) {
  if (m.entity != "difference_module")
    throw std::invalid_argument("manifest: entity is not a difference_module");
  BuiltPdm out;
  if (m.form == "example_A") {
    BuiltExample ex = build_example_A(m.S, m.ell, m.t, m.d, m.T, order);
    out.pdm = std::move(ex.pdm);
    out.closed_form = ex.closed_form;
    out.warning = ex.warning;
    return out;
  }
  if (m.form == "example_B") {
    if (!m.Q) throw std::invalid_argument("manifest: example_B requires Q");
    if (m.d.size() != 2)
      throw std::invalid_argument("manifest: example_B requires d = [d1, d2]");
    BuiltExample ex = build_example_B(m.P_roots, m.P_lead, *m.Q, m.t, m.d[0],
                                      m.d[1], m.T, order);
    out.pdm = std::move(ex.pdm);
    out.closed_form = ex.closed_form;
    out.warning = ex.warning;
    return out;
  }
  if (m.form != "explicit")
    throw std::invalid_argument("manifest: unknown form '" + m.form + "'");
  if (!m.phi)
    throw std::invalid_argument("manifest: explicit form requires phi");
  int rank = m.phi->n;
  ParabolicDifferenceModule pdm;
  pdm.module = make_module(m.lambda, m.T, rank, *m.phi);
  for (const auto& pl : m.places) {
    ParabolicPlace place;
    place.x = pl.x;
    place.weights = pl.weights;
    place.chain = pl.chain;
    pdm.finite.places.push_back(std::move(place));
  }
  pdm.p = m.inf_p;
  if (m.inf_basis) {
    pdm.adapted_basis = *m.inf_basis;
  } else {
    pdm.adapted_basis = mps_identity(rank);
    for (auto& e : pdm.adapted_basis.a) e = e.with_ram(pdm.p);
  }
  pdm.weights = m.inf_weights;
  if (pdm.weights.empty()) pdm.weights.assign(rank, Rat(0));
  if (static_cast<int>(pdm.weights.size()) != pdm.adapted_basis.m)
    throw std::invalid_argument(
        "manifest: infinity.weights size does not match the adapted basis");
  out.pdm = std::move(pdm);
  return out;
}

FormalLambdaConnection manifest_to_connection(const Manifest& m, int order) {
  if (m.entity != "lambda_connection")
    throw std::invalid_argument("manifest: entity is not a lambda_connection");
  if (!m.A) throw std::invalid_argument("manifest: connection requires A");
  FormalLambdaConnection conn;
  conn.q = m.q;
  conn.lambda = m.lambda;
  conn.T = m.T;
  conn.order = order;
  conn.A = *m.A;
  return conn;
}

namespace {
double rat_d(const Rat& r) { return r.get_d(); }
Cx gq_cx(const GQ& z) { return Cx(rat_d(z.re), rat_d(z.im)); }
}  // namespace

ModelMonopole manifest_to_monopole(const Manifest& m) {
  if (m.entity != "monopole_model")
    throw std::invalid_argument("manifest: entity is not a monopole_model");
  Cx lam = gq_cx(m.lambda);
  double T = rat_d(m.T);
  int ell = m.ell.empty() ? 0 : static_cast<int>(m.ell[0]);
  if (m.family == "lp_ell") return make_basic_lp_ell(m.mono_p, ell, T, lam);
  if (m.family == "frobenius") {
    std::vector<Cx> coeff;
    for (const GQ& c : m.frak_a) coeff.push_back(gq_cx(c));
    return make_frobenius(std::move(coeff), m.mono_p, T, lam);
  }
  if (m.family == "tame")
    return make_tame(rat_d(m.mono_a), gq_cx(m.mono_alpha), T, lam);
  if (m.family == "global_gamma") {
    ModelMonopole mm = make_global_gamma(gq_cx(m.mono_gamma), T, lam);
    mm.weight = m.mono_weight;
    return mm;
  }
  if (m.family == "dirac_l")
    return make_dirac_l(ell, m.mono_weight, m.mono_t1_0, m.T, lam);
  throw std::invalid_argument("manifest: unknown family '" + m.family + "'");
}

}  // namespace dmkh
