#include "dmkh/report.hpp"

#include "dmkh/sweep.hpp"

#include <cinttypes>
#include <cstdio>

namespace dmkh {

using nlohmann::ordered_json;

std::string input_digest(const std::string& text) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016" PRIx64, h);
  return buf;
}

namespace {

constexpr double kResidualTol = 1e-10;

int resolve_order(const Manifest& m, const RunOptions& o) {
  if (o.order) return *o.order;
  if (m.opt_order) return *m.opt_order;
  if (o.env_order) return *o.env_order;
  return kDefaultOrder;
}

int resolve_bound(const Manifest& m, const RunOptions& o) {
  if (o.degree_bound) return *o.degree_bound;
  if (m.opt_degree_bound) return *m.opt_degree_bound;
  return -1;
}

int resolve_samples(const Manifest& m, const RunOptions& o) {
  if (o.samples) return *o.samples;
  if (m.opt_samples) return *m.opt_samples;
  return 64;
}

ordered_json slopes_json(const SlopeDecomposition& nd) {
  ordered_json slopes = ordered_json::array();
  for (const SlopeComponent& c : nd.components) {
    ordered_json e;
    e["omega"] = rat_to_string(c.omega);
    e["multiplicity"] = c.multiplicity;
    slopes.push_back(e);
  }
  return slopes;
}

std::string level_string(Level lv) {
  switch (lv) {
    case Level::Zero: return "zero";
    case Level::LessThanOne: return "less_than_one";
    default: return "higher";
  }
}

std::string status_string(StabilityStatus s) {
  switch (s) {
    case StabilityStatus::Stable: return "Stable";
    case StabilityStatus::Semistable: return "Semistable";
    case StabilityStatus::Unstable: return "Unstable";
    default: return "StableUpToBound";
  }
}

ordered_json matps_json(const MatPS& M) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < M.n; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < M.m; ++j) row.push_back(ps_to_string(M(i, j), "x"));
    rows.push_back(row);
  }
  return rows;
}

// --------------------------------------------------------------------------
// command bodies; each fills result/provenance and may flip the exit code
// --------------------------------------------------------------------------

void cmd_classify(const Manifest& m, const RunOptions& opts, RunResult& rr) {
  int order = resolve_order(m, opts);
  BuiltPdm built = manifest_to_pdm(m, 2 * order);
  SlopeDecomposition nd = newton_polygon(built.pdm.module, 2 * order);
  FormalModule fm = formal_from_module(built.pdm.module, 2 * order);
  ordered_json& res = rr.report["result"];
  res["rank"] = built.pdm.module.rank;
  res["ramification"] = nd.p;
  res["slopes"] = slopes_json(nd);
  ordered_json polygon = ordered_json::array();
  for (const auto& [j, v] : nd.polygon)
    polygon.push_back({j, rat_to_string(v)});
  res["polygon"] = polygon;
  res["level"] = level_string(level_check(fm, order));
  rr.report["provenance"] = {"newton-polygon", "slope-multiplicity",
                             "level-detection"};
}

void cmd_degree(const Manifest& m, const RunOptions& opts, RunResult& rr) {
  ordered_json& res = rr.report["result"];
  if (m.entity == "monopole_model") {
    Rat deg = global_degree(manifest_to_monopole(m));
    res["degree"] = rat_to_string(deg);
    rr.report["provenance"] = {"per-slice-filtered-degree",
                               "piecewise-linear-integral"};
    return;
  }
  int order = resolve_order(m, opts);
  BuiltPdm built = manifest_to_pdm(m, 2 * order);
  Rat deg = parabolic_degree(built.pdm, 2 * order);
  res["degree"] = rat_to_string(deg);
  res["slope"] = rat_to_string(parabolic_slope(built.pdm, 2 * order));
  res["rank"] = built.pdm.module.rank;
  rr.report["provenance"] = {"filtered-degree-p1", "finite-jump-sum",
                             "infinity-slope-correction"};
  if (!built.warning.empty()) rr.report["diagnostics"].push_back(built.warning);
  if (built.closed_form) {
    res["closed_form"] = rat_to_string(*built.closed_form);
    if (*built.closed_form != deg) {
      rr.report["diagnostics"].push_back(
          "verification failed: computed degree does not match the closed "
          "form");
      rr.exit_code = 2;
    }
  }
}

void cmd_stability(const Manifest& m, const RunOptions& opts, RunResult& rr) {
  int order = resolve_order(m, opts);
  BuiltPdm built = manifest_to_pdm(m, 2 * order);
  StabilityVerdict v = stability_check(built.pdm, resolve_bound(m, opts));
  ordered_json& res = rr.report["result"];
  res["status"] = status_string(v.status);
  res["total_mu"] = rat_to_string(v.total_mu);
  if (!v.witness.empty()) {
    res["witness"] = v.witness;
    res["witness_mu"] = rat_to_string(v.witness_mu);
  }
  res["bound_used"] = v.bound_used;
  if (!v.note.empty()) rr.report["diagnostics"].push_back(v.note);
  rr.report["provenance"] = {"invariant-line-search",
                             "parabolic-slope-comparison"};
}

void cmd_psi(const Manifest& m, const RunOptions& opts, RunResult& rr) {
  int order = resolve_order(m, opts);
  FormalLambdaConnection conn = manifest_to_connection(m, order);
  MatPS G = psi_forward_general(conn);
  FormalLambdaConnection back =
      psi_inverse(G, conn.q, conn.lambda, conn.T, order);
  bool ok = true;
  for (int i = 0; i < conn.A.n && ok; ++i)
    for (int j = 0; j < conn.A.m && ok; ++j)
      for (long k = 0; k < order; ++k)
        if (!(conn.A(i, j).coeff_idx(k) == back.A(i, j).coeff_idx(k))) {
          ok = false;
          break;
        }
  ordered_json& res = rr.report["result"];
  res["q"] = conn.q;
  res["lambda"] = gq_to_string(conn.lambda);
  res["T"] = rat_to_string(conn.T);
  res["order"] = order;
  res["G"] = matps_json(G);
  res["roundtrip"] = ok ? "ok" : "mismatch";
  if (!ok) {
    rr.report["diagnostics"].push_back(
        "verification failed: inverse transform does not reproduce the input "
        "connection");
    rr.exit_code = 2;
  }
  rr.report["provenance"] = {"difference-cocycle-ode", "order-by-order-inverse"};
}

void cmd_kms(const Manifest& m, RunResult& rr) {
  if (!m.point_a || !m.point_alpha)
    throw std::invalid_argument("kms requires point.a and point.alpha");
  KmsPoint in{*m.point_a, *m.point_alpha};
  KmsPoint out = kms_map(m.lambda, in);
  ordered_json& res = rr.report["result"];
  res["lambda"] = gq_to_string(m.lambda);
  res["a"] = rat_to_string(out.a);
  res["alpha"] = gq_to_string(out.alpha);
  rr.report["provenance"] = {"kms-comparison-map"};
}

void cmd_verify_monopole(const Manifest& m, const RunOptions& opts,
                         RunResult& rr) {
  ModelMonopole model = manifest_to_monopole(m);
  if (model.family == ModelMonopole::Family::DiracL)
    throw std::invalid_argument(
        "verify-monopole: DiracL has no closed-form evaluators; use `degree`");
  int K = resolve_samples(m, opts);
  HodgeReport hodge = hodge_identities();
  std::vector<SamplePoint> pts = admissible_samples(model, K);
  std::vector<double> res_serial = residual_sweep_serial(model, pts);
  std::vector<double> res_par = residual_sweep_parallel(model, pts);
  std::vector<double> gdev = g_check_sweep_parallel(model, pts);
  bool kernels_agree = res_serial == res_par;
  double max_res = max_entry(res_par);
  double max_g = max_entry(gdev);
  bool pass = hodge.ok() && kernels_agree && max_res < kResidualTol &&
              max_g < kResidualTol;
  ordered_json& res = rr.report["result"];
  res["family"] = m.family;
  res["samples"] = K;
  res["hodge_ok"] = hodge.ok();
  res["kernels_agree"] = kernels_agree;
  res["max_bogomolny"] = max_res;
  res["max_g_deviation"] = max_g;
  res["tolerance"] = kResidualTol;
  res["pass"] = pass;
  if (!pass) {
    rr.report["diagnostics"].push_back("verification failed");
    rr.exit_code = 2;
  }
  rr.report["provenance"] = {"bogomolny-residual", "hodge-star",
                             "lambda-chart-commutator"};
}

}  // namespace

std::string sweep_csv(const ModelMonopole& m, int samples) {
  std::vector<SamplePoint> pts = admissible_samples(m, samples);
  std::vector<double> res = residual_sweep_parallel(m, pts);
  std::vector<double> gdev = g_check_sweep_parallel(m, pts);
  std::string out = "index,t,re_wp,im_wp,bogomolny,g_deviation\n";
  char buf[160];
  for (size_t k = 0; k < pts.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", k,
                  pts[k].t, pts[k].wp.real(), pts[k].wp.imag(), res[k],
                  gdev[k]);
    out += buf;
  }
  return out;
}

RunResult run_command(const std::string& command,
                      const std::string& manifest_text,
                      const RunOptions& opts) {
  RunResult rr;
  rr.report["command"] = command;
  rr.report["input_digest"] = input_digest(manifest_text);
  rr.report["result"] = ordered_json::object();
  rr.report["provenance"] = ordered_json::array();
  rr.report["diagnostics"] = ordered_json::array();
  try {
    Manifest m = parse_manifest(manifest_text);
    if (command == "classify") {
      cmd_classify(m, opts, rr);
    } else if (command == "degree") {
      cmd_degree(m, opts, rr);
    } else if (command == "stability") {
      cmd_stability(m, opts, rr);
    } else if (command == "psi") {
      cmd_psi(m, opts, rr);
    } else if (command == "kms") {
      cmd_kms(m, rr);
    } else if (command == "verify-monopole") {
      cmd_verify_monopole(m, opts, rr);
    } else {
      throw std::invalid_argument("unknown command '" + command + "'");
    }
  } catch (const std::exception& e) {
    rr.report["result"] = ordered_json::object();
    rr.report["error"] = e.what();
    rr.exit_code = 1;
  }
  return rr;
}

}  // namespace dmkh
