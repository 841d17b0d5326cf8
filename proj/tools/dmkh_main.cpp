// dmkh: manifest-driven CLI over the difference-module / monopole library.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dmkh/report.hpp"

namespace {

std::optional<int> env_order() {
  const char* v = std::getenv("DMKH_ORDER");
  if (!v || !*v) return std::nullopt;
  try {
    return std::stoi(v);
  } catch (...) {
    return std::nullopt;
  }
}

int run_one(const std::string& command, const std::string& file,
            const dmkh::RunOptions& opts, const std::string& json_out,
            const std::string& csv_out) {
  std::ifstream in(file);
  if (!in) {
    std::cerr << "cannot open manifest: " << file << "\n";
    return 1;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  dmkh::RunResult rr = dmkh::run_command(command, ss.str(), opts);
  std::string payload = rr.report.dump(2) + "\n";
  if (json_out.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(json_out);
    out << payload;
  }
  if (!csv_out.empty() && command == "verify-monopole" && rr.exit_code != 1) {
    try {
      dmkh::Manifest m = dmkh::parse_manifest(ss.str());
      int samples = opts.samples ? *opts.samples
                                 : (m.opt_samples ? *m.opt_samples : 64);
      std::ofstream out(csv_out);
      out << dmkh::sweep_csv(dmkh::manifest_to_monopole(m), samples);
    } catch (const std::exception& e) {
      std::cerr << "csv export failed: " << e.what() << "\n";
      return 1;
    }
  }
  return rr.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact calculus for parabolic difference modules and "
               "closed-form periodic-monopole models"};
  app.require_subcommand(1);

  dmkh::RunOptions opts;
  opts.env_order = env_order();
  std::string file, json_out, csv_out;
  int order = 0, bound = 0, samples = 0;

  auto add = [&](const std::string& name, const std::string& desc,
                 bool with_csv) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("file", file, "manifest (.dm)")->required();
    sub->add_option("--order", order, "truncation order");
    sub->add_option("--degree-bound", bound, "invariant-line search bound");
    sub->add_option("--samples", samples, "sweep sample count");
    sub->add_option("--json", json_out, "write the report to a file");
    if (with_csv)
      sub->add_option("--csv", csv_out, "write the per-sample sweep table");
    return sub;
  };

  add("classify", "slopes and Newton polygon at infinity", false);
  add("degree", "parabolic degree (or exact model degree)", false);
  add("stability", "slope-stability verdict", false);
  add("psi", "difference-module transform of a lambda-connection", false);
  add("kms", "KMS spectrum comparison map", false);
  add("verify-monopole", "certify a closed-form monopole model", true);

  CLI11_PARSE(app, argc, argv);

  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--order")) opts.order = order;
  if (sub->count("--degree-bound")) opts.degree_bound = bound;
  if (sub->count("--samples")) opts.samples = samples;
  return run_one(sub->get_name(), file, opts, json_out, csv_out);
}
