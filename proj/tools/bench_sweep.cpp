// Benchmark: serial reference vs OpenMP-parallel monopole sample sweeps.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dmkh/sweep.hpp"

using namespace dmkh;

namespace {

double seconds(const std::chrono::steady_clock::time_point& a,
               const std::chrono::steady_clock::time_point& b) {
  return std::chrono::duration<double>(b - a).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monopole sample-sweep benchmark (serial vs OpenMP)"};
  int samples = 4096;
  int repeats = 3;
  app.add_option("--samples", samples, "points per sweep")
      ->check(CLI::PositiveNumber);
  app.add_option("--repeats", repeats, "timing repetitions (best is kept)")
      ->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  std::vector<std::pair<std::string, ModelMonopole>> models = {
      {"basic_lp_ell(2,3)", make_basic_lp_ell(2, 3, 1.25, Cx(0.0, 1.0))},
      {"frobenius", make_frobenius({Cx(0.6, 0.2), Cx(0.4)}, 2, 1.0, Cx(1.0))},
      {"tame", make_tame(0.5, Cx(0.3, 0.2), 1.0, Cx(0.4, 0.3))},
      {"global_gamma", make_global_gamma(Cx(0.3, 0.8), 1.0, Cx(0.0, 1.0))},
  };

  std::printf("%-20s %10s %12s %12s %9s %12s\n", "model", "samples",
              "serial[s]", "parallel[s]", "speedup", "max_gdev");
  for (const auto& [name, m] : models) {
    auto pts = admissible_samples(m, samples);
    double ts = 1e300, tp = 1e300;
    std::vector<double> ref, par;
    for (int r = 0; r < repeats; ++r) {
      auto a = std::chrono::steady_clock::now();
      ref = g_check_sweep_serial(m, pts);
      auto b = std::chrono::steady_clock::now();
      par = g_check_sweep_parallel(m, pts);
      auto c = std::chrono::steady_clock::now();
      ts = std::min(ts, seconds(a, b));
      tp = std::min(tp, seconds(b, c));
    }
    if (ref != par) {
      std::fprintf(stderr, "mismatch between serial and parallel sweep\n");
      return 1;
    }
    std::printf("%-20s %10d %12.4f %12.4f %9.2f %12.3e\n", name.c_str(),
                samples, ts, tp, ts / tp, max_entry(par));
  }
  return 0;
}
