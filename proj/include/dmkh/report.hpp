// Command dispatch: runs one CLI command against a parsed manifest and
// produces a deterministic machine-readable JSON report (no timestamps;
// FNV-1a input digest). Exit codes: 0 success, 2 verification failure,
// 1 input error.
#pragma once

#include "dmkh/manifest.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace dmkh {

struct RunOptions {
  std::optional<int> order;         // --order
  std::optional<int> degree_bound;  // --degree-bound
  std::optional<int> samples;       // --samples
  std::optional<int> env_order;     // DMKH_ORDER
};

struct RunResult {
  nlohmann::ordered_json report;
  int exit_code = 0;
};

// FNV-1a 64-bit digest of the manifest text, rendered "fnv1a64:<16 hex>"
std::string input_digest(const std::string& text);

// command in {classify, degree, stability, psi, kms, verify-monopole};
// input errors are captured in the report with exit code 1.
RunResult run_command(const std::string& command,
                      const std::string& manifest_text,
                      const RunOptions& opts = {});

// per-sample CSV table for verify-monopole (--csv)
std::string sweep_csv(const ModelMonopole& m, int samples);

}  // namespace dmkh
