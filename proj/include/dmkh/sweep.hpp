// Deterministic sample sweeps over model monopoles: batched evaluation of
// the Bogomolny residual and the contracted-curvature deviation on a
// low-discrepancy admissible point set, with a serial reference
// implementation and an OpenMP-parallel kernel that must agree bitwise.
#pragma once

#include "dmkh/monopole.hpp"

#include <vector>

namespace dmkh {

// K points with t in [0, T) and w_p in the sector |arg w_p| < 0.7,
// |w_p| in [1.5, 4], generated by golden-ratio rotations; deterministic in
// (m.T, K) and admissible for every closed-form family.
std::vector<SamplePoint> admissible_samples(const ModelMonopole& m, int K);

// Bogomolny residual at each point.
std::vector<double> residual_sweep_serial(const ModelMonopole& m,
                                          const std::vector<SamplePoint>& pts);
std::vector<double> residual_sweep_parallel(const ModelMonopole& m,
                                            const std::vector<SamplePoint>& pts);

// Contracted-curvature deviation at each point.
std::vector<double> g_check_sweep_serial(const ModelMonopole& m,
                                         const std::vector<SamplePoint>& pts);
std::vector<double> g_check_sweep_parallel(const ModelMonopole& m,
                                           const std::vector<SamplePoint>& pts);

double max_entry(const std::vector<double>& v);

}  // namespace dmkh
