#include "dmkh/sweep.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dmkh {

std::vector<SamplePoint> admissible_samples(const ModelMonopole& m, int K) {
  std::vector<SamplePoint> pts;
  pts.reserve(K);
  const Cx I(0.0, 1.0);
  const double golden = 0.6180339887498949;   // 1/phi
  const double silver = 0.41421356237309515;  // sqrt(2) - 1
  const double plastic = 0.7548776662466927;  // 1/rho, rho^3 = rho + 1
  for (int k = 0; k < K; ++k) {
    double theta = -0.7 + 1.4 * std::fmod((k + 1) * golden, 1.0);
    double rho = 1.5 + 2.5 * std::fmod((k + 1) * silver, 1.0);
    double t = m.T * std::fmod((k + 1) * plastic, 1.0);
    pts.push_back({t, rho * std::exp(I * theta)});
  }
  return pts;
}

std::vector<double> residual_sweep_serial(const ModelMonopole& m,
                                          const std::vector<SamplePoint>& pts) {
  std::vector<double> out(pts.size());
  for (size_t k = 0; k < pts.size(); ++k)
    out[k] = bogomolny_residual(m, pts[k]);
  return out;
}

std::vector<double> residual_sweep_parallel(
    const ModelMonopole& m, const std::vector<SamplePoint>& pts) {
  std::vector<double> out(pts.size());
  const long n = static_cast<long>(pts.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) out[k] = bogomolny_residual(m, pts[k]);
  return out;
}

std::vector<double> g_check_sweep_serial(const ModelMonopole& m,
                                         const std::vector<SamplePoint>& pts) {
  std::vector<double> out(pts.size());
  for (size_t k = 0; k < pts.size(); ++k)
    out[k] = g_operator_check(m, pts[k]);
  return out;
}

std::vector<double> g_check_sweep_parallel(
    const ModelMonopole& m, const std::vector<SamplePoint>& pts) {
  std::vector<double> out(pts.size());
  const long n = static_cast<long>(pts.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) out[k] = g_operator_check(m, pts[k]);
  return out;
}

double max_entry(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

}  // namespace dmkh
