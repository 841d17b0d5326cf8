#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "dmkh/sweep.hpp"

using namespace dmkh;

namespace {

std::vector<ModelMonopole> sweep_models(Cx lambda) {
  std::vector<ModelMonopole> ms;
  ms.push_back(make_basic_lp_ell(2, 3, 1.25, lambda));
  ms.push_back(make_frobenius({Cx(0.6, 0.2), Cx(0.4)}, 2, 1.0, lambda));
  ms.push_back(make_tame(0.5, Cx(0.3, 0.2), 1.0, lambda));
  ms.push_back(make_global_gamma(Cx(0.3, 0.8), 1.0, lambda));
  return ms;
}

}  // namespace

TEST_CASE("admissible samples are deterministic and admissible") {
  ModelMonopole m = make_tame(0.5, Cx(0.0, 1.0), 1.5);
  auto a = admissible_samples(m, 64);
  auto b = admissible_samples(m, 64);
  REQUIRE(a.size() == 64);
  for (size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].t == b[k].t);
    CHECK(a[k].wp == b[k].wp);
    CHECK(a[k].t >= 0.0);
    CHECK(a[k].t < m.T);
    CHECK(std::abs(a[k].wp) >= 1.5);
    CHECK(std::abs(a[k].wp) <= 4.0);
    CHECK(std::abs(std::arg(a[k].wp)) < 0.71);
  }
  // prefix property: the first K points do not depend on the total count
  auto c = admissible_samples(m, 16);
  for (size_t k = 0; k < c.size(); ++k) CHECK(c[k].wp == a[k].wp);
}

TEST_CASE("serial and parallel sweeps agree bitwise") {
  for (Cx l : {Cx(0.0), Cx(0.0, 1.0)}) {
    for (const ModelMonopole& m : sweep_models(l)) {
      auto pts = admissible_samples(m, 96);
      CHECK(residual_sweep_serial(m, pts) == residual_sweep_parallel(m, pts));
      CHECK(g_check_sweep_serial(m, pts) == g_check_sweep_parallel(m, pts));
    }
  }
}

TEST_CASE("sweep residuals meet the certification tolerances") {
  for (Cx l : {Cx(0.0), Cx(1.0), Cx(0.0, 1.0)}) {
    for (const ModelMonopole& m : sweep_models(l)) {
      auto pts = admissible_samples(m, 64);
      CHECK(max_entry(residual_sweep_parallel(m, pts)) < 1e-12);
      CHECK(max_entry(g_check_sweep_parallel(m, pts)) < 1e-10);
    }
  }
}
