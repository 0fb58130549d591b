// Timing comparison between the serial reference kernels and their
// OpenMP-parallel counterparts.  Not a correctness gate; equality of the
// outputs is asserted on the fly.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "sbm/mc.hpp"
#include "sbm/planar.hpp"
#include "sbm/walk_enum.hpp"
#include "sbm/wick.hpp"

namespace {

template <class F>
double time_once(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-38s serial %8.3fs   parallel %8.3fs   speedup %.2fx\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
  const int threads = omp_get_max_threads();
  std::printf("available workers: %d\n\n", threads);

  {
    sbm::Word w(14, 1);  // X^14: 135135 matchings x 2^7 terms
    sbm::DPoly a, b;
    double ts = time_once([&] { a = sbm::wick_trace_serial(w); });
    double tp = time_once([&] { b = sbm::wick_trace(w); });
    if (!(a.d_poly == b.d_poly)) throw std::runtime_error("wick kernels disagree");
    report("wick trace, X^14", ts, tp);
  }

  {
    sbm::MomentExpansion a, b;
    double ts = time_once([&] { a = sbm::enumerate_tree_walks(7, 1); });
    double tp = time_once([&] { b = sbm::enumerate_tree_walks(7); });
    if (a.terms.size() != b.terms.size()) throw std::runtime_error("enumeration kernels disagree");
    report("walk enumeration, order 14", ts, tp);
  }

  {
    sbm::Series a, b;
    double ts = time_once([&] { a = sbm::irreducible_series(8, 1); });
    double tp = time_once([&] { b = sbm::irreducible_series(8); });
    if (!(a == b)) throw std::runtime_error("irreducible-series kernels disagree");
    report("irreducible series, order 16", ts, tp);
  }

  {
    sbm::EnsembleConfig cfg;
    cfg.n = 150;
    cfg.d = 2;
    cfg.z = 3;
    cfg.sigma2 = 0.5;
    cfg.samples = 60;
    cfg.seed = 7;
    sbm::ExperimentResult a, b;
    double ts = time_once([&] { a = sbm::run_experiment(cfg, 2, 1); });
    double tp = time_once([&] { b = sbm::run_experiment(cfg, 2); });
    if (a.estimates[0].mean != b.estimates[0].mean)
      throw std::runtime_error("monte carlo kernels disagree");
    report("monte carlo, 60 samples of 300x300", ts, tp);
  }

  return 0;
}
