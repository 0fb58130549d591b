#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <vector>

#include "sbm/poly.hpp"
#include "sbm/wick.hpp"

namespace sbm {

struct EnsembleConfig {
  int n = 2;               // number of block rows
  int d = 1;               // block dimension
  double z = 1.0;          // mean degree, 0 <= z <= n
  double sigma2 = -1.0;    // block variance; negative means the default 1/d
  std::uint64_t seed = 0;
  int samples = 1;
  int max_dim = 4000;      // allocation cap on n*d
  int dense_dim = 2000;    // eigensolver path up to this matrix dimension

  void validate() const;
  double block_variance() const { return sigma2 < 0 ? 1.0 / d : sigma2; }
  int dim() const { return n * d; }
};

struct MomentEstimate {
  int order = 0;
  double mean = 0;
  double stderr_ = 0;
  double analytic = 0;           // N -> inf prediction from moment_finite_d
  double z_score = 0;
  double analytic_finite_n = 0;  // exact finite-N value when known (order 2)
};

struct ExperimentResult {
  EnsembleConfig config;
  std::vector<MomentEstimate> estimates;  // orders 2, 4, ..., 2 p_max
};

// One adjacency matrix drawn from the per-sample substream (seed, index).
Eigen::MatrixXd sample_adjacency(const EnsembleConfig& config, std::uint64_t sample_index);

// (1/(Nd)) tr A^{2p} for p = 1..p_max.
std::vector<double> empirical_moments(const Eigen::MatrixXd& a, int p_max);
// (1/(Nd)) tr A^q for q = 1..q_max (both parities; used by the odd-moment checks).
std::vector<double> empirical_moments_all(const Eigen::MatrixXd& a, int q_max);

ExperimentResult run_experiment(const EnsembleConfig& config, int p_max, int threads = 0);

// Exact rational evaluation of moment_finite_d at the config parameters.
Rational analytic_moment(const EnsembleConfig& config, int p);

// Deterministic sample-index-ordered reduction used by the aggregator.
double pairwise_sum(const std::vector<double>& values);

}  // namespace sbm
