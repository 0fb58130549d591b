#include "sbm/mc.hpp"

#include <omp.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sbm/rng.hpp"

namespace sbm {

void EnsembleConfig::validate() const {
  if (n < 2) throw std::invalid_argument("config: need at least two block rows");
  if (d < 1) throw std::invalid_argument("config: block dimension must be positive");
  if (z < 0 || z > n) throw std::invalid_argument("config: mean degree must satisfy 0 <= Z <= N");
  if (samples < 1) throw std::invalid_argument("config: need at least one sample");
  if (dim() > max_dim) {
    std::ostringstream os;
    os << "config: matrix dimension " << dim() << " exceeds the cap " << max_dim
       << " (raise max_dim to allow it)";
    throw std::invalid_argument(os.str());
  }
}

namespace {

// Edge draws consume the sample substream in a fixed order: one uniform per
// vertex pair (i < j), then d(d+1)/2 normals when the edge is present.
template <class EdgeSink>
void sample_edges(const EnsembleConfig& config, std::uint64_t sample_index, EdgeSink&& sink) {
  Philox rng(config.seed, sample_index);
  const double p_edge = config.z / config.n;
  const double sigma = std::sqrt(config.block_variance());
  const double sigma_diag = std::sqrt(2.0 * config.block_variance());
  Eigen::MatrixXd block(config.d, config.d);
  for (int i = 0; i < config.n; ++i) {
    for (int j = i + 1; j < config.n; ++j) {
      if (rng.next_u01() >= p_edge) continue;
      for (int a = 0; a < config.d; ++a) {
        for (int b = a; b < config.d; ++b) {
          double g = rng.next_normal();
          double v = (a == b) ? sigma_diag * g : sigma * g;
          block(a, b) = v;
          block(b, a) = v;
        }
      }
      sink(i, j, block);
    }
  }
}

}  // namespace

Eigen::MatrixXd sample_adjacency(const EnsembleConfig& config, std::uint64_t sample_index) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(config.dim(), config.dim());
  sample_edges(config, sample_index, [&](int i, int j, const Eigen::MatrixXd& block) {
    a.block(i * config.d, j * config.d, config.d, config.d) = block;
    a.block(j * config.d, i * config.d, config.d, config.d) = block;
  });
  return a;
}

std::vector<double> empirical_moments_all(const Eigen::MatrixXd& a, int q_max) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  std::vector<double> out(static_cast<std::size_t>(q_max), 0.0);
  std::vector<double> pw(static_cast<std::size_t>(ev.size()), 1.0);
  for (int q = 1; q <= q_max; ++q) {
    double s = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      pw[static_cast<std::size_t>(i)] *= ev(i);
      s += pw[static_cast<std::size_t>(i)];
    }
    out[static_cast<std::size_t>(q - 1)] = s / static_cast<double>(a.rows());
  }
  return out;
}

std::vector<double> empirical_moments(const Eigen::MatrixXd& a, int p_max) {
  auto all = empirical_moments_all(a, 2 * p_max);
  std::vector<double> out(static_cast<std::size_t>(p_max));
  for (int p = 1; p <= p_max; ++p) out[static_cast<std::size_t>(p - 1)] = all[static_cast<std::size_t>(2 * p - 1)];
  return out;
}

namespace {

// Sparse route for large matrices: only Frobenius products of powers.
std::vector<double> sparse_sample_moments(const EnsembleConfig& config, std::uint64_t sample_index,
                                          int p_max) {
  using Sparse = Eigen::SparseMatrix<double>;
  std::vector<Eigen::Triplet<double>> trips;
  sample_edges(config, sample_index, [&](int i, int j, const Eigen::MatrixXd& block) {
    for (int a = 0; a < config.d; ++a)
      for (int b = 0; b < config.d; ++b) {
        if (block(a, b) == 0.0) continue;
        trips.emplace_back(i * config.d + a, j * config.d + b, block(a, b));
        trips.emplace_back(j * config.d + b, i * config.d + a, block(a, b));
      }
  });
  Sparse a(config.dim(), config.dim());
  a.setFromTriplets(trips.begin(), trips.end());

  std::vector<double> out(static_cast<std::size_t>(p_max), 0.0);
  Sparse power = a;  // A^p, grown one multiplication at a time
  for (int p = 1; p <= p_max; ++p) {
    if (p > 1) power = (power * a).pruned();
    out[static_cast<std::size_t>(p - 1)] = power.squaredNorm() / static_cast<double>(config.dim());
  }
  return out;
}

}  // namespace

double pairwise_sum(const std::vector<double>& values) {
  auto rec = [&](auto&& self, std::size_t lo, std::size_t hi) -> double {
    if (hi - lo <= 8) {
      double s = 0;
      for (std::size_t i = lo; i < hi; ++i) s += values[i];
      return s;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return self(self, lo, mid) + self(self, mid, hi);
  };
  return values.empty() ? 0.0 : rec(rec, 0, values.size());
}

Rational analytic_moment(const EnsembleConfig& config, int p) {
  FiniteDMoment m = moment_finite_d(p);
  const Rational z(config.z);  // doubles convert exactly
  const Rational s2(config.block_variance());
  Rational acc = 0;
  Rational zk = 1;
  for (int k = 1; k <= p; ++k) {
    zk *= z;
    acc += zk * m.z_coeffs[static_cast<std::size_t>(k)].eval<Rational>(Rational(config.d));
  }
  Rational s2p = 1;
  for (int i = 0; i < p; ++i) s2p *= s2;
  return acc * s2p;
}

ExperimentResult run_experiment(const EnsembleConfig& config, int p_max, int threads) {
  config.validate();
  if (p_max < 1) throw std::invalid_argument("run_experiment: p_max must be positive");

  const int s = config.samples;
  std::vector<std::vector<double>> sample_moments(static_cast<std::size_t>(s));
  const bool dense = config.dim() <= config.dense_dim;
  int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (long long i = 0; i < s; ++i) {
    if (dense) {
      Eigen::MatrixXd a = sample_adjacency(config, static_cast<std::uint64_t>(i));
      sample_moments[static_cast<std::size_t>(i)] = empirical_moments(a, p_max);
    } else {
      sample_moments[static_cast<std::size_t>(i)] =
          sparse_sample_moments(config, static_cast<std::uint64_t>(i), p_max);
    }
  }

  ExperimentResult result;
  result.config = config;
  std::vector<double> column(static_cast<std::size_t>(s));
  for (int p = 1; p <= p_max; ++p) {
    for (int i = 0; i < s; ++i) column[static_cast<std::size_t>(i)] = sample_moments[static_cast<std::size_t>(i)][static_cast<std::size_t>(p - 1)];
    const double mean = pairwise_sum(column) / s;
    double se = 0;
    if (s > 1) {
      std::vector<double> sq(static_cast<std::size_t>(s));
      for (int i = 0; i < s; ++i) {
        double dlt = column[static_cast<std::size_t>(i)] - mean;
        sq[static_cast<std::size_t>(i)] = dlt * dlt;
      }
      se = std::sqrt(pairwise_sum(sq) / (s - 1) / s);
    }

    MomentEstimate est;
    est.order = 2 * p;
    est.mean = mean;
    est.stderr_ = se;
    est.analytic = static_cast<double>(analytic_moment(config, p));
    est.analytic_finite_n = est.analytic;
    if (p == 1) {
      // tr A^2 sees no walk truncation: the only finite-N effect is the
      // (N-1)/N edge-count factor.
      est.analytic_finite_n = est.analytic * (config.n - 1) / config.n;
    }
    est.z_score = se > 0 ? (mean - est.analytic) / se : (mean == est.analytic ? 0.0 : INFINITY);
    result.estimates.push_back(est);
  }
  return result;
}

}  // namespace sbm
