#ifndef HIDIM_MONTECARLO_HPP_
#define HIDIM_MONTECARLO_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hidim/mp_law.hpp"
#include "hidim/rng.hpp"
#include "hidim/spectral_core.hpp"

namespace hidim {

// Entry law of the i.i.d. data array, standardized analytically to mean 0 and
// variance 1.
struct EntryDistribution {
  enum class Kind { gaussian, rademacher, shifted_exponential, student_t };

  Kind kind = Kind::gaussian;
  int df = 0; // student_t only; must exceed 4 so the fourth moment is finite

  static EntryDistribution gaussian() { return {Kind::gaussian, 0}; }
  static EntryDistribution rademacher() { return {Kind::rademacher, 0}; }
  static EntryDistribution shifted_exponential() { return {Kind::shifted_exponential, 0}; }
  static EntryDistribution student_t(int df) { return {Kind::student_t, df}; }

  // Accepts gaussian, rademacher, shifted_exponential, student_t.
  static EntryDistribution parse(std::string_view name, int df = 0);
  std::string name() const;
  void validate() const;
  double sample(Philox4x32 &rng) const;

  bool operator==(const EntryDistribution &) const = default;
};

struct TruncationOptions {
  double epsilon_exponent = 0.125; // epsilon_n = n^{-exponent}

  bool operator==(const TruncationOptions &) const = default;
};

struct SimConfig {
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t replicates = 1;
  EntryDistribution dist;
  // Length 1 broadcasts to all p coordinates; otherwise length must equal p.
  std::vector<double> mean_shift{0.0};
  std::uint64_t seed = 0;
  std::optional<TruncationOptions> truncation;

  Eigen::VectorXd mean_vector() const;
  bool zero_mean() const;
  double aspect_ratio() const {
    return static_cast<double>(p) / static_cast<double>(n);
  }
  void validate() const;

  bool operator==(const SimConfig &) const = default;
};

// Empirical E[Xi Xj] (no conjugation) of the centered process values
// X_n(z) = sqrt(n) (sbar^T (Scov - zI)^{-1} sbar / |sbar|^2 - m_n(z)).
struct EmpiricalCovariance {
  std::vector<ComplexPoint> zpoints;
  Eigen::MatrixXcd values;
  Eigen::MatrixXd standard_errors; // |.| of the Monte Carlo standard error
  std::size_t replicates = 0;
};

struct SimReport {
  std::string experiment;
  SimConfig config;
  std::vector<double> zscores; // ordered by replicate index, failures dropped
  double ks_statistic = 0.0;
  double sample_mean_of_z = 0.0;
  double sample_var_of_z = 0.0;
  std::size_t failed_replicates = 0;
  // Variance of the unstandardized statistic and its limiting value, where
  // the experiment defines them.
  std::optional<double> raw_variance;
  std::optional<double> reference_variance;
  std::optional<EmpiricalCovariance> empirical_cov;
  double runtime_seconds = 0.0;
};

// Worker count: `requested` (0 = hardware concurrency), capped by the
// HIDIM_T2_THREADS environment variable when set.
unsigned resolve_thread_count(unsigned requested = 0);

// p x n draws; column j comes from the Philox stream (seed, replicate, j), so
// a replicate is identical no matter which thread produces it.
DataMatrix generate_data(const SimConfig &config, std::size_t replicate_index);

struct TruncationResult {
  DataMatrix data;
  double shift = 0.0; // empirical mean removed after truncation
  double scale = 1.0; // empirical standard deviation divided out
  std::size_t truncated = 0;
};

// X 1(|X| <= epsilon sqrt(n)), then recentered and rescaled by the empirical
// mean and standard deviation of all entries. Throws DataError if the
// truncated entries have zero spread.
TruncationResult truncate_centralize(const DataMatrix &data, double epsilon);

// Exact sup-distance between the empirical CDF of `sample` and Phi.
double ks_statistic_normal(std::vector<double> sample);

// Per replicate: generate, optionally truncate, T^2 with mu0 = mean_shift,
// standardize. Failed replicates are dropped; more than 1% failures throws
// ExperimentError.
SimReport run_t2_experiment(const SimConfig &config, unsigned threads = 0);

// Per replicate: sqrt(n) (sbar^T f(Scov) sbar / |sbar|^2 - int f dF_{c_n}).
// zscores hold these raw values; reference_variance is the limiting variance
// at c_n and ks_statistic is taken after dividing by its square root.
SimReport run_bilinear_experiment(const SimConfig &config, const RealFunction &f,
                                  unsigned threads = 0);

// zscores = sqrt(n) (|sbar|^2 - c_n) / sqrt(2 c_n). Requires zero mean.
SimReport run_mean_norm_experiment(const SimConfig &config, unsigned threads = 0);

// Requires zero mean and |Im z| >= 0.5 for every point.
EmpiricalCovariance estimate_process_covariance(const SimConfig &config,
                                                const std::vector<ComplexPoint> &zpoints,
                                                unsigned threads = 0);

// SimReport wrapper around the covariance estimate. zscores are Re X_n(z_0)
// divided by its limiting standard deviation.
SimReport run_process_cov_experiment(const SimConfig &config,
                                     const std::vector<ComplexPoint> &zpoints,
                                     unsigned threads = 0);

} // namespace hidim

#endif // HIDIM_MONTECARLO_HPP_
