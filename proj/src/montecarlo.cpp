#include "hidim/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "hidim/clt_inference.hpp"
#include "hidim/errors.hpp"

namespace hidim {

// ---------------------------------------------------------------------------
// Entry distributions

EntryDistribution EntryDistribution::parse(std::string_view name, int df) {
  EntryDistribution dist;
  if (name == "gaussian" || name == "normal") {
    dist = gaussian();
  } else if (name == "rademacher") {
    dist = rademacher();
  } else if (name == "shifted_exponential" || name == "shifted-exponential") {
    dist = shifted_exponential();
  } else if (name == "student_t" || name == "student-t") {
    dist = student_t(df);
  } else {
    throw DataError("unknown entry distribution '" + std::string(name) + "'");
  }
  dist.validate();
  return dist;
}

std::string EntryDistribution::name() const {
  switch (kind) {
  case Kind::gaussian:
    return "gaussian";
  case Kind::rademacher:
    return "rademacher";
  case Kind::shifted_exponential:
    return "shifted_exponential";
  case Kind::student_t:
    return "student_t";
  }
  return "gaussian";
}

void EntryDistribution::validate() const {
  if (kind == Kind::student_t && df <= 4) {
    std::ostringstream msg;
    msg << "student_t needs df > 4 for a finite fourth moment, got df = " << df;
    throw DataError(msg.str());
  }
}

double EntryDistribution::sample(Philox4x32 &rng) const {
  switch (kind) {
  case Kind::gaussian:
    return rng.next_normal();
  case Kind::rademacher:
    return (rng.next_u32() & 1u) ? 1.0 : -1.0;
  case Kind::shifted_exponential:
    return -std::log(rng.next_open01()) - 1.0;
  case Kind::student_t: {
    const double z = rng.next_normal();
    double chi2 = 0.0;
    for (int k = 0; k < df; ++k) {
      const double g = rng.next_normal();
      chi2 += g * g;
    }
    const double dfd = static_cast<double>(df);
    return z / std::sqrt(chi2 / dfd) * std::sqrt((dfd - 2.0) / dfd);
  }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Configuration

Eigen::VectorXd SimConfig::mean_vector() const {
  const auto dim = static_cast<Eigen::Index>(p);
  if (mean_shift.size() == 1) {
    return Eigen::VectorXd::Constant(dim, mean_shift.front());
  }
  return Eigen::Map<const Eigen::VectorXd>(mean_shift.data(),
                                           static_cast<Eigen::Index>(mean_shift.size()));
}

bool SimConfig::zero_mean() const {
  return std::all_of(mean_shift.begin(), mean_shift.end(),
                     [](double v) { return v == 0.0; });
}

void SimConfig::validate() const {
  if (p < 1 || n < 2) {
    throw DataError("simulation needs p >= 1 and n >= 2");
  }
  if (replicates < 1) {
    throw DataError("simulation needs at least one replicate");
  }
  if (mean_shift.size() != 1 && mean_shift.size() != p) {
    std::ostringstream msg;
    msg << "mean shift has length " << mean_shift.size() << ", expected 1 or p = " << p;
    throw DataError(msg.str());
  }
  if (!std::all_of(mean_shift.begin(), mean_shift.end(),
                   [](double v) { return std::isfinite(v); })) {
    throw DataError("mean shift must be finite");
  }
  if (truncation && !(truncation->epsilon_exponent > 0.0)) {
    throw DataError("truncation exponent must be positive");
  }
  dist.validate();
}

unsigned resolve_thread_count(unsigned requested) {
  unsigned threads = requested > 0 ? requested : std::thread::hardware_concurrency();
  if (threads == 0) {
    threads = 1;
  }
  if (const char *cap = std::getenv("HIDIM_T2_THREADS")) {
    char *end = nullptr;
    const long value = std::strtol(cap, &end, 10);
    if (end != cap && value > 0) {
      threads = std::min(threads, static_cast<unsigned>(value));
    }
  }
  return threads;
}

// ---------------------------------------------------------------------------
// Data generation and preprocessing

DataMatrix generate_data(const SimConfig &config, std::size_t replicate_index) {
  const auto p = static_cast<Eigen::Index>(config.p);
  const auto n = static_cast<Eigen::Index>(config.n);
  Eigen::MatrixXd values(p, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Philox4x32 rng(config.seed, static_cast<std::uint32_t>(replicate_index),
                   static_cast<std::uint32_t>(j));
    for (Eigen::Index i = 0; i < p; ++i) {
      values(i, j) = config.dist.sample(rng);
    }
  }
  values.colwise() += config.mean_vector();
  return DataMatrix(std::move(values));
}

TruncationResult truncate_centralize(const DataMatrix &data, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw DomainError("truncation level epsilon must be positive");
  }
  const double bound = epsilon * std::sqrt(static_cast<double>(data.n()));
  Eigen::MatrixXd values = data.values();
  std::size_t truncated = 0;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (std::abs(values(k)) > bound) {
      values(k) = 0.0;
      ++truncated;
    }
  }
  const double shift = values.mean();
  values.array() -= shift;
  const double scale = std::sqrt(values.squaredNorm() / static_cast<double>(values.size()));
  if (!(scale > 0.0)) {
    throw DataError("truncation removed all variation from the data");
  }
  values /= scale;
  return {DataMatrix(std::move(values)), shift, scale, truncated};
}

double ks_statistic_normal(std::vector<double> sample) {
  if (sample.empty()) {
    return 0.0;
  }
  std::sort(sample.begin(), sample.end());
  const double count = static_cast<double>(sample.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double phi = normal_cdf(sample[i]);
    const double above = static_cast<double>(i + 1) / count - phi;
    const double below = phi - static_cast<double>(i) / count;
    sup = std::max({sup, above, below});
  }
  return std::clamp(sup, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Replicate harness

namespace {

template <typename Result> struct ReplicateSlots {
  std::vector<std::optional<Result>> results;
  std::string first_error;
  std::size_t first_error_index = 0;
};

// Runs body(index) for every replicate on up to `threads` workers. Each
// result lands in the slot of its replicate index, so the assembled output
// does not depend on scheduling.
template <typename Result, typename Body>
ReplicateSlots<Result> run_replicates(std::size_t count, unsigned threads, Body body) {
  ReplicateSlots<Result> slots;
  slots.results.resize(count);
  std::vector<std::string> errors(count);
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots.results[i] = body(i);
      } catch (const std::exception &e) {
        errors[i] = e.what();
      }
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_thread_count(threads), count));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back(worker);
    }
    for (auto &thread : pool) {
      thread.join();
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (!slots.results[i] && slots.first_error.empty()) {
      slots.first_error = errors[i];
      slots.first_error_index = i;
    }
  }
  return slots;
}

template <typename Result>
std::size_t check_failures(const ReplicateSlots<Result> &slots, std::string_view experiment) {
  const std::size_t failed = static_cast<std::size_t>(std::count_if(
      slots.results.begin(), slots.results.end(), [](const auto &r) { return !r; }));
  if (static_cast<double>(failed) > 0.01 * static_cast<double>(slots.results.size())) {
    std::ostringstream msg;
    msg << experiment << ": " << failed << " of " << slots.results.size()
        << " replicates failed; first failure (replicate " << slots.first_error_index
        << "): " << slots.first_error;
    throw ExperimentError(msg.str());
  }
  return failed;
}

double mean_of(const std::vector<double> &values) {
  if (values.empty()) {
    return 0.0;
  }
  double total = 0.0;
  for (double v : values) {
    total += v;
  }
  return total / static_cast<double>(values.size());
}

double variance_of(const std::vector<double> &values) {
  if (values.size() < 2) {
    return 0.0;
  }
  const double mean = mean_of(values);
  double total = 0.0;
  for (double v : values) {
    total += (v - mean) * (v - mean);
  }
  return total / static_cast<double>(values.size() - 1);
}

void fill_moments(SimReport &report) {
  report.sample_mean_of_z = mean_of(report.zscores);
  report.sample_var_of_z = variance_of(report.zscores);
}

std::vector<double> collect(const ReplicateSlots<double> &slots) {
  std::vector<double> values;
  values.reserve(slots.results.size());
  for (const auto &r : slots.results) {
    if (r) {
      values.push_back(*r);
    }
  }
  return values;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void require_zero_mean(const SimConfig &config, std::string_view experiment) {
  if (!config.zero_mean()) {
    throw DataError(std::string(experiment) + " requires a zero-mean configuration");
  }
}

} // namespace

SimReport run_t2_experiment(const SimConfig &config, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  if (config.p >= config.n) {
    throw DataError("T^2 experiment needs p < n");
  }
  const Eigen::VectorXd mu0 = config.mean_vector();
  const double epsilon =
      config.truncation
          ? std::pow(static_cast<double>(config.n), -config.truncation->epsilon_exponent)
          : 0.0;

  const auto slots = run_replicates<double>(config.replicates, threads, [&](std::size_t r) {
    const DataMatrix data = generate_data(config, r);
    double t2 = 0.0;
    if (config.truncation) {
      // The hypothesized mean goes through the same affine map as the data.
      const auto tr = truncate_centralize(data, epsilon);
      const Eigen::VectorXd mapped = (mu0.array() - tr.shift) / tr.scale;
      t2 = hotelling_t2(tr.data, mapped);
    } else {
      t2 = hotelling_t2(data, mu0);
    }
    return standardize_t2(t2, config.n, config.p).zscore;
  });

  SimReport report;
  report.experiment = "t2";
  report.config = config;
  report.failed_replicates = check_failures(slots, "t2 experiment");
  report.zscores = collect(slots);
  report.ks_statistic = ks_statistic_normal(report.zscores);
  fill_moments(report);
  report.runtime_seconds = seconds_since(start);
  return report;
}

SimReport run_bilinear_experiment(const SimConfig &config, const RealFunction &f,
                                  unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  require_zero_mean(config, "bilinear experiment");
  const double c_n = config.aspect_ratio();
  const MpModel model(c_n);
  const double limit_mean = integral_f(model, f);
  const double reference = theorem2_variance(c_n, f);
  const double root_n = std::sqrt(static_cast<double>(config.n));

  const auto slots = run_replicates<double>(config.replicates, threads, [&](std::size_t r) {
    const DataMatrix data = generate_data(config, r);
    const SpectralDecomp decomp(centered_cov(data));
    return root_n * (bilinear_form(decomp, sample_mean(data), f) - limit_mean);
  });

  SimReport report;
  report.experiment = "bilinear";
  report.config = config;
  report.failed_replicates = check_failures(slots, "bilinear experiment");
  report.zscores = collect(slots);
  fill_moments(report);
  report.raw_variance = report.sample_var_of_z;
  report.reference_variance = reference;
  if (reference > 0.0) {
    std::vector<double> standardized = report.zscores;
    for (double &v : standardized) {
      v /= std::sqrt(reference);
    }
    report.ks_statistic = ks_statistic_normal(std::move(standardized));
  } else {
    report.ks_statistic = ks_statistic_normal(report.zscores);
  }
  report.runtime_seconds = seconds_since(start);
  return report;
}

SimReport run_mean_norm_experiment(const SimConfig &config, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  require_zero_mean(config, "mean-norm experiment");
  const double c_n = config.aspect_ratio();
  const double root_n = std::sqrt(static_cast<double>(config.n));
  const double scale = std::sqrt(mean_norm_variance(c_n, 1.0));

  const auto slots = run_replicates<double>(config.replicates, threads, [&](std::size_t r) {
    const DataMatrix data = generate_data(config, r);
    return root_n * (sample_mean(data).squaredNorm() - c_n) / scale;
  });

  SimReport report;
  report.experiment = "mean-norm";
  report.config = config;
  report.failed_replicates = check_failures(slots, "mean-norm experiment");
  report.zscores = collect(slots);
  report.ks_statistic = ks_statistic_normal(report.zscores);
  fill_moments(report);
  report.raw_variance = report.sample_var_of_z * scale * scale;
  report.reference_variance = scale * scale;
  report.runtime_seconds = seconds_since(start);
  return report;
}

namespace {

struct ProcessSamples {
  std::vector<std::vector<ComplexPoint>> rows; // per replicate, per z
  std::size_t failed = 0;
};

ProcessSamples sample_process(const SimConfig &config,
                              const std::vector<ComplexPoint> &zpoints, unsigned threads) {
  config.validate();
  require_zero_mean(config, "process covariance estimate");
  if (zpoints.empty()) {
    throw DataError("process covariance needs at least one z point");
  }
  for (const auto &z : zpoints) {
    if (std::abs(z.imag()) < 0.5) {
      std::ostringstream msg;
      msg << "process covariance points need |Im z| >= 0.5, got " << z;
      throw DomainError(msg.str());
    }
  }
  const MpModel model(config.aspect_ratio());
  std::vector<ComplexPoint> limit(zpoints.size());
  for (std::size_t k = 0; k < zpoints.size(); ++k) {
    limit[k] = stieltjes_m(model, zpoints[k]);
  }
  const double root_n = std::sqrt(static_cast<double>(config.n));

  using Row = std::vector<ComplexPoint>;
  const auto slots = run_replicates<Row>(config.replicates, threads, [&](std::size_t r) {
    const DataMatrix data = generate_data(config, r);
    const SpectralDecomp decomp(centered_cov(data));
    const WeightedEsd esd = weighted_esd(decomp, sample_mean(data));
    Row row(zpoints.size());
    for (std::size_t k = 0; k < zpoints.size(); ++k) {
      row[k] = root_n * (esd.stieltjes(zpoints[k]) - limit[k]);
    }
    return row;
  });

  ProcessSamples samples;
  samples.failed = check_failures(slots, "process covariance estimate");
  for (const auto &r : slots.results) {
    if (r) {
      samples.rows.push_back(*r);
    }
  }
  return samples;
}

EmpiricalCovariance covariance_from(const ProcessSamples &samples,
                                    const std::vector<ComplexPoint> &zpoints) {
  const auto k = static_cast<Eigen::Index>(zpoints.size());
  const std::size_t count = samples.rows.size();
  EmpiricalCovariance est{zpoints, Eigen::MatrixXcd::Zero(k, k), Eigen::MatrixXd::Zero(k, k),
                          count};
  if (count < 2) {
    return est;
  }
  std::vector<ComplexPoint> mean(zpoints.size(), 0.0);
  for (const auto &row : samples.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      mean[i] += row[i];
    }
  }
  for (auto &m : mean) {
    m /= static_cast<double>(count);
  }
  const double denom = static_cast<double>(count - 1);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      std::vector<ComplexPoint> products;
      products.reserve(count);
      ComplexPoint total = 0.0;
      for (const auto &row : samples.rows) {
        const ComplexPoint prod = (row[i] - mean[i]) * (row[j] - mean[j]);
        products.push_back(prod);
        total += prod;
      }
      const ComplexPoint cov = total / denom;
      double spread = 0.0;
      const ComplexPoint avg = total / static_cast<double>(count);
      for (const auto &prod : products) {
        spread += std::norm(prod - avg);
      }
      est.values(i, j) = cov;
      est.standard_errors(i, j) =
          std::sqrt(spread / denom) / std::sqrt(static_cast<double>(count));
    }
  }
  return est;
}

} // namespace

EmpiricalCovariance estimate_process_covariance(const SimConfig &config,
                                                const std::vector<ComplexPoint> &zpoints,
                                                unsigned threads) {
  return covariance_from(sample_process(config, zpoints, threads), zpoints);
}

SimReport run_process_cov_experiment(const SimConfig &config,
                                     const std::vector<ComplexPoint> &zpoints,
                                     unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  const ProcessSamples samples = sample_process(config, zpoints, threads);

  // Var(Re X(z)) = (Cov(X(z), X(conj z)) + Re Cov(X(z), X(z))) / 2
  const double c_n = config.aspect_ratio();
  const ComplexPoint z0 = zpoints.front();
  const double re_variance =
      0.5 * (process_covariance(c_n, z0, std::conj(z0)).real() +
             process_covariance(c_n, z0, z0).real());

  SimReport report;
  report.experiment = "process-cov";
  report.config = config;
  report.failed_replicates = samples.failed;
  report.zscores.reserve(samples.rows.size());
  for (const auto &row : samples.rows) {
    report.zscores.push_back(row.front().real() / std::sqrt(re_variance));
  }
  report.ks_statistic = ks_statistic_normal(report.zscores);
  fill_moments(report);
  report.raw_variance = report.sample_var_of_z * re_variance;
  report.reference_variance = re_variance;
  report.empirical_cov = covariance_from(samples, zpoints);
  report.runtime_seconds = seconds_since(start);
  return report;
}

} // namespace hidim
