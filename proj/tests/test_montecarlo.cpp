#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "hidim/clt_inference.hpp"
#include "hidim/errors.hpp"
#include "hidim/montecarlo.hpp"
#include "hidim/rng.hpp"

using hidim::EntryDistribution;
using hidim::Philox4x32;
using hidim::SimConfig;

namespace {

SimConfig small_config(EntryDistribution dist = EntryDistribution::gaussian(),
                       std::uint64_t seed = 7) {
  SimConfig config;
  config.n = 100;
  config.p = 25;
  config.replicates = 200;
  config.dist = dist;
  config.seed = seed;
  return config;
}

} // namespace

TEST_CASE("Philox4x32-10 known-answer vectors") {
  // Published Random123 test vectors.
  CHECK(Philox4x32::bijection({0, 0, 0, 0}, {0, 0}) ==
        Philox4x32::Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::bijection({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                              {0xffffffff, 0xffffffff}) ==
        Philox4x32::Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::bijection({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                              {0xa4093822, 0x299f31d0}) ==
        Philox4x32::Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("Philox streams") {
  Philox4x32 a(42, 0, 0);
  Philox4x32 b(42, 0, 0);
  Philox4x32 other(42, 0, 1);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u32();
    CHECK(x == b.next_u32());
    differs = differs || x != other.next_u32();
  }
  CHECK(differs);

  Philox4x32 u(1, 2, 3);
  double total = 0;
  double squares = 0;
  const int count = 200000;
  for (int i = 0; i < count; ++i) {
    const double x = u.next_open01();
    CHECK_FALSE((x <= 0.0 || x >= 1.0));
    total += x;
  }
  CHECK(std::abs(total / count - 0.5) < 4 * std::sqrt(1.0 / 12 / count));
  total = 0;
  for (int i = 0; i < count; ++i) {
    const double z = u.next_normal();
    total += z;
    squares += z * z;
  }
  CHECK(std::abs(total / count) < 4 / std::sqrt(count));
  CHECK(std::abs(squares / count - 1) < 4 * std::sqrt(2.0 / count));
}

TEST_CASE("entry distributions are standardized") {
  const int count = 400000;
  for (const auto &dist : {EntryDistribution::gaussian(), EntryDistribution::rademacher(),
                           EntryDistribution::shifted_exponential(),
                           EntryDistribution::student_t(8)}) {
    CAPTURE(dist.name());
    Philox4x32 rng(99, 0, 5);
    double total = 0;
    double squares = 0;
    for (int i = 0; i < count; ++i) {
      const double x = dist.sample(rng);
      total += x;
      squares += x * x;
    }
    const double mean = total / count;
    CHECK(std::abs(mean) < 5 / std::sqrt(count));
    CHECK(std::abs(squares / count - mean * mean - 1) < 0.03);
  }
  CHECK(EntryDistribution::parse("student_t", 6) == EntryDistribution::student_t(6));
  CHECK(EntryDistribution::parse("rademacher").name() == "rademacher");
  CHECK_THROWS_AS(EntryDistribution::parse("cauchy"), hidim::DataError);
  CHECK_THROWS_AS(EntryDistribution::student_t(4).validate(), hidim::DataError);
  CHECK_THROWS_AS(EntryDistribution::student_t(3).validate(), hidim::DataError);
  CHECK_NOTHROW(EntryDistribution::student_t(5).validate());
}

TEST_CASE("SimConfig validation") {
  SimConfig config = small_config();
  CHECK_NOTHROW(config.validate());
  CHECK(config.zero_mean());
  CHECK(config.mean_vector().size() == 25);
  config.mean_shift = {0.5};
  CHECK_FALSE(config.zero_mean());
  CHECK((config.mean_vector().array() == 0.5).all());
  config.mean_shift = {1.0, 2.0};
  CHECK_THROWS_AS(config.validate(), hidim::DataError);
  config = small_config();
  config.replicates = 0;
  CHECK_THROWS_AS(config.validate(), hidim::DataError);
  config = small_config(EntryDistribution::student_t(4));
  CHECK_THROWS_AS(config.validate(), hidim::DataError);
  CHECK_THROWS_AS(hidim::run_t2_experiment(config, 1), hidim::DataError);
}

TEST_CASE("generate_data") {
  SimConfig config = small_config(EntryDistribution::rademacher());
  const auto data = hidim::generate_data(config, 3);
  CHECK(data.p() == 25);
  CHECK(data.n() == 100);
  CHECK((data.values().array().abs() == 1.0).all());
  CHECK(hidim::generate_data(config, 3) == data);
  CHECK_FALSE(hidim::generate_data(config, 4) == data);

  config.mean_shift = {2.0};
  CHECK(hidim::generate_data(config, 3).values() == (data.values().array() + 2.0).matrix());

  SimConfig big = small_config();
  big.n = 10000;
  big.p = 10;
  const auto g = hidim::generate_data(big, 0);
  const double count = static_cast<double>(g.values().size());
  const double mean = g.values().mean();
  const double var = (g.values().array() - mean).square().sum() / count;
  CHECK(std::abs(mean) < 4 / std::sqrt(count));
  CHECK(std::abs(var - 1) < 0.05);
}

TEST_CASE("truncate_centralize") {
  Eigen::MatrixXd x(2, 4);
  x << 1, -1, 0.5, 2, -0.5, 0, 1.5, -2;
  const hidim::DataMatrix data(x);
  // Bound sqrt(4) * 10 is far above every entry: output is a standardized copy.
  const auto plain = hidim::truncate_centralize(data, 10.0);
  CHECK(plain.truncated == 0);
  const double mean = x.mean();
  const double sd = std::sqrt((x.array() - mean).square().mean());
  CHECK(plain.shift == doctest::Approx(mean));
  CHECK(plain.scale == doctest::Approx(sd));
  CHECK(((plain.data.values().array() - (x.array() - mean) / sd).abs() < 1e-14).all());

  const auto &v = plain.data.values();
  CHECK(std::abs(v.mean()) < 1e-12);
  CHECK(std::abs(v.array().square().mean() - 1) < 1e-12);

  Eigen::MatrixXd outlier = x;
  outlier(1, 2) = 1e6;
  const auto clamped = hidim::truncate_centralize(hidim::DataMatrix(outlier), 1.5);
  CHECK(clamped.truncated == 1);
  Eigen::MatrixXd zeroed = outlier;
  zeroed(1, 2) = 0;
  const double zmean = zeroed.mean();
  const double zsd = std::sqrt((zeroed.array() - zmean).square().mean());
  CHECK(clamped.data.values()(1, 2) == doctest::Approx(-zmean / zsd));
  const double bound = 1.5 * std::sqrt(4.0);
  CHECK((clamped.data.values().array().abs() <= 2 * bound / zsd).all());

  CHECK_THROWS_AS(hidim::truncate_centralize(hidim::DataMatrix(Eigen::MatrixXd::Constant(2, 3, 5.0)), 1.0),
                  hidim::DataError);
  CHECK_THROWS_AS(hidim::truncate_centralize(data, 0.0), hidim::DomainError);
}

TEST_CASE("KS statistic is exact") {
  CHECK(hidim::ks_statistic_normal({0.0}) == doctest::Approx(0.5));
  CHECK(hidim::ks_statistic_normal({0.0, 0.0}) == doctest::Approx(0.5));
  const double x = 1.3;
  CHECK(hidim::ks_statistic_normal({x}) == doctest::Approx(hidim::normal_cdf(x)));
  // Two points: candidates Phi(a), 1/2 - Phi(a), Phi(b) - 1/2, 1 - Phi(b).
  const double a = -0.2;
  const double b = 0.9;
  const double expected =
      std::max({hidim::normal_cdf(a), 0.5 - hidim::normal_cdf(a), hidim::normal_cdf(b) - 0.5,
                1 - hidim::normal_cdf(b)});
  CHECK(hidim::ks_statistic_normal({b, a}) == doctest::Approx(expected).epsilon(1e-14));
  std::vector<double> quantiles;
  for (int i = 1; i <= 999; ++i) {
    // Phi^{-1}(i/1000) by bisection on the library CDF's complement-free form.
    double lo = -10;
    double hi = 10;
    for (int k = 0; k < 200; ++k) {
      const double mid = 0.5 * (lo + hi);
      (0.5 * std::erfc(-mid / std::sqrt(2.0)) < i / 1000.0 ? lo : hi) = mid;
    }
    quantiles.push_back(lo);
  }
  CHECK(hidim::ks_statistic_normal(quantiles) == doctest::Approx(1.0 / 999 * 1.0).epsilon(0.01));
  CHECK(hidim::ks_statistic_normal({}) == 0.0);
}

TEST_CASE("T2 experiment under the null") {
  SimConfig config = small_config();
  config.mean_shift = {0.7};
  const auto report = hidim::run_t2_experiment(config, 1);
  CHECK(report.zscores.size() == 200);
  CHECK(report.failed_replicates == 0);
  CHECK(std::abs(report.sample_mean_of_z) < 0.3);
  CHECK(report.sample_var_of_z > 0.6);
  CHECK(report.sample_var_of_z < 1.5);
  CHECK(report.ks_statistic >= 0.0);
  CHECK(report.ks_statistic <= 1.0);

  // Each zscore is the standardized T^2 of the corresponding replicate.
  const auto data = hidim::generate_data(config, 5);
  const double t2 = hidim::hotelling_t2(data, config.mean_vector());
  CHECK(report.zscores[5] == hidim::standardize_t2(t2, 100, 25).zscore);

  config.replicates = 1;
  const auto single = hidim::run_t2_experiment(config, 1);
  CHECK(single.zscores.size() == 1);
  CHECK(single.ks_statistic > 0.0);

  config.p = 100;
  CHECK_THROWS_AS(hidim::run_t2_experiment(config, 1), hidim::DataError);
}

TEST_CASE("experiments are independent of the thread count") {
  SimConfig config = small_config(EntryDistribution::shifted_exponential(), 11);
  config.replicates = 40;
  const auto one = hidim::run_t2_experiment(config, 1);
  const auto three = hidim::run_t2_experiment(config, 3);
  CHECK(one.zscores == three.zscores);
  CHECK(one.ks_statistic == three.ks_statistic);

  const std::vector<hidim::ComplexPoint> zs = {{1, 1}, {2, -1}};
  const auto c1 = hidim::estimate_process_covariance(config, zs, 1);
  const auto c4 = hidim::estimate_process_covariance(config, zs, 4);
  CHECK(c1.values == c4.values);
  CHECK(hidim::run_mean_norm_experiment(config, 1).zscores ==
        hidim::run_mean_norm_experiment(config, 2).zscores);
}

TEST_CASE("bilinear experiment") {
  SimConfig config = small_config();
  config.replicates = 30;
  const auto flat = hidim::run_bilinear_experiment(config, [](double) { return 1.0; }, 1);
  for (double z : flat.zscores) {
    CHECK(std::abs(z) < 1e-10);
  }
  REQUIRE(flat.reference_variance.has_value());
  CHECK(std::abs(*flat.reference_variance) < 1e-12);

  config.replicates = 200;
  const auto linear = hidim::run_bilinear_experiment(config, [](double x) { return x; }, 1);
  REQUIRE(linear.reference_variance.has_value());
  CHECK(std::abs(*linear.reference_variance - hidim::theorem2_variance(0.25, [](double x) { return x; })) < 1e-12);
  REQUIRE(linear.raw_variance.has_value());
  CHECK(*linear.raw_variance / *linear.reference_variance > 0.6);
  CHECK(*linear.raw_variance / *linear.reference_variance < 1.5);
}

TEST_CASE("mean-norm experiment") {
  SimConfig config = small_config();
  const auto report = hidim::run_mean_norm_experiment(config, 1);
  CHECK(report.zscores.size() == 200);
  CHECK(std::abs(report.sample_mean_of_z) < 0.3);
  CHECK(report.sample_var_of_z > 0.6);
  CHECK(report.sample_var_of_z < 1.5);
  CHECK(report.zscores == hidim::run_mean_norm_experiment(config, 1).zscores);
  config.mean_shift = {0.1};
  CHECK_THROWS_AS(hidim::run_mean_norm_experiment(config, 1), hidim::DataError);
}

TEST_CASE("process covariance estimate") {
  SimConfig config = small_config();
  config.n = 80;
  config.p = 40;
  const std::vector<hidim::ComplexPoint> zs = {{1, 1}, {1, -1}, {2, 1}};
  const auto small = hidim::estimate_process_covariance(config, zs, 1);
  CHECK(small.replicates == 200);
  CHECK(small.values.rows() == 3);
  // E[X X] is symmetric, and z_1 = conj(z_0) makes entries conjugate pairs.
  CHECK((small.values - small.values.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(small.values(0, 0) - std::conj(small.values(1, 1))) < 1e-10);
  CHECK(std::abs(small.values(0, 1).imag()) < 1e-10);

  config.replicates = 400;
  const auto large = hidim::estimate_process_covariance(config, zs, 1);
  const double ratio = large.standard_errors.sum() / small.standard_errors.sum();
  CHECK(ratio > 0.5);
  CHECK(ratio < 0.9);

  const std::vector<hidim::ComplexPoint> near_axis = {{1, 0.2}};
  CHECK_THROWS_AS(hidim::estimate_process_covariance(config, near_axis, 1), hidim::DomainError);
}
