#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "hidim/cli.hpp"
#include "hidim/csv.hpp"
#include "hidim/errors.hpp"
#include "hidim/report.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using hidim::CsvLayout;
using hidim::DataMatrix;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("hidim_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string &name, const std::string &text) const {
    const fs::path file = path / name;
    std::ofstream(file) << text;
    return file;
  }
};

std::string gaussian_csv(int rows, int cols, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  std::ostringstream text;
  text.precision(17);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      text << (j ? "," : "") << normal(gen);
    }
    text << "\n";
  }
  return text.str();
}

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = hidim::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string error_of(std::string_view text, const CsvLayout &layout = {}) {
  try {
    hidim::parse_csv(text, layout);
  } catch (const hidim::DataError &e) {
    return e.what();
  }
  return "";
}

} // namespace

TEST_CASE("CSV parsing layouts") {
  const auto rows = hidim::parse_csv("1,2,3\n4,5,6\n");
  CHECK(rows.p() == 3);
  CHECK(rows.n() == 2);
  CHECK(rows.values()(2, 1) == 6.0);

  CsvLayout columns;
  columns.orientation = CsvLayout::Orientation::columns_are_observations;
  const auto cols = hidim::parse_csv("1,2,3\n4,5,6\n", columns);
  CHECK(cols.p() == 2);
  CHECK(cols.n() == 3);
  CHECK(cols.values()(1, 0) == 4.0);

  CsvLayout header;
  header.has_header = true;
  header.delimiter = ';';
  const auto named = hidim::parse_csv("a;b\n1.5;-2e-3\n 3 ; 4\n", header);
  CHECK(named.p() == 2);
  CHECK(named.n() == 2);
  CHECK(named.values()(1, 0) == -2e-3);
  CHECK(named.values()(0, 1) == 3.0);
  CHECK(hidim::parse_csv("1,2\r\n3,4\r\n\n").n() == 2);
}

TEST_CASE("CSV parsing errors carry distinct messages") {
  const std::string ragged = error_of("1,2\n3\n");
  const std::string word = error_of("1,2\n3,abc\n");
  const std::string nonfinite = error_of("1,2\n3,inf\n");
  const std::string empty = error_of("\n\n");
  CHECK(ragged.find("line 2") != std::string::npos);
  CHECK(word.find("line 2") != std::string::npos);
  CHECK(word.find("column 2") != std::string::npos);
  CHECK(word.find("abc") != std::string::npos);
  CHECK(nonfinite.find("finite") != std::string::npos);
  CHECK_FALSE(empty.empty());
  CHECK(ragged != word);
  CHECK(word != nonfinite);
  CHECK(nonfinite != empty);
  CHECK_THROWS_AS(hidim::read_csv("/nonexistent/file.csv"), hidim::DataError);
}

TEST_CASE("CSV round trip") {
  const DataMatrix data(oracle::lcg_matrix(4, 9, 3) * 1e-3);
  CHECK(hidim::parse_csv(hidim::write_csv(data)) == data);
  CsvLayout layout;
  layout.orientation = CsvLayout::Orientation::columns_are_observations;
  layout.delimiter = '\t';
  layout.has_header = true;
  CHECK(hidim::parse_csv(hidim::write_csv(data, layout), layout) == data);
}

TEST_CASE("parse_complex") {
  using hidim::cli::parse_complex;
  CHECK(parse_complex("1+1i") == hidim::ComplexPoint(1, 1));
  CHECK(parse_complex("2-0.5i") == hidim::ComplexPoint(2, -0.5));
  CHECK(parse_complex("-3") == hidim::ComplexPoint(-3, 0));
  CHECK(parse_complex("2i") == hidim::ComplexPoint(0, 2));
  CHECK(parse_complex("i") == hidim::ComplexPoint(0, 1));
  CHECK(parse_complex("-i") == hidim::ComplexPoint(0, -1));
  CHECK(parse_complex("1e-3+2j") == hidim::ComplexPoint(1e-3, 2));
  CHECK_THROWS(parse_complex("one"));
  CHECK_THROWS(parse_complex(""));
  const hidim::ComplexPoint z{0.1, -7.25};
  CHECK(parse_complex(hidim::cli::format_complex(z)) == z);
}

TEST_CASE("cmd_test end to end") {
  TempDir tmp;
  const auto file = tmp.write("gauss.csv", gaussian_csv(100, 2, 5));
  hidim::cli::TestOptions options;
  options.csv_path = file;
  const auto outcome = hidim::cli::cmd_test(options);
  CHECK(outcome.report.p == 2);
  CHECK(outcome.report.n == 100);
  CHECK(outcome.report.c_n == 0.02);
  CHECK(outcome.report.p_value >= 0.0);
  CHECK(outcome.report.p_value <= 1.0);

  // Same statistic computed directly.
  const auto data = hidim::read_csv(file);
  const double t2 = hidim::hotelling_t2(data, Eigen::VectorXd::Zero(2));
  CHECK(outcome.report.t2 == t2);

  // Scalar mu0 broadcasts; an explicit vector of zeros gives the same result.
  options.mu0 = {0.0, 0.0};
  CHECK(hidim::cli::cmd_test(options).report.t2 == t2);
  options.mu0 = {0.0, 0.0, 0.0};
  CHECK_THROWS(hidim::cli::cmd_test(options));

  const auto three = tmp.write("three.csv", gaussian_csv(20, 3, 6));
  hidim::cli::TestOptions broadcast;
  broadcast.csv_path = three;
  broadcast.mu0 = {0.0};
  CHECK(hidim::cli::cmd_test(broadcast).report.t2 ==
        hidim::hotelling_t2(hidim::read_csv(three), Eigen::VectorXd::Zero(3)));

  const auto result = run({"test", file.string()});
  CHECK(result.code == 0);
  CHECK(result.out.find("p-value") != std::string::npos);

  const auto out = tmp.path / "report.json";
  CHECK(run({"test", file.string(), "--out", out.string()}).code == 0);
  const auto envelope = hidim::parse_envelope(hidim::read_text_file(out));
  CHECK(envelope.command == "test");
  CHECK(envelope.schema_version == hidim::kSchemaVersion);
  CHECK(hidim::test_report_from_json(envelope.payload).t2 == t2);
}

TEST_CASE("cmd_test input errors exit with code 2") {
  TempDir tmp;
  const auto wide = tmp.write("wide.csv", gaussian_csv(5, 10, 1));
  const auto result = run({"test", wide.string()});
  CHECK(result.code == 2);
  CHECK(result.err.find("rank deficient") != std::string::npos);

  const auto missing = run({"test", (tmp.path / "missing.csv").string()});
  CHECK(missing.code == 2);
  const auto ragged = run({"test", tmp.write("ragged.csv", "1,2\n3\n").string()});
  CHECK(ragged.code == 2);
  const auto text = run({"test", tmp.write("text.csv", "1,2\nx,3\n").string()});
  CHECK(text.code == 2);
  CHECK(missing.err != ragged.err);
  CHECK(ragged.err != text.err);
}

TEST_CASE("report envelopes round trip") {
  const nlohmann::json payload = {{"value", 1.25}, {"runtime_seconds", 3.0}, {"nested", {{"runtime_seconds", 1.0}}}};
  const auto envelope = hidim::make_envelope("demo", "inputs", payload);
  CHECK(hidim::parse_envelope(hidim::serialize(envelope)) == envelope);
  CHECK(envelope.inputs_digest == hidim::sha256_hex("inputs"));
  nlohmann::json later = payload;
  later["runtime_seconds"] = 9.0;
  later["nested"]["runtime_seconds"] = 4.0;
  CHECK(hidim::make_envelope("demo", "inputs", later).payload_digest == envelope.payload_digest);
  later["value"] = 1.5;
  CHECK(hidim::make_envelope("demo", "inputs", later).payload_digest != envelope.payload_digest);
  // Standard SHA-256 test vector.
  CHECK(hidim::sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK_THROWS(hidim::parse_envelope("{not json"));
}

TEST_CASE("cmd_simulate is reproducible") {
  hidim::cli::SimulateOptions options;
  options.experiment = "t2";
  options.config.n = 60;
  options.config.p = 15;
  options.config.replicates = 20;
  options.config.seed = 3;
  const auto first = hidim::cli::cmd_simulate(options);
  const auto second = hidim::cli::cmd_simulate(options);
  CHECK(first.envelope.payload_digest == second.envelope.payload_digest);
  CHECK(first.report.zscores == second.report.zscores);
  const auto back = hidim::sim_report_from_json(first.envelope.payload);
  CHECK(back.zscores == first.report.zscores);
  CHECK(back.config == options.config);

  options.experiment = "process-cov";
  const auto cov = hidim::cli::cmd_simulate(options);
  CHECK(cov.envelope.payload.contains("theoretical_cov"));
  REQUIRE(cov.report.empirical_cov.has_value());
  const auto cov_back = hidim::sim_report_from_json(cov.envelope.payload);
  REQUIRE(cov_back.empirical_cov.has_value());
  CHECK(cov_back.empirical_cov->values == cov.report.empirical_cov->values);

  options.experiment = "nope";
  CHECK_THROWS(hidim::cli::cmd_simulate(options));

  const auto a = run({"simulate", "mean-norm", "--n", "60", "--p", "30", "--reps", "10", "--seed", "4", "--json"});
  const auto b = run({"simulate", "mean-norm", "--n", "60", "--p", "30", "--reps", "10", "--seed", "4", "--json"});
  CHECK(a.code == 0);
  CHECK(hidim::parse_envelope(a.out).payload_digest == hidim::parse_envelope(b.out).payload_digest);

  CHECK(run({"simulate", "t2", "--dist", "student_t", "--df", "4", "--seed", "1"}).code == 2);
  CHECK(run({"simulate", "t2", "--dist", "cauchy", "--seed", "1"}).code == 2);
}

TEST_CASE("simulate reads a config file") {
  TempDir tmp;
  hidim::SimConfig config;
  config.n = 50;
  config.p = 10;
  config.replicates = 5;
  config.seed = 8;
  config.dist = hidim::EntryDistribution::rademacher();
  const auto file = tmp.write("config.json", hidim::to_json(config).dump());
  const auto result = run({"simulate", "t2", "--config", file.string(), "--json"});
  REQUIRE(result.code == 0);
  const auto report = hidim::sim_report_from_json(hidim::parse_envelope(result.out).payload);
  CHECK(report.config == config);
  CHECK(report.zscores.size() == 5);
}

TEST_CASE("mp-eval") {
  hidim::cli::MpEvalOptions options;
  options.c = 0.5;
  options.what = "integral";
  options.function = "inv_x";
  const auto integral = hidim::cli::cmd_mp_eval(options);
  CHECK(std::abs(integral.payload["rows"][0]["value"].get<double>() - 2.0) < 1e-10);

  options.c = 0.25;
  options.what = "density";
  options.xs = {0.1};
  CHECK(hidim::cli::cmd_mp_eval(options).payload["rows"][0]["value"].get<double>() == 0.0);

  options.c = 0.5;
  options.what = "m";
  options.zs = {{1, 1}};
  const auto m = hidim::cli::cmd_mp_eval(options);
  CHECK(m.payload["rows"][0]["residual"].get<double>() < 1e-12);

  CHECK(run({"mp-eval", "--c", "0.5", "integral", "--f", "inv_x"}).code == 0);
  CHECK(run({"mp-eval", "--c", "0.5", "m", "--z", "1"}).code == 2);
  CHECK(run({"mp-eval", "--c", "-1", "density", "--x", "1"}).code == 2);
  CHECK(run({"mp-eval", "--c", "0.5", "integral", "--f", "tan"}).code == 2);
}

TEST_CASE("verify-identities") {
  const auto table = hidim::cli::verify_identities({});
  CHECK_FALSE(table.rows.empty());
  CHECK_FALSE(table.any_failure());
  CHECK_FALSE(table.any_domain_error());
  for (const auto &row : table.rows) {
    CHECK(row.residual < row.threshold);
  }

  CHECK(run({"verify-identities"}).code == 0);
  const auto strict = run({"verify-identities", "--max-resid", "1e-30"});
  CHECK(strict.code == 3);
  CHECK(strict.err.find("fail") != std::string::npos);
  const auto inside = run({"verify-identities", "--c", "0.5", "--z", "1", "--z", "1+1i"});
  CHECK(inside.code == 2);
  CHECK(run({"bogus"}).code == 2);
}
