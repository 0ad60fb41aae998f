#ifndef HIDIM_CLI_HPP_
#define HIDIM_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hidim/clt_inference.hpp"
#include "hidim/csv.hpp"
#include "hidim/montecarlo.hpp"
#include "hidim/report.hpp"

namespace hidim::cli {

// Stable across subcommands.
enum ExitCode : int {
  kSuccess = 0,
  kInternalError = 1,
  kInputError = 2,
  kVerificationFailure = 3,
};

// "1+1i", "2-0.5i", "-3", "2i", "i" (a trailing j is accepted too).
ComplexPoint parse_complex(std::string_view text);
std::string format_complex(ComplexPoint z);

// one, x, x2, inv_x, inv_x2, log, sqrt
RealFunction named_function(std::string_view name);

struct TestOptions {
  std::filesystem::path csv_path;
  std::vector<double> mu0{0.0}; // length 1 broadcasts
  CsvLayout layout;
  Alternative alternative = Alternative::two_sided;
};

struct TestOutcome {
  TestReport report;
  ReportEnvelope envelope;
};

TestOutcome cmd_test(const TestOptions &options);

struct SimulateOptions {
  std::string experiment; // t2 | bilinear | mean-norm | process-cov
  SimConfig config;
  std::string function = "x"; // bilinear only
  std::vector<ComplexPoint> zpoints{{1.0, 1.0}, {2.0, 1.0}}; // process-cov only
  unsigned threads = 0;
};

struct SimulateOutcome {
  SimReport report;
  ReportEnvelope envelope;
};

SimulateOutcome cmd_simulate(const SimulateOptions &options);

struct MpEvalOptions {
  double c = 0.5;
  std::string what; // density | cdf | m | mdot | integral
  std::vector<double> xs;
  std::vector<ComplexPoint> zs;
  std::string function = "x";
};

ReportEnvelope cmd_mp_eval(const MpEvalOptions &options);

struct IdentityRow {
  std::string check;
  double c = 0.0;
  ComplexPoint z1;
  std::optional<ComplexPoint> z2;
  double residual = 0.0;
  double threshold = 0.0;
  std::string status; // pass | fail | domain_error
  std::string message;
};

struct IdentityTable {
  std::vector<IdentityRow> rows;
  bool any_failure() const;
  bool any_domain_error() const;
};

// Default residual thresholds per check.
double identity_threshold(std::string_view check);

// The five-point grid used when no --z is given (25 ordered pairs).
std::vector<ComplexPoint> default_z_grid();

struct VerifyOptions {
  std::vector<double> cs{0.2, 0.5, 0.8};
  std::vector<ComplexPoint> zs = default_z_grid();
  std::optional<double> max_resid; // overrides every threshold
  std::uint64_t seed = 20240611;   // data instance for the resolvent rows
};

IdentityTable verify_identities(const VerifyOptions &options);
nlohmann::json to_json(const IdentityTable &table);

// Entry point behind the hidim-t2 executable; args exclude the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace hidim::cli

#endif // HIDIM_CLI_HPP_
