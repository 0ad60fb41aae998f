#ifndef HIDIM_REPORT_HPP_
#define HIDIM_REPORT_HPP_

#include <string>
#include <string_view>

#include <json.hpp>

#include "hidim/clt_inference.hpp"
#include "hidim/montecarlo.hpp"

namespace hidim {

// Bumped whenever any payload layout changes.
inline constexpr std::string_view kSchemaVersion = "1.0.0";

// Structured report written by every CLI command. Keys serialize in sorted
// order, so equal content always produces equal bytes.
struct ReportEnvelope {
  std::string schema_version{kSchemaVersion};
  std::string command;
  std::string inputs_digest;  // SHA-256 of the command inputs
  std::string payload_digest; // SHA-256 of the payload without runtime_seconds
  nlohmann::json payload;

  bool operator==(const ReportEnvelope &) const = default;
};

std::string sha256_hex(std::string_view bytes);

// Fills payload_digest from the payload, ignoring every runtime_seconds key.
ReportEnvelope make_envelope(std::string command, std::string_view inputs,
                             nlohmann::json payload);

std::string serialize(const ReportEnvelope &envelope);
ReportEnvelope parse_envelope(std::string_view text);

nlohmann::json to_json(const TestReport &report);
TestReport test_report_from_json(const nlohmann::json &j);

nlohmann::json to_json(const SimConfig &config);
SimConfig sim_config_from_json(const nlohmann::json &j);

nlohmann::json to_json(const EmpiricalCovariance &cov);
EmpiricalCovariance empirical_covariance_from_json(const nlohmann::json &j);

nlohmann::json to_json(const SimReport &report);
SimReport sim_report_from_json(const nlohmann::json &j);

nlohmann::json complex_to_json(ComplexPoint z);
ComplexPoint complex_from_json(const nlohmann::json &j);

} // namespace hidim

#endif // HIDIM_REPORT_HPP_
