#include "hidim/report.hpp"

#include <array>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "hidim/errors.hpp"

namespace hidim {

using nlohmann::json;

namespace {

void strip_runtime(json &j) {
  if (j.is_object()) {
    j.erase("runtime_seconds");
    for (auto &item : j.items()) {
      strip_runtime(item.value());
    }
  } else if (j.is_array()) {
    for (auto &item : j) {
      strip_runtime(item);
    }
  }
}

json matrix_to_json(const Eigen::MatrixXcd &m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(complex_to_json(m(i, k)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrix_to_json(const Eigen::MatrixXd &m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(m(i, k));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream hex;
  hex << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::setw(2) << static_cast<int>(digest[i]);
  }
  return hex.str();
}

ReportEnvelope make_envelope(std::string command, std::string_view inputs, json payload) {
  ReportEnvelope env;
  env.command = std::move(command);
  env.inputs_digest = sha256_hex(inputs);
  json stripped = payload;
  strip_runtime(stripped);
  env.payload_digest = sha256_hex(stripped.dump());
  env.payload = std::move(payload);
  return env;
}

std::string serialize(const ReportEnvelope &envelope) {
  json j;
  j["schema_version"] = envelope.schema_version;
  j["command"] = envelope.command;
  j["inputs_digest"] = envelope.inputs_digest;
  j["payload_digest"] = envelope.payload_digest;
  j["payload"] = envelope.payload;
  return j.dump(2) + "\n";
}

ReportEnvelope parse_envelope(std::string_view text) {
  const json j = json::parse(text);
  ReportEnvelope env;
  env.schema_version = j.at("schema_version").get<std::string>();
  env.command = j.at("command").get<std::string>();
  env.inputs_digest = j.at("inputs_digest").get<std::string>();
  env.payload_digest = j.at("payload_digest").get<std::string>();
  env.payload = j.at("payload");
  return env;
}

json complex_to_json(ComplexPoint z) { return json::array({z.real(), z.imag()}); }

ComplexPoint complex_from_json(const json &j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json to_json(const TestReport &r) {
  return {{"t2", r.t2},           {"n", r.n},
          {"p", r.p},             {"c_n", r.c_n},
          {"centering", r.centering}, {"scaling", r.scaling},
          {"zscore", r.zscore},   {"p_value", r.p_value},
          {"alternative", std::string(to_string(r.alternative))}};
}

TestReport test_report_from_json(const json &j) {
  TestReport r;
  r.t2 = j.at("t2").get<double>();
  r.n = j.at("n").get<std::size_t>();
  r.p = j.at("p").get<std::size_t>();
  r.c_n = j.at("c_n").get<double>();
  r.centering = j.at("centering").get<double>();
  r.scaling = j.at("scaling").get<double>();
  r.zscore = j.at("zscore").get<double>();
  r.p_value = j.at("p_value").get<double>();
  r.alternative = parse_alternative(j.at("alternative").get<std::string>());
  return r;
}

json to_json(const SimConfig &c) {
  json j = {{"n", c.n},
            {"p", c.p},
            {"replicates", c.replicates},
            {"dist", c.dist.name()},
            {"mean_shift", c.mean_shift},
            {"seed", c.seed}};
  if (c.dist.kind == EntryDistribution::Kind::student_t) {
    j["df"] = c.dist.df;
  }
  if (c.truncation) {
    j["truncation"] = {{"epsilon_exponent", c.truncation->epsilon_exponent}};
  }
  return j;
}

SimConfig sim_config_from_json(const json &j) {
  SimConfig c;
  c.n = j.at("n").get<std::size_t>();
  c.p = j.at("p").get<std::size_t>();
  c.replicates = j.value("replicates", std::size_t{1});
  c.dist = EntryDistribution::parse(j.value("dist", std::string("gaussian")),
                                    j.value("df", 0));
  if (j.contains("mean_shift")) {
    const auto &shift = j.at("mean_shift");
    c.mean_shift = shift.is_array() ? shift.get<std::vector<double>>()
                                    : std::vector<double>{shift.get<double>()};
  }
  c.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("truncation") && !j.at("truncation").is_null()) {
    c.truncation = TruncationOptions{
        j.at("truncation").value("epsilon_exponent", TruncationOptions{}.epsilon_exponent)};
  }
  return c;
}

json to_json(const EmpiricalCovariance &cov) {
  json points = json::array();
  for (const auto &z : cov.zpoints) {
    points.push_back(complex_to_json(z));
  }
  return {{"zpoints", points},
          {"values", matrix_to_json(cov.values)},
          {"standard_errors", matrix_to_json(cov.standard_errors)},
          {"replicates", cov.replicates}};
}

EmpiricalCovariance empirical_covariance_from_json(const json &j) {
  EmpiricalCovariance cov;
  for (const auto &z : j.at("zpoints")) {
    cov.zpoints.push_back(complex_from_json(z));
  }
  const auto k = static_cast<Eigen::Index>(cov.zpoints.size());
  cov.values.resize(k, k);
  cov.standard_errors.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index m = 0; m < k; ++m) {
      cov.values(i, m) = complex_from_json(j.at("values").at(i).at(m));
      cov.standard_errors(i, m) = j.at("standard_errors").at(i).at(m).get<double>();
    }
  }
  cov.replicates = j.at("replicates").get<std::size_t>();
  return cov;
}

json to_json(const SimReport &r) {
  json j = {{"experiment", r.experiment},
            {"config", to_json(r.config)},
            {"zscores", r.zscores},
            {"ks_statistic", r.ks_statistic},
            {"sample_mean_of_z", r.sample_mean_of_z},
            {"sample_var_of_z", r.sample_var_of_z},
            {"failed_replicates", r.failed_replicates},
            {"runtime_seconds", r.runtime_seconds}};
  if (r.raw_variance) {
    j["raw_variance"] = *r.raw_variance;
  }
  if (r.reference_variance) {
    j["reference_variance"] = *r.reference_variance;
  }
  if (r.empirical_cov) {
    j["empirical_cov"] = to_json(*r.empirical_cov);
  }
  return j;
}

SimReport sim_report_from_json(const json &j) {
  SimReport r;
  r.experiment = j.at("experiment").get<std::string>();
  r.config = sim_config_from_json(j.at("config"));
  r.zscores = j.at("zscores").get<std::vector<double>>();
  r.ks_statistic = j.at("ks_statistic").get<double>();
  r.sample_mean_of_z = j.at("sample_mean_of_z").get<double>();
  r.sample_var_of_z = j.at("sample_var_of_z").get<double>();
  r.failed_replicates = j.at("failed_replicates").get<std::size_t>();
  r.runtime_seconds = j.at("runtime_seconds").get<double>();
  if (j.contains("raw_variance")) {
    r.raw_variance = j.at("raw_variance").get<double>();
  }
  if (j.contains("reference_variance")) {
    r.reference_variance = j.at("reference_variance").get<double>();
  }
  if (j.contains("empirical_cov")) {
    r.empirical_cov = empirical_covariance_from_json(j.at("empirical_cov"));
  }
  return r;
}

} // namespace hidim
