#include "hidim/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "hidim/errors.hpp"

namespace hidim::cli {

using nlohmann::json;

namespace {

double parse_double(std::string_view text, std::string_view what) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '+') {
    body.remove_prefix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (body.empty() || ec != std::errc() || ptr != body.data() + body.size()) {
    throw DataError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return value;
}

void write_file(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write '" + path.string() + "'");
  }
  out << text;
}

Eigen::VectorXd broadcast(const std::vector<double> &values, std::size_t p, std::string_view what) {
  if (values.size() == 1) {
    return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(p), values.front());
  }
  if (values.size() != p) {
    std::ostringstream msg;
    msg << what << " has length " << values.size() << " but the data has p = " << p;
    throw DataError(msg.str());
  }
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(p));
}

} // namespace

ComplexPoint parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ') {
      s += ch;
    }
  }
  if (s.empty()) {
    throw DataError("empty complex number");
  }
  const char last = s.back();
  if (last != 'i' && last != 'j') {
    return {parse_double(s, "complex number"), 0.0};
  }
  s.pop_back();
  // Split at the last sign that is not the leading one or part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const auto imag_of = [&](std::string_view part) {
    if (part.empty() || part == "+") {
      return 1.0;
    }
    if (part == "-") {
      return -1.0;
    }
    return parse_double(part, "imaginary part");
  };
  if (split == std::string::npos) {
    return {0.0, imag_of(s)};
  }
  return {parse_double(std::string_view(s).substr(0, split), "real part"),
          imag_of(std::string_view(s).substr(split))};
}

std::string format_complex(ComplexPoint z) {
  std::ostringstream out;
  out << std::setprecision(12) << z.real() << (z.imag() < 0 ? "-" : "+")
      << std::abs(z.imag()) << "i";
  return out.str();
}

RealFunction named_function(std::string_view name) {
  if (name == "one") {
    return [](double) { return 1.0; };
  }
  if (name == "x") {
    return [](double x) { return x; };
  }
  if (name == "x2") {
    return [](double x) { return x * x; };
  }
  if (name == "inv_x") {
    return [](double x) { return 1.0 / x; };
  }
  if (name == "inv_x2") {
    return [](double x) { return 1.0 / (x * x); };
  }
  if (name == "log") {
    return [](double x) { return std::log(x); };
  }
  if (name == "sqrt") {
    return [](double x) { return std::sqrt(x); };
  }
  throw DataError("unknown function '" + std::string(name) +
                  "' (expected one, x, x2, inv_x, inv_x2, log, sqrt)");
}

// ---------------------------------------------------------------------------
// test

TestOutcome cmd_test(const TestOptions &options) {
  const std::string text = read_text_file(options.csv_path);
  const DataMatrix data = parse_csv(text, options.layout);
  if (data.p() >= data.n()) {
    std::ostringstream msg;
    msg << "need fewer variables than observations: p = " << data.p() << ", n = "
        << data.n() << " (centered covariance is rank deficient)";
    throw RankDeficiencyError(msg.str());
  }
  const Eigen::VectorXd mu0 = broadcast(options.mu0, data.p(), "mu0");
  const double t2 = hotelling_t2(data, mu0);
  TestOutcome outcome{standardize_t2(t2, data.n(), data.p(), options.alternative), {}};

  const json inputs = {
      {"csv_sha256", sha256_hex(text)},
      {"mu0", options.mu0},
      {"orientation", options.layout.orientation ==
                              CsvLayout::Orientation::rows_are_observations
                          ? "rows_are_observations"
                          : "columns_are_observations"},
      {"has_header", options.layout.has_header},
      {"delimiter", std::string(1, options.layout.delimiter)},
      {"alternative", std::string(to_string(options.alternative))}};
  outcome.envelope = make_envelope("test", inputs.dump(), to_json(outcome.report));
  return outcome;
}

// ---------------------------------------------------------------------------
// simulate

SimulateOutcome cmd_simulate(const SimulateOptions &options) {
  const SimConfig &config = options.config;
  SimReport report;
  json extra = json::object();
  if (options.experiment == "t2") {
    report = run_t2_experiment(config, options.threads);
  } else if (options.experiment == "bilinear") {
    report = run_bilinear_experiment(config, named_function(options.function), options.threads);
    extra["function"] = options.function;
  } else if (options.experiment == "mean-norm") {
    report = run_mean_norm_experiment(config, options.threads);
  } else if (options.experiment == "process-cov") {
    report = run_process_cov_experiment(config, options.zpoints, options.threads);
    const auto grid = covariance_grid(config.aspect_ratio(), options.zpoints);
    json theory = json::array();
    for (Eigen::Index i = 0; i < grid.process_values.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < grid.process_values.cols(); ++k) {
        row.push_back(complex_to_json(grid.process_values(i, k)));
      }
      theory.push_back(std::move(row));
    }
    extra["theoretical_cov"] = std::move(theory);
  } else {
    throw DataError("unknown experiment '" + options.experiment +
                    "' (expected t2, bilinear, mean-norm or process-cov)");
  }

  json payload = to_json(report);
  for (auto &item : extra.items()) {
    payload[item.key()] = item.value();
  }
  json inputs = {{"experiment", options.experiment}, {"config", to_json(config)}};
  if (options.experiment == "bilinear") {
    inputs["function"] = options.function;
  }
  if (options.experiment == "process-cov") {
    json zs = json::array();
    for (const auto &z : options.zpoints) {
      zs.push_back(complex_to_json(z));
    }
    inputs["zpoints"] = zs;
  }
  return {report, make_envelope("simulate", inputs.dump(), std::move(payload))};
}

// ---------------------------------------------------------------------------
// mp-eval

ReportEnvelope cmd_mp_eval(const MpEvalOptions &options) {
  const MpModel model(options.c);
  json rows = json::array();
  if (options.what == "density" || options.what == "cdf") {
    if (options.xs.empty()) {
      throw DataError(options.what + " needs at least one --x value");
    }
    for (double x : options.xs) {
      const double value = options.what == "density" ? density(model, x) : cdf(model, x);
      rows.push_back({{"x", x}, {"value", value}});
    }
  } else if (options.what == "m" || options.what == "mdot") {
    if (options.zs.empty()) {
      throw DataError(options.what + " needs at least one --z value");
    }
    for (const auto &z : options.zs) {
      if (options.what == "m") {
        const auto m = stieltjes_m(model, z);
        rows.push_back({{"z", complex_to_json(z)},
                        {"value", complex_to_json(m)},
                        {"residual", fixed_point_residual(model, z, m)}});
      } else {
        const auto md = companion_m(model, z);
        rows.push_back({{"z", complex_to_json(z)},
                        {"value", complex_to_json(md)},
                        {"residual", inverse_map_residual(model, z, md)}});
      }
    }
  } else if (options.what == "integral") {
    rows.push_back({{"f", options.function},
                    {"value", integral_f(model, named_function(options.function))}});
  } else {
    throw DataError("unknown mp-eval target '" + options.what + "'");
  }
  const json payload = {{"c", options.c},
                        {"a", model.lower_edge()},
                        {"b", model.upper_edge()},
                        {"atom_mass", model.atom_mass()},
                        {"what", options.what},
                        {"rows", rows}};
  json inputs = {{"c", options.c}, {"what", options.what}, {"x", options.xs},
                 {"f", options.function}};
  json zs = json::array();
  for (const auto &z : options.zs) {
    zs.push_back(complex_to_json(z));
  }
  inputs["z"] = zs;
  return make_envelope("mp-eval", inputs.dump(), payload);
}

// ---------------------------------------------------------------------------
// verify-identities

bool IdentityTable::any_failure() const {
  return std::any_of(rows.begin(), rows.end(), [](const auto &r) { return r.status == "fail"; });
}

bool IdentityTable::any_domain_error() const {
  return std::any_of(rows.begin(), rows.end(),
                     [](const auto &r) { return r.status == "domain_error"; });
}

double identity_threshold(std::string_view check) {
  if (check == "fixed_point") {
    return 1e-12;
  }
  if (check == "inverse_map" || check == "companion_reciprocal" ||
      check == "companion_quotient") {
    return 1e-10;
  }
  if (check == "resolvent" || check == "covariance_identity") {
    return 1e-9;
  }
  throw DataError("unknown identity check '" + std::string(check) + "'");
}

std::vector<ComplexPoint> default_z_grid() {
  return {{1.0, 1.0}, {2.0, 1.0}, {-1.0, 1.0}, {0.5, 0.5}, {3.0, -2.0}};
}

IdentityTable verify_identities(const VerifyOptions &options) {
  IdentityTable table;
  const auto add = [&](std::string check, double c, ComplexPoint z1,
                       std::optional<ComplexPoint> z2, const auto &compute) {
    IdentityRow row;
    row.check = std::move(check);
    row.c = c;
    row.z1 = z1;
    row.z2 = z2;
    row.threshold = options.max_resid ? *options.max_resid : identity_threshold(row.check);
    try {
      row.residual = compute();
      row.status = row.residual < row.threshold ? "pass" : "fail";
    } catch (const DomainError &e) {
      row.status = "domain_error";
      row.message = e.what();
    } catch (const SingularityError &e) {
      row.status = "domain_error";
      row.message = e.what();
    }
    table.rows.push_back(std::move(row));
  };

  for (double c : options.cs) {
    const MpModel model(c);
    SimConfig instance;
    instance.n = 100;
    instance.p = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(c * 100.0)));
    instance.seed = options.seed;
    const DataMatrix data = generate_data(instance, 0);

    for (const auto &z : options.zs) {
      add("fixed_point", c, z, std::nullopt,
          [&] { return fixed_point_residual(model, z, stieltjes_m(model, z)); });
      add("inverse_map", c, z, std::nullopt,
          [&] { return inverse_map_residual(model, z, companion_m(model, z)); });
      add("companion_reciprocal", c, z, std::nullopt,
          [&] { return companion_reciprocal_residual(c, z); });
      add("resolvent", c, z, std::nullopt, [&] {
        if (z.imag() == 0.0) {
          throw DomainError("resolvent identity rows need z off the real axis");
        }
        return resolvent_identity_check(data, z);
      });
    }
    for (const auto &z1 : options.zs) {
      for (const auto &z2 : options.zs) {
        add("covariance_identity", c, z1, z2,
            [&] { return covariance_identity_residual(c, z1, z2); });
        add("companion_quotient", c, z1, z2,
            [&] { return companion_quotient_residual(c, z1, z2); });
      }
    }
  }
  return table;
}

json to_json(const IdentityTable &table) {
  json rows = json::array();
  for (const auto &r : table.rows) {
    json row = {{"check", r.check},         {"c", r.c},
                {"z1", complex_to_json(r.z1)}, {"residual", r.residual},
                {"threshold", r.threshold}, {"status", r.status}};
    if (r.z2) {
      row["z2"] = complex_to_json(*r.z2);
    }
    if (!r.message.empty()) {
      row["message"] = r.message;
    }
    rows.push_back(std::move(row));
  }
  return {{"rows", rows}};
}

// ---------------------------------------------------------------------------
// command-line dispatch

namespace {

void emit(const ReportEnvelope &envelope, const std::string &out_path, bool json_stdout,
          std::ostream &out) {
  const std::string text = serialize(envelope);
  if (!out_path.empty()) {
    write_file(out_path, text);
  }
  if (json_stdout) {
    out << text;
  }
}

std::vector<ComplexPoint> parse_complex_list(const std::vector<std::string> &items) {
  std::vector<ComplexPoint> zs;
  zs.reserve(items.size());
  for (const auto &item : items) {
    zs.push_back(parse_complex(item));
  }
  return zs;
}

void print_test(const TestReport &r, std::ostream &out) {
  out << std::setprecision(6);
  out << "Dimension-corrected Hotelling T^2 test\n"
      << "  n = " << r.n << ", p = " << r.p << ", c_n = " << r.c_n << "\n"
      << "  T^2       = " << r.t2 << "\n"
      << "  centering = " << r.centering << "  (T^2/n limit)\n"
      << "  scaling   = " << r.scaling << "\n"
      << "  z-score   = " << r.zscore << "\n"
      << "  p-value   = " << r.p_value << "  (" << to_string(r.alternative) << ")\n";
}

void print_sim(const SimReport &r, std::ostream &out) {
  out << std::setprecision(6);
  out << "Experiment " << r.experiment << ": n = " << r.config.n << ", p = " << r.config.p
      << ", replicates = " << r.config.replicates << ", dist = " << r.config.dist.name()
      << ", seed = " << r.config.seed << "\n"
      << "  KS distance to N(0,1) = " << r.ks_statistic << "\n"
      << "  mean = " << r.sample_mean_of_z << ", variance = " << r.sample_var_of_z << "\n";
  if (r.raw_variance && r.reference_variance) {
    out << "  raw variance = " << *r.raw_variance
        << ", limiting variance = " << *r.reference_variance << "\n";
  }
  out << "  failed replicates = " << r.failed_replicates
      << ", runtime = " << r.runtime_seconds << " s\n";
}

void print_table(const json &payload, std::ostream &out) {
  out << std::setprecision(12);
  for (const auto &row : payload.at("rows")) {
    out << row.dump() << "\n";
  }
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Dimension-corrected Hotelling T^2 test for p/n -> c in (0,1), with "
               "Marchenko-Pastur tools and a Monte Carlo verification harness",
               "hidim-t2"};
  app.require_subcommand(1);

  // test
  auto *test = app.add_subcommand("test", "Run the corrected T^2 test on a CSV file");
  TestOptions test_opts;
  std::string test_csv, test_orientation = "rows", test_alt = "two_sided", test_out;
  char test_delim = ',';
  bool test_json = false;
  test->add_option("csv", test_csv, "Input CSV file")->required();
  test->add_option("--mu0", test_opts.mu0, "Hypothesized mean (scalar broadcasts)")
      ->delimiter(',');
  test->add_option("--orientation", test_orientation,
                   "rows: one observation per row (default); columns: one per column")
      ->check(CLI::IsMember({"rows", "columns"}));
  test->add_flag("--header", test_opts.layout.has_header, "First non-empty line is a header");
  test->add_option("--delimiter", test_delim, "Cell delimiter (default ',')");
  test->add_option("--alternative", test_alt, "two_sided (default), greater or less");
  test->add_option("--out", test_out, "Write the structured report to this path");
  test->add_flag("--json", test_json, "Print the structured report instead of a summary");

  // simulate
  auto *sim = app.add_subcommand("simulate", "Run a Monte Carlo experiment");
  SimulateOptions sim_opts;
  std::string sim_config_path, sim_dist = "gaussian", sim_out;
  std::size_t sim_n = 400, sim_p = 100, sim_reps = 2000;
  int sim_df = 0;
  std::uint64_t sim_seed = 0;
  std::vector<double> sim_shift;
  double sim_trunc = 0.0;
  std::vector<std::string> sim_z;
  bool sim_json = false;
  sim->add_option("experiment", sim_opts.experiment, "t2 | bilinear | mean-norm | process-cov")
      ->required()
      ->check(CLI::IsMember({"t2", "bilinear", "mean-norm", "process-cov"}));
  sim->add_option("--config", sim_config_path, "JSON experiment configuration");
  auto *opt_n = sim->add_option("--n", sim_n, "Sample size");
  auto *opt_p = sim->add_option("--p", sim_p, "Dimension");
  auto *opt_reps = sim->add_option("--reps", sim_reps, "Replicates");
  auto *opt_dist = sim->add_option("--dist", sim_dist,
                                   "gaussian | rademacher | shifted_exponential | student_t");
  auto *opt_df = sim->add_option("--df", sim_df, "Degrees of freedom for student_t (> 4)");
  auto *opt_seed = sim->add_option("--seed", sim_seed, "Seed; required for reproducible runs");
  auto *opt_shift = sim->add_option("--mean-shift", sim_shift, "Entry mean (scalar broadcasts)")
                        ->delimiter(',');
  auto *opt_trunc = sim->add_option("--truncate-exponent", sim_trunc,
                                    "Truncate at n^{-e} sqrt(n) before T^2 (t2 only)");
  sim->add_option("--f", sim_opts.function, "Bilinear function: one, x, x2, inv_x, inv_x2, log, sqrt");
  sim->add_option("--z", sim_z, "Process-covariance points, e.g. 1+1i,2+1i")->delimiter(',');
  sim->add_option("--threads", sim_opts.threads, "Worker threads (0 = all; capped by HIDIM_T2_THREADS)");
  sim->add_option("--out", sim_out, "Write the structured report to this path");
  sim->add_flag("--json", sim_json, "Print the structured report instead of a summary");

  // mp-eval
  auto *mp = app.add_subcommand("mp-eval", "Evaluate Marchenko-Pastur quantities");
  MpEvalOptions mp_opts;
  std::string mp_out;
  bool mp_json = false;
  std::vector<std::string> mp_z;
  mp->add_option("--c", mp_opts.c, "Aspect ratio c > 0")->required();
  mp->add_option("--out", mp_out, "Write the structured report to this path");
  mp->add_flag("--json", mp_json, "Print the structured report instead of a table");
  mp->require_subcommand(1);
  for (const char *what : {"density", "cdf"}) {
    auto *sub = mp->add_subcommand(what, std::string("Tabulate the ") + what);
    sub->add_option("--x", mp_opts.xs, "Evaluation points")->delimiter(',')->required();
  }
  for (const char *what : {"m", "mdot"}) {
    auto *sub = mp->add_subcommand(what, std::string("Tabulate the transform ") + what);
    sub->add_option("--z", mp_z, "Complex points, e.g. 1+1i")->delimiter(',')->required();
  }
  auto *integral = mp->add_subcommand("integral", "Integrate a named function against F_c");
  integral->add_option("--f", mp_opts.function, "one, x, x2, inv_x, inv_x2, log, sqrt")
      ->required();

  // verify-identities
  auto *verify = app.add_subcommand("verify-identities",
                                    "Check the analytic identities on a (c, z) grid");
  VerifyOptions verify_opts;
  std::vector<std::string> verify_z;
  std::string verify_out;
  bool verify_json = false;
  verify->add_option("--c", verify_opts.cs, "Aspect ratios")->delimiter(',');
  verify->add_option("--z", verify_z, "z grid, e.g. 1+1i,2+1i")->delimiter(',');
  verify->add_option("--max-resid", verify_opts.max_resid,
                     "Override every residual threshold");
  verify->add_option("--seed", verify_opts.seed, "Seed of the resolvent data instance");
  verify->add_option("--out", verify_out, "Write the structured report to this path");
  verify->add_flag("--json", verify_json, "Print the structured report instead of a table");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (test->parsed()) {
      test_opts.csv_path = test_csv;
      test_opts.layout.delimiter = test_delim;
      test_opts.layout.orientation = test_orientation == "columns"
                                         ? CsvLayout::Orientation::columns_are_observations
                                         : CsvLayout::Orientation::rows_are_observations;
      test_opts.alternative = parse_alternative(test_alt);
      const auto outcome = cmd_test(test_opts);
      if (!test_json) {
        print_test(outcome.report, out);
      }
      emit(outcome.envelope, test_out, test_json, out);
      return kSuccess;
    }

    if (sim->parsed()) {
      SimConfig config;
      bool have_seed = false;
      if (!sim_config_path.empty()) {
        const json j = json::parse(read_text_file(sim_config_path));
        config = sim_config_from_json(j);
        have_seed = j.contains("seed");
      } else {
        config.n = sim_n;
        config.p = sim_p;
        config.replicates = sim_reps;
      }
      if (opt_n->count() > 0) {
        config.n = sim_n;
      }
      if (opt_p->count() > 0) {
        config.p = sim_p;
      }
      if (opt_reps->count() > 0) {
        config.replicates = sim_reps;
      }
      if (opt_dist->count() > 0 || opt_df->count() > 0) {
        config.dist = EntryDistribution::parse(
            opt_dist->count() > 0 ? sim_dist : config.dist.name(), sim_df);
      }
      if (opt_shift->count() > 0) {
        config.mean_shift = sim_shift;
      }
      if (opt_trunc->count() > 0) {
        config.truncation = TruncationOptions{sim_trunc};
      }
      if (opt_seed->count() > 0) {
        config.seed = sim_seed;
        have_seed = true;
      }
      if (!have_seed) {
        std::random_device device;
        config.seed = (static_cast<std::uint64_t>(device()) << 32) | device();
        err << "note: no --seed given; using seed " << config.seed
            << " (pass it back with --seed to reproduce this run)\n";
      }
      config.validate();
      sim_opts.config = config;
      if (!sim_z.empty()) {
        sim_opts.zpoints = parse_complex_list(sim_z);
      }
      const auto outcome = cmd_simulate(sim_opts);
      if (!sim_json) {
        print_sim(outcome.report, out);
      }
      emit(outcome.envelope, sim_out, sim_json, out);
      return kSuccess;
    }

    if (mp->parsed()) {
      for (const auto *sub : mp->get_subcommands()) {
        mp_opts.what = sub->get_name();
      }
      mp_opts.zs = parse_complex_list(mp_z);
      const auto envelope = cmd_mp_eval(mp_opts);
      if (!mp_json) {
        print_table(envelope.payload, out);
      }
      emit(envelope, mp_out, mp_json, out);
      return kSuccess;
    }

    if (verify->parsed()) {
      if (!verify_z.empty()) {
        verify_opts.zs = parse_complex_list(verify_z);
      }
      const auto table = verify_identities(verify_opts);
      json inputs = {{"c", verify_opts.cs}, {"seed", verify_opts.seed}};
      json zs = json::array();
      for (const auto &z : verify_opts.zs) {
        zs.push_back(complex_to_json(z));
      }
      inputs["z"] = zs;
      if (verify_opts.max_resid) {
        inputs["max_resid"] = *verify_opts.max_resid;
      }
      const auto envelope = make_envelope("verify-identities", inputs.dump(), to_json(table));
      if (!verify_json) {
        std::size_t passed = 0;
        for (const auto &row : table.rows) {
          passed += row.status == "pass" ? 1 : 0;
        }
        out << passed << " of " << table.rows.size() << " identity checks passed\n";
      }
      emit(envelope, verify_out, verify_json, out);
      for (const auto &row : table.rows) {
        if (row.status != "pass") {
          err << row.status << ": " << row.check << " c = " << row.c
              << " z1 = " << format_complex(row.z1);
          if (row.z2) {
            err << " z2 = " << format_complex(*row.z2);
          }
          err << " residual = " << row.residual << " threshold = " << row.threshold;
          if (!row.message.empty()) {
            err << " (" << row.message << ")";
          }
          err << "\n";
        }
      }
      if (table.any_domain_error()) {
        return kInputError;
      }
      return table.any_failure() ? kVerificationFailure : kSuccess;
    }
  } catch (const json::exception &e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DataError &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const SingularityError &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const EvaluationError &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ConvergenceError &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ExperimentError &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInputError;
}

} // namespace hidim::cli
