// morrey: command-line front end for discrete Morrey norms and the geometric
// constants of l^p_q(Z^d).
//
// Exit codes: 0 success / verified, 1 verification failed, 2 usage or
// validation error. stdout carries exactly one JSON document.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "morrey/constants.hpp"
#include "morrey/json_io.hpp"
#include "morrey/norm.hpp"
#include "morrey/search.hpp"
#include "morrey/version.hpp"
#include "morrey/witness.hpp"

namespace {

using morrey::Json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct CliConfig {
  std::string p = "1";
  std::string q = "2";
  int n = 3;
  int d = 1;
  std::optional<int> d_flag;
  std::string mode = "exact";
  bool exact_flag = false;
  std::optional<std::int64_t> j;
  std::string input;
  std::string output;
  std::int64_t budget = 1000;
  int support_cap = 8;
  std::uint64_t seed = 0;
  std::string kind = "james";
  bool include_witness = false;
  int threads = 1;
};

morrey::Mode resolve_mode(const CliConfig& config) {
  if (config.exact_flag && config.mode == "float") throw morrey::ValidationError("--exact conflicts with --mode float");
  return config.mode == "float" ? morrey::Mode::kFloat : morrey::Mode::kExact;
}

morrey::DecimalPolicy decimals_for(morrey::Mode mode) {
  return mode == morrey::Mode::kFloat ? morrey::DecimalPolicy::kAllow : morrey::DecimalPolicy::kReject;
}

morrey::SpaceParams space_params(const CliConfig& config, int d) {
  const morrey::Mode mode = resolve_mode(config);
  return {morrey::parse_rational(config.p, decimals_for(mode)), morrey::parse_rational(config.q, decimals_for(mode)),
          d, mode};
}

void print(const Json& doc) { std::cout << doc.dump(2) << '\n'; }

int cmd_norm(const CliConfig& config) {
  const morrey::Mode mode = resolve_mode(config);
  const auto x = morrey::sequence_from_json(morrey::read_json_file(config.input), decimals_for(mode));
  if (config.d_flag && *config.d_flag != x.dim()) {
    throw morrey::ValidationError("-d " + std::to_string(*config.d_flag) + " does not match the sequence's d=" +
                                  std::to_string(x.dim()));
  }
  print(morrey::norm_value_to_json(morrey::morrey_norm(x, space_params(config, x.dim()))));
  return kExitOk;
}

int cmd_witness(const CliConfig& config) {
  const auto family = morrey::build_witness(config.n, space_params(config, config.d), config.j);
  const auto dir = config.output.empty() ? std::filesystem::path("witness") : std::filesystem::path(config.output);
  const auto manifest = morrey::write_witness(family, dir);
  print(Json{{"manifest", manifest.string()}, {"n", family.n}, {"j", family.j}});
  return kExitOk;
}

int cmd_verify(const CliConfig& config) {
  const auto report = morrey::verify_theorem(config.n, space_params(config, config.d), config.j, config.threads);
  print(morrey::report_to_json(report));
  return report.verdicts.all() ? kExitOk : kExitFailed;
}

int cmd_estimate(const CliConfig& config) {
  const auto params = space_params(config, config.d);
  morrey::SearchOptions options;
  if (config.kind == "nj") {
    options.kind = morrey::ConstantKind::kNj;
  } else if (config.kind == "james") {
    options.kind = morrey::ConstantKind::kJames;
  } else {
    throw morrey::ValidationError("--kind must be 'nj' or 'james'");
  }
  options.n = config.n;
  options.support_cap = config.support_cap;
  options.budget = config.budget;
  options.seed = config.seed;
  options.include_witness = config.include_witness;
  options.threads = config.threads;
  const auto result = morrey::search_lower_bound(options, params);

  Json doc{{"tool", morrey::kToolName},
           {"version", morrey::kToolVersion},
           {"kind", config.kind},
           {"n", config.n},
           {"p", morrey::to_string(params.p())},
           {"q", morrey::to_string(params.q())},
           {"d", params.d()},
           {"best_value", result.best_value},
           {"evaluations", result.evaluations},
           {"seed", config.seed},
           {"budget", config.budget},
           {"support_cap", config.support_cap},
           {"include_witness", config.include_witness}};
  if (!config.output.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(config.output, ec);
    if (ec) throw morrey::ValidationError("cannot create directory '" + config.output + "'");
    Json files = Json::array();
    for (std::size_t i = 0; i < result.best_tuple.size(); ++i) {
      const auto path = std::filesystem::path(config.output) / ("member_" + std::to_string(i + 1) + ".json");
      morrey::write_json_file(path, morrey::sequence_to_json(result.best_tuple[i]));
      files.push_back(path.string());
    }
    doc["tuple_files"] = files;
  }
  print(doc);
  return kExitOk;
}

void add_space_options(CLI::App* cmd, CliConfig& config, bool with_d) {
  cmd->add_option("-p", config.p, "Inner exponent p (integer or a/b; decimals need --mode float)");
  cmd->add_option("-q", config.q, "Outer exponent q >= p");
  if (with_d) cmd->add_option("-d", config.d, "Lattice dimension")->check(CLI::Range(1, 16));
  cmd->add_option("--mode", config.mode, "Arithmetic mode")->check(CLI::IsMember({"exact", "float"}));
  cmd->add_flag("--exact", config.exact_flag, "Shorthand for --mode exact");
  cmd->add_option("--threads", config.threads, "Worker cap")->check(CLI::Range(1, 256));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Morrey space norms and geometric constants"};
  app.require_subcommand(1);
  app.set_version_flag("--version", morrey::kToolVersion);
  CliConfig config;

  auto* norm = app.add_subcommand("norm", "Compute the Morrey norm of a sequence file");
  add_space_options(norm, config, false);
  norm->add_option("--input", config.input, "Sequence JSON file")->required();
  norm->add_option("-d", config.d_flag, "Expected lattice dimension (defaults to the file's d)");

  auto* witness = app.add_subcommand("witness", "Write the extremal witness family");
  add_space_options(witness, config, true);
  witness->add_option("-n", config.n, "Number of members")->check(CLI::Range(2, morrey::kMaxWitnessN));
  witness->add_option("-j", config.j, "Spacing (even; defaults to the smallest valid one)");
  witness->add_option("--output", config.output, "Output directory (default ./witness)");

  auto* verify = app.add_subcommand("verify", "Verify that both n-th constants equal n via the witness family");
  add_space_options(verify, config, true);
  verify->add_option("-n", config.n, "Number of members")->check(CLI::Range(2, morrey::kMaxWitnessN));
  verify->add_option("-j", config.j, "Spacing (even; defaults to the smallest valid one)");

  auto* estimate = app.add_subcommand("estimate", "Randomized lower-bound search for a constant");
  add_space_options(estimate, config, true);
  estimate->add_option("--kind", config.kind, "Constant: nj or james")->check(CLI::IsMember({"nj", "james"}));
  estimate->add_option("-n", config.n, "Number of members")->check(CLI::Range(2, 8));
  estimate->add_option("--budget", config.budget, "Objective evaluations")->check(CLI::PositiveNumber);
  estimate->add_option("--support-cap", config.support_cap, "Side of the sampling box")->check(CLI::PositiveNumber);
  estimate->add_option("--seed", config.seed, "Random seed");
  estimate->add_flag("--include-witness", config.include_witness, "Start the first restart from the witness family");
  estimate->add_option("--output", config.output, "Directory for the best tuple's sequence files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*norm) return cmd_norm(config);
    if (*witness) return cmd_witness(config);
    if (*verify) return cmd_verify(config);
    return cmd_estimate(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
