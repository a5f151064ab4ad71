// oscnet: batch front-end for oscillator-network simulations.
//
//   oscnet simulate --config scenario.json [--out series.csv]
//   oscnet sweep    --config scenario.json --axis z --values 1,2,10 [--out sweep.csv]
//   oscnet search   --config scenario.json --seed 42 [--out trace.csv]
//
// Exit status: 0 success, 2 invalid config or I/O, 3 numerical failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oscnet/csv.hpp"
#include "oscnet/error.hpp"
#include "oscnet/scenario.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> values;
  for (const auto& field : oscnet::csv::split_fields(list)) {
    try {
      values.push_back(oscnet::csv::parse_double(field));
    } catch (const std::invalid_argument&) {
      throw oscnet::ConfigError("--values: '" + field + "' is not a number");
    }
  }
  return values;
}

// --out wins over output_path; neither means stdout.
std::optional<std::filesystem::path> output_target(const std::string& out,
                                                   const oscnet::ScenarioConfig& cfg) {
  if (!out.empty()) return std::filesystem::path(out);
  if (!cfg.output_path.empty()) return std::filesystem::path(cfg.output_path);
  return std::nullopt;
}

void emit(const std::optional<std::filesystem::path>& target, const std::string& content) {
  if (target) {
    oscnet::write_file_atomic(*target, content);
  } else {
    std::cout << content;
  }
}

std::filesystem::path model_path_for(std::filesystem::path trace) {
  trace.replace_extension(".model.json");
  return trace;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-state propagation through engineered oscillator networks"};
  app.set_version_flag("--version", std::string("oscnet ") + OSCNET_VERSION);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;

  auto* simulate = app.add_subcommand("simulate", "Time series of the measures on each pair");
  simulate->add_option("--config", config_path, "Scenario JSON")->required();
  simulate->add_option("--out", out_path, "Output CSV (default: output_path, else stdout)");

  std::string axis_name;
  std::string values_list;
  auto* sweep = app.add_subcommand("sweep", "Summary at t = pi/c over one parameter axis");
  sweep->add_option("--config", config_path, "Scenario JSON")->required();
  sweep->add_option("--axis", axis_name, "z, n_arms or c")->required();
  sweep->add_option("--values", values_list, "Comma-separated axis values")->required();
  sweep->add_option("--out", out_path, "Output CSV (default: output_path, else stdout)");

  std::optional<std::uint64_t> seed;
  auto* search = app.add_subcommand("search", "Hill-climbing search over bond strengths");
  search->add_option("--config", config_path, "Scenario JSON")->required();
  search->add_option("--seed", seed, "RNG seed (default: seed from config)");
  search->add_option("--out", out_path,
                     "Trace CSV; the best model goes next to it as <stem>.model.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const oscnet::ScenarioConfig cfg = oscnet::load_config(config_path);
    const auto target = output_target(out_path, cfg);

    if (*simulate) {
      const oscnet::ScenarioResult result = oscnet::run_scenario(cfg);
      for (const auto& note : result.notes) std::cerr << "oscnet: note: " << note << '\n';
      emit(target, oscnet::time_series_csv(result));
    } else if (*sweep) {
      const oscnet::SweepAxis axis = oscnet::parse_sweep_axis(axis_name);
      const std::vector<double> values = parse_values(values_list);
      const auto rows = oscnet::run_sweep(cfg, axis, values);
      emit(target, oscnet::sweep_csv(rows));
    } else if (*search) {
      const std::optional<std::uint64_t> effective = seed ? seed : cfg.seed;
      if (!effective) {
        throw oscnet::ConfigError("search needs --seed or a 'seed' in the config");
      }
      if (!target) {
        throw oscnet::ConfigError("search writes two files; give --out or output_path");
      }
      const oscnet::SearchOutcome outcome = oscnet::run_search(cfg, *effective);
      oscnet::write_file_atomic(*target, oscnet::search_trace_csv(outcome.trace));
      oscnet::write_file_atomic(model_path_for(*target), oscnet::best_model_json(outcome));
    }
  } catch (const oscnet::NumericalError& e) {
    std::cerr << "oscnet: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "oscnet: error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
