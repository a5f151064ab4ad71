#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oscnet/coupling_search.hpp"
#include "oscnet/gaussian.hpp"
#include "oscnet/topology.hpp"

namespace oscnet {

// Malformed or inconsistent scenario description.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Measure { log_negativity, entropy, fidelity, purity_defect, energy };
enum class PairSelection { ends, all_positions };
enum class SweepAxis { z, n_arms, c };

std::string_view to_string(Measure measure);
std::string_view to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view text);

struct TimeGrid {
  double t_max = 0.0;
  std::size_t steps = 1;

  // steps points evenly spaced over [0, t_max].
  std::vector<double> points() const;
};

struct SearchSettings {
  std::size_t max_iters = 20000;
  double step_scale = 0.1;
  std::optional<double> target_time;  // default pi / c
};

struct ScenarioConfig {
  NetworkSpec network;
  ExcitationKind input_kind = ExcitationKind::squeezed;
  double z = 1.0;
  std::optional<std::vector<ModeIndex>> target_sites;
  std::optional<TimeGrid> time;  // required by run_scenario only
  std::set<Measure> measures;
  PairSelection pairs = PairSelection::ends;
  std::string output_path;
  std::optional<std::uint64_t> seed;
  SearchSettings search;

  void validate() const;
  // Input placed on explicit target sites, or the default sites of the
  // network (input head; both x input heads or the first two input sites
  // for a two-mode squeezed input).
  InitialExcitation excitation(const SiteRoles& roles) const;
};

// Strict JSON parsing: unknown keys, wrong types and invalid values throw
// ConfigError.
ScenarioConfig parse_config(std::string_view json_text);
ScenarioConfig load_config(const std::filesystem::path& path);

// One measured row. Absent measures are empty.
struct TimeSeriesRecord {
  double t = 0.0;
  int position_index = 0;
  std::optional<double> log_negativity;
  std::optional<double> entropy;
  std::optional<double> fidelity;
  std::optional<double> purity_defect;
  std::optional<double> energy;

  friend bool operator==(const TimeSeriesRecord&, const TimeSeriesRecord&) = default;
};

// Sites compared at one position: side A is arm 0, side B the other arms.
struct PositionPair {
  int position_index = 0;
  std::vector<ModeIndex> side_a;
  std::vector<ModeIndex> side_b;
};

std::vector<PositionPair> measurement_pairs(const NetworkSpec& spec, const SiteRoles& roles,
                                            PairSelection selection);

struct ScenarioResult {
  std::vector<TimeSeriesRecord> records;  // by position, t ascending within
  std::vector<std::string> notes;         // emitted as '# ' header comments
};

ScenarioResult run_scenario(const ScenarioConfig& config);

struct SweepRow {
  SweepAxis axis = SweepAxis::z;
  double value = 0.0;
  double t_peak = 0.0;
  double log_negativity = 0.0;
  double entropy = 0.0;
  double mu1 = 0.0;
  std::optional<double> fidelity;
  std::optional<double> entropy_oracle;
  std::optional<double> mu1_oracle;
  std::optional<double> fidelity_oracle;
  std::optional<double> max_entropy_bound;

  std::optional<double> entropy_delta() const;
  std::optional<double> fidelity_delta() const;
};

// One row per axis value, measured at t = pi/c on the arm-0 end.
std::vector<SweepRow> run_sweep(const ScenarioConfig& config, SweepAxis axis,
                                std::span<const double> values);

struct SearchOutcome {
  SearchConfig config;
  SearchTrace trace;
  double engineered_objective = 0.0;
};

SearchOutcome run_search(const ScenarioConfig& config, std::uint64_t seed);

// Serialisation.
std::string time_series_csv(const ScenarioResult& result);
std::string sweep_csv(std::span<const SweepRow> rows);
std::string search_trace_csv(const SearchTrace& trace);
std::string best_model_json(const SearchOutcome& outcome);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace oscnet
