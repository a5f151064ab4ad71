#include "oscnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "oscnet/csv.hpp"
#include "oscnet/dynamics.hpp"
#include "oscnet/error.hpp"
#include "oscnet/measures.hpp"
#include "oscnet/oracles.hpp"

namespace oscnet {

namespace {

constexpr double kOrthogonalityTolerance = 1e-10;

NormalModes checked_modes(const CouplingModel& model) {
  NormalModes modes(model);
  const double defect = modes.orthogonality_defect();
  if (!(defect <= kOrthogonalityTolerance)) {
    throw NumericalError("normal-mode basis is not orthogonal (defect " + std::to_string(defect) +
                         "); propagators would not be symplectic");
  }
  return modes;
}

// Positions of `sites` inside `universe`.
std::vector<ModeIndex> local_indices(const std::vector<ModeIndex>& universe,
                                     const std::vector<ModeIndex>& sites) {
  std::vector<ModeIndex> out;
  out.reserve(sites.size());
  for (ModeIndex s : sites) {
    const auto it = std::find(universe.begin(), universe.end(), s);
    out.push_back(static_cast<ModeIndex>(it - universe.begin()));
  }
  return out;
}

std::vector<ModeIndex> concat(const std::vector<ModeIndex>& a, const std::vector<ModeIndex>& b) {
  std::vector<ModeIndex> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool has_oracle(const NetworkSpec& spec, const ScenarioConfig& cfg) {
  return (spec.kind == NetworkKind::y || spec.kind == NetworkKind::star) &&
         spec.profile == CouplingProfile::engineered &&
         cfg.input_kind == ExcitationKind::squeezed && !cfg.target_sites;
}

std::vector<ModeIndex> iota_modes(std::size_t count) {
  std::vector<ModeIndex> out(count);
  std::iota(out.begin(), out.end(), ModeIndex{0});
  return out;
}

void require_branched(const NetworkSpec& spec, const char* what) {
  if (spec.output_arm_count() < 2) {
    throw ConfigError(std::string(what) + " needs a network with at least two output arms");
  }
}

}  // namespace

std::vector<PositionPair> measurement_pairs(const NetworkSpec& spec, const SiteRoles& roles,
                                            PairSelection selection) {
  std::vector<PositionPair> pairs;
  if (spec.kind == NetworkKind::chain) {
    if (selection == PairSelection::all_positions) {
      throw ConfigError("pairs=all_positions needs a branched network (y, star or x)");
    }
    pairs.push_back({0, {roles.input_head()}, {roles.arm_end(0)}});
    return pairs;
  }

  auto same_position = [](const std::vector<std::vector<ModeIndex>>& arms, std::size_t index,
                          int position) {
    PositionPair pair{position, {arms.front().at(index)}, {}};
    for (std::size_t a = 1; a < arms.size(); ++a) {
      pair.side_b.push_back(arms[a].at(index));
    }
    return pair;
  };

  const std::size_t m_out = spec.m_out;
  const std::size_t distances = selection == PairSelection::ends ? 1 : m_out;
  for (std::size_t d = 0; d < distances; ++d) {
    pairs.push_back(same_position(roles.output_arms, m_out - 1 - d, static_cast<int>(d)));
  }
  if (selection == PairSelection::all_positions && roles.input_arms.size() >= 2) {
    for (std::size_t d = 0; d < spec.m_in; ++d) {
      pairs.push_back(same_position(roles.input_arms, d, -static_cast<int>(d) - 1));
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const PositionPair& a, const PositionPair& b) {
              return a.position_index < b.position_index;
            });
  return pairs;
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  if (!config.time) {
    throw ConfigError("simulate requires a 'time' section");
  }
  const CouplingModel model = build_network(config.network);
  const InitialExcitation input = config.excitation(model.roles());
  const CovarianceMatrix gamma0 = embed_excitation(vacuum_cov(model.n_modes()), input);
  const NormalModes modes = checked_modes(model);
  const auto pairs = measurement_pairs(config.network, model.roles(), config.pairs);

  ScenarioResult result;
  const auto wants = [&](Measure m) { return config.measures.count(m) > 0; };
  const bool squeezed = config.input_kind == ExcitationKind::squeezed;
  std::optional<CovarianceMatrix> reference;
  if (wants(Measure::fidelity)) {
    if (squeezed) {
      reference = single_mode_squeezed_cov(config.z);
      if (config.network.diagonal != DiagonalMode::cloning) {
        result.notes.push_back(
            "fidelity is rotation-sensitive: diagonal=" +
            std::string(to_string(config.network.diagonal)) +
            " does not undo the local phase rotation; use diagonal=cloning for cloning fidelity");
      }
    } else {
      result.notes.push_back("fidelity omitted: defined only for a single-mode squeezed input");
    }
  }

  // All sites touched by any pair, evolved together at each time.
  std::vector<ModeIndex> universe;
  for (const auto& pair : pairs) {
    for (ModeIndex s : concat(pair.side_a, pair.side_b)) {
      if (std::find(universe.begin(), universe.end(), s) == universe.end()) universe.push_back(s);
    }
  }

  const std::vector<double> grid = config.time->points();
  std::vector<std::vector<TimeSeriesRecord>> per_pair(pairs.size());
  for (double t : grid) {
    const CovarianceMatrix local = modes.evolve_reduced(gamma0, t, universe);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto a = local_indices(universe, pairs[k].side_a);
      const auto b = local_indices(universe, pairs[k].side_b);
      const CovarianceMatrix joint = reduce_modes(local, concat(a, b));
      const auto ja = iota_modes(a.size());
      std::vector<ModeIndex> jb(b.size());
      std::iota(jb.begin(), jb.end(), a.size());

      TimeSeriesRecord row{t, pairs[k].position_index, {}, {}, {}, {}, {}};
      if (wants(Measure::log_negativity)) {
        row.log_negativity = log_negativity(joint, ModePartition(ja, jb));
      }
      if (wants(Measure::entropy) || reference) {
        const CovarianceMatrix party_a = reduce_modes(joint, ja);
        if (wants(Measure::entropy)) row.entropy = entropy_of_entanglement(party_a);
        if (reference) row.fidelity = gaussian_fidelity_pure(*reference, party_a);
      }
      if (wants(Measure::purity_defect)) row.purity_defect = purity_defect(joint);
      if (wants(Measure::energy)) row.energy = excitation_energy(joint);
      per_pair[k].push_back(row);
    }
  }
  for (auto& rows : per_pair) {
    result.records.insert(result.records.end(), rows.begin(), rows.end());
  }
  return result;
}

std::optional<double> SweepRow::entropy_delta() const {
  if (!entropy_oracle) return std::nullopt;
  return entropy - *entropy_oracle;
}

std::optional<double> SweepRow::fidelity_delta() const {
  if (!fidelity || !fidelity_oracle) return std::nullopt;
  return *fidelity - *fidelity_oracle;
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& config, SweepAxis axis,
                                std::span<const double> values) {
  config.validate();
  if (values.empty()) {
    throw ConfigError("sweep: no values given");
  }
  std::vector<SweepRow> rows;
  for (double value : values) {
    ScenarioConfig point = config;
    switch (axis) {
      case SweepAxis::z:
        point.z = value;
        break;
      case SweepAxis::c:
        point.network.c = value;
        break;
      case SweepAxis::n_arms: {
        if (!(value >= 2.0) || value != std::floor(value)) {
          throw ConfigError("sweep: n_arms values must be integers >= 2");
        }
        if (point.network.kind == NetworkKind::y) point.network.kind = NetworkKind::star;
        point.network.n_arms = static_cast<std::size_t>(value);
        break;
      }
    }
    point.validate();
    require_branched(point.network, "sweep");

    const CouplingModel model = build_network(point.network);
    const InitialExcitation input = point.excitation(model.roles());
    const CovarianceMatrix gamma0 = embed_excitation(vacuum_cov(model.n_modes()), input);
    const NormalModes modes = checked_modes(model);
    const auto ends = model.roles().arm_ends();
    const double t_peak = std::numbers::pi / point.network.c;
    const CovarianceMatrix local = modes.evolve_reduced(gamma0, t_peak, ends);

    std::vector<ModeIndex> rest(ends.size() - 1);
    std::iota(rest.begin(), rest.end(), ModeIndex{1});
    const CovarianceMatrix end0 = reduce_modes(local, std::vector<ModeIndex>{0});

    SweepRow row;
    row.axis = axis;
    row.value = value;
    row.t_peak = t_peak;
    row.log_negativity = log_negativity(local, ModePartition({0}, rest));
    row.entropy = entropy_of_entanglement(end0);
    row.mu1 = symplectic_spectrum(end0).front();
    if (point.input_kind == ExcitationKind::squeezed) {
      row.fidelity = gaussian_fidelity_pure(single_mode_squeezed_cov(point.z), end0);
      row.max_entropy_bound = max_entropy_bound(point.z);
    }
    if (has_oracle(point.network, point)) {
      const std::size_t arms = point.network.output_arm_count();
      row.entropy_oracle = oracles::star_entropy(point.z, arms);
      row.mu1_oracle = oracles::star_mu1(point.z, arms);
      row.fidelity_oracle = oracles::star_fidelity(point.z, arms);
    }
    rows.push_back(row);
  }
  return rows;
}

SearchOutcome run_search(const ScenarioConfig& config, std::uint64_t seed) {
  config.validate();
  require_branched(config.network, "search");
  const CouplingModel layout = build_network(config.network);
  const auto ends = layout.roles().arm_ends();
  std::vector<ModeIndex> rest(ends.begin() + 1, ends.end());

  SearchConfig search{config.network,
                      config.search.target_time.value_or(std::numbers::pi / config.network.c),
                      ModePartition({ends.front()}, std::move(rest)),
                      config.excitation(layout.roles()),
                      config.search.max_iters,
                      config.search.step_scale,
                      seed};
  NetworkSpec engineered = config.network;
  engineered.profile = CouplingProfile::engineered;

  SearchOutcome outcome{search, optimize(search), 0.0};
  outcome.engineered_objective = objective(build_network(engineered), search);
  return outcome;
}

std::string time_series_csv(const ScenarioResult& result) {
  std::string out;
  for (const auto& note : result.notes) {
    out += "# " + note + "\n";
  }
  out += csv::kTimeSeriesHeader;
  out += '\n';
  for (const auto& r : result.records) {
    out += csv::format_double(r.t);
    out += ',' + std::to_string(r.position_index);
    out += ',' + csv::format_optional(r.log_negativity);
    out += ',' + csv::format_optional(r.entropy);
    out += ',' + csv::format_optional(r.fidelity);
    out += ',' + csv::format_optional(r.purity_defect);
    out += ',' + csv::format_optional(r.energy);
    out += '\n';
  }
  return out;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out =
      "axis,value,t_peak,log_negativity,entropy,entropy_oracle,entropy_delta,mu1,mu1_oracle,"
      "fidelity,fidelity_oracle,fidelity_delta,max_entropy_bound\n";
  for (const auto& r : rows) {
    out += std::string(to_string(r.axis));
    out += ',' + csv::format_double(r.value);
    out += ',' + csv::format_double(r.t_peak);
    out += ',' + csv::format_double(r.log_negativity);
    out += ',' + csv::format_double(r.entropy);
    out += ',' + csv::format_optional(r.entropy_oracle);
    out += ',' + csv::format_optional(r.entropy_delta());
    out += ',' + csv::format_double(r.mu1);
    out += ',' + csv::format_optional(r.mu1_oracle);
    out += ',' + csv::format_optional(r.fidelity);
    out += ',' + csv::format_optional(r.fidelity_oracle);
    out += ',' + csv::format_optional(r.fidelity_delta());
    out += ',' + csv::format_optional(r.max_entropy_bound);
    out += '\n';
  }
  return out;
}

std::string search_trace_csv(const SearchTrace& trace) {
  std::string out = "iteration,best_objective\n";
  out += "0," + csv::format_double(trace.initial_objective) + "\n";
  for (std::size_t k = 0; k < trace.best_objective_per_iter.size(); ++k) {
    out += std::to_string(k + 1) + ',' + csv::format_double(trace.best_objective_per_iter[k]) +
           '\n';
  }
  return out;
}

std::string best_model_json(const SearchOutcome& outcome) {
  using nlohmann::json;
  const auto& cfg = outcome.config;
  const CouplingModel& best = outcome.trace.best_model;
  NetworkSpec engineered_spec = cfg.base;
  engineered_spec.profile = CouplingProfile::engineered;
  const CouplingModel engineered = build_network(engineered_spec);

  json bonds = json::array();
  for (const Bond& bond : best.bonds()) {
    bonds.push_back({{"a", bond.a},
                     {"b", bond.b},
                     {"value", best.bond_value(bond)},
                     {"engineered", engineered.bond_value(bond)}});
  }
  json diagonal = json::array();
  for (Eigen::Index i = 0; i < best.potential().rows(); ++i) {
    diagonal.push_back(best.potential()(i, i));
  }
  json network = {{"kind", to_string(cfg.base.kind)},
                  {"m_in", cfg.base.m_in},
                  {"m_out", cfg.base.m_out},
                  {"n_arms", cfg.base.n_arms},
                  {"c", cfg.base.c},
                  {"diagonal", to_string(cfg.base.diagonal)}};
  json doc = {{"network", network},
              {"seed", cfg.seed},
              {"iterations", cfg.max_iters},
              {"step_scale", cfg.step_scale},
              {"target_time", cfg.target_time},
              {"accepted", outcome.trace.accepted_count},
              {"initial_objective", outcome.trace.initial_objective},
              {"final_objective", outcome.trace.final_objective()},
              {"engineered_objective", outcome.engineered_objective},
              {"n_modes", best.n_modes()},
              {"diagonal", diagonal},
              {"bonds", bonds}};
  return doc.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ConfigError("cannot open '" + tmp.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw ConfigError("failed while writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ConfigError("cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace oscnet
