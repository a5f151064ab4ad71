#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "oscnet/scenario.hpp"

namespace oscnet {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, std::string_view where,
                         std::initializer_list<std::string_view> allowed) {
  if (!object.is_object()) {
    throw ConfigError(std::string(where) + ": expected a JSON object");
  }
  for (const auto& item : object.items()) {
    bool known = false;
    for (auto key : allowed) {
      if (item.key() == key) known = true;
    }
    if (!known) {
      throw ConfigError(std::string(where) + ": unknown key '" + item.key() + "'");
    }
  }
}

const json& require(const json& object, std::string_view where, const char* key) {
  if (!object.contains(key)) {
    throw ConfigError(std::string(where) + ": missing required key '" + key + "'");
  }
  return object.at(key);
}

double as_number(const json& value, std::string_view where) {
  if (!value.is_number()) {
    throw ConfigError(std::string(where) + ": expected a number");
  }
  const double out = value.get<double>();
  if (!std::isfinite(out)) {
    throw ConfigError(std::string(where) + ": expected a finite number");
  }
  return out;
}

std::size_t as_count(const json& value, std::string_view where) {
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    throw ConfigError(std::string(where) + ": expected a non-negative integer");
  }
  return value.get<std::size_t>();
}

std::string as_string(const json& value, std::string_view where) {
  if (!value.is_string()) {
    throw ConfigError(std::string(where) + ": expected a string");
  }
  return value.get<std::string>();
}

template <typename Parser>
auto parse_enum(const json& value, std::string_view where, Parser parser) {
  const std::string text = as_string(value, where);
  try {
    return parser(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(where) + ": " + e.what());
  }
}

ExcitationKind parse_excitation_kind(std::string_view text) {
  if (text == "squeezed") return ExcitationKind::squeezed;
  if (text == "thermal") return ExcitationKind::thermal;
  if (text == "two_mode_squeezed") return ExcitationKind::two_mode_squeezed;
  throw std::invalid_argument("unknown input kind '" + std::string(text) + "'");
}

Measure parse_measure(std::string_view text) {
  if (text == "log_negativity") return Measure::log_negativity;
  if (text == "entropy") return Measure::entropy;
  if (text == "fidelity") return Measure::fidelity;
  if (text == "purity_defect") return Measure::purity_defect;
  if (text == "energy") return Measure::energy;
  throw std::invalid_argument("unknown measure '" + std::string(text) + "'");
}

PairSelection parse_pairs(std::string_view text) {
  if (text == "ends") return PairSelection::ends;
  if (text == "all_positions") return PairSelection::all_positions;
  throw std::invalid_argument("unknown pair selection '" + std::string(text) + "'");
}

NetworkSpec parse_network(const json& node) {
  reject_unknown_keys(node, "network",
                      {"kind", "m_in", "m_out", "n_arms", "c", "profile", "diagonal"});
  NetworkSpec spec;
  spec.kind = parse_enum(require(node, "network", "kind"), "network.kind", parse_network_kind);
  spec.m_in = as_count(require(node, "network", "m_in"), "network.m_in");
  spec.m_out = as_count(require(node, "network", "m_out"), "network.m_out");
  switch (spec.kind) {
    case NetworkKind::chain: spec.n_arms = 1; break;
    case NetworkKind::y:
    case NetworkKind::x: spec.n_arms = 2; break;
    case NetworkKind::star: spec.n_arms = 0; break;
  }
  if (node.contains("n_arms")) {
    spec.n_arms = as_count(node.at("n_arms"), "network.n_arms");
  } else if (spec.kind == NetworkKind::star) {
    throw ConfigError("network: star networks require 'n_arms'");
  }
  spec.c = as_number(require(node, "network", "c"), "network.c");
  if (node.contains("profile")) {
    spec.profile = parse_enum(node.at("profile"), "network.profile", parse_coupling_profile);
  }
  if (node.contains("diagonal")) {
    spec.diagonal = parse_enum(node.at("diagonal"), "network.diagonal", parse_diagonal_mode);
  }
  return spec;
}

}  // namespace

std::string_view to_string(Measure measure) {
  switch (measure) {
    case Measure::log_negativity: return "log_negativity";
    case Measure::entropy: return "entropy";
    case Measure::fidelity: return "fidelity";
    case Measure::purity_defect: return "purity_defect";
    case Measure::energy: return "energy";
  }
  return "?";
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::z: return "z";
    case SweepAxis::n_arms: return "n_arms";
    case SweepAxis::c: return "c";
  }
  return "?";
}

SweepAxis parse_sweep_axis(std::string_view text) {
  if (text == "z") return SweepAxis::z;
  if (text == "n_arms") return SweepAxis::n_arms;
  if (text == "c") return SweepAxis::c;
  throw ConfigError("unknown sweep axis '" + std::string(text) + "' (expected z, n_arms or c)");
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> grid(steps);
  if (steps == 1) {
    grid[0] = 0.0;
    return grid;
  }
  const double denom = static_cast<double>(steps - 1);
  for (std::size_t k = 0; k < steps; ++k) {
    grid[k] = t_max * static_cast<double>(k) / denom;
  }
  return grid;
}

void ScenarioConfig::validate() const {
  try {
    network.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!std::isfinite(z) || z < 1.0) {
    throw ConfigError("input.z must be >= 1");
  }
  if (time) {
    if (time->steps < 1) throw ConfigError("time.steps must be >= 1");
    if (!std::isfinite(time->t_max) || time->t_max <= 0.0) {
      throw ConfigError("time.t_max must be > 0");
    }
  }
  if (target_sites) {
    const std::size_t arity = input_kind == ExcitationKind::two_mode_squeezed ? 2 : 1;
    if (target_sites->size() != arity) {
      throw ConfigError("input.target_sites: expected " + std::to_string(arity) + " site(s)");
    }
    for (ModeIndex s : *target_sites) {
      if (s >= network.n_modes()) {
        throw ConfigError("input.target_sites: site " + std::to_string(s) + " out of range");
      }
    }
  }
  if (search.max_iters < 1) throw ConfigError("search.max_iters must be >= 1");
  if (!(search.step_scale > 0.0 && search.step_scale <= 1.0)) {
    throw ConfigError("search.step_scale must lie in (0, 1]");
  }
  if (search.target_time && !(*search.target_time > 0.0)) {
    throw ConfigError("search.target_time must be > 0");
  }
}

InitialExcitation ScenarioConfig::excitation(const SiteRoles& roles) const {
  InitialExcitation out{input_kind, z, {}};
  if (target_sites) {
    out.target_sites = *target_sites;
    return out;
  }
  if (input_kind != ExcitationKind::two_mode_squeezed) {
    out.target_sites = {roles.input_head()};
  } else if (roles.input_arms.size() >= 2) {
    out.target_sites = {roles.input_head(0), roles.input_head(1)};
  } else {
    const auto& arm = roles.input_arms.front();
    if (arm.size() < 2) {
      throw ConfigError("two_mode_squeezed input needs two input sites (m_in >= 2)");
    }
    out.target_sites = {arm[0], arm[1]};
  }
  return out;
}

ScenarioConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown_keys(root, "config",
                      {"network", "input", "time", "measures", "pairs", "output_path", "seed",
                       "search"});

  ScenarioConfig cfg;
  cfg.network = parse_network(require(root, "config", "network"));

  const json& input = require(root, "config", "input");
  reject_unknown_keys(input, "input", {"kind", "z", "target_sites"});
  cfg.input_kind = parse_enum(require(input, "input", "kind"), "input.kind", parse_excitation_kind);
  cfg.z = as_number(require(input, "input", "z"), "input.z");
  if (input.contains("target_sites")) {
    const json& sites = input.at("target_sites");
    if (!sites.is_array()) throw ConfigError("input.target_sites: expected an array");
    std::vector<ModeIndex> parsed;
    for (const auto& s : sites) parsed.push_back(as_count(s, "input.target_sites[]"));
    cfg.target_sites = std::move(parsed);
  }

  if (root.contains("time")) {
    const json& time = root.at("time");
    reject_unknown_keys(time, "time", {"t_max", "steps"});
    cfg.time = TimeGrid{as_number(require(time, "time", "t_max"), "time.t_max"),
                        as_count(require(time, "time", "steps"), "time.steps")};
  }

  if (root.contains("measures")) {
    const json& measures = root.at("measures");
    if (!measures.is_array()) throw ConfigError("measures: expected an array");
    for (const auto& m : measures) {
      cfg.measures.insert(parse_enum(m, "measures[]", parse_measure));
    }
  } else {
    cfg.measures = {Measure::log_negativity, Measure::entropy, Measure::fidelity,
                    Measure::purity_defect, Measure::energy};
  }

  if (root.contains("pairs")) {
    cfg.pairs = parse_enum(root.at("pairs"), "pairs", parse_pairs);
  }
  if (root.contains("output_path")) {
    cfg.output_path = as_string(root.at("output_path"), "output_path");
  }
  if (root.contains("seed")) {
    const json& seed = root.at("seed");
    if (!seed.is_number_unsigned()) {
      throw ConfigError("seed: expected a non-negative integer");
    }
    cfg.seed = seed.get<std::uint64_t>();
  }
  if (root.contains("search")) {
    const json& search = root.at("search");
    reject_unknown_keys(search, "search", {"max_iters", "step_scale", "target_time"});
    if (search.contains("max_iters")) {
      cfg.search.max_iters = as_count(search.at("max_iters"), "search.max_iters");
    }
    if (search.contains("step_scale")) {
      cfg.search.step_scale = as_number(search.at("step_scale"), "search.step_scale");
    }
    if (search.contains("target_time")) {
      cfg.search.target_time = as_number(search.at("target_time"), "search.target_time");
    }
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace oscnet
