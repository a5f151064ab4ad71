#include "oscnet/coupling_search.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oscnet/dynamics.hpp"
#include "oscnet/measures.hpp"

namespace oscnet {

void SearchConfig::validate() const {
  base.validate();
  if (!std::isfinite(target_time) || target_time <= 0.0) {
    throw std::invalid_argument("SearchConfig: target_time must be > 0");
  }
  if (max_iters < 1) {
    throw std::invalid_argument("SearchConfig: max_iters must be >= 1");
  }
  if (!(step_scale > 0.0 && step_scale <= 1.0)) {
    throw std::invalid_argument("SearchConfig: step_scale must lie in (0, 1]");
  }
  const std::size_t n = base.n_modes();
  if (objective_partition.max_mode() >= n) {
    throw std::invalid_argument("SearchConfig: objective partition outside the network");
  }
  for (ModeIndex s : input.target_sites) {
    if (s >= n) throw std::invalid_argument("SearchConfig: input site outside the network");
  }
}

SearchConfig default_search_config(const NetworkSpec& base, double z, std::uint64_t seed,
                                   std::size_t max_iters, double step_scale) {
  const CouplingModel layout = build_network(base);
  const auto ends = layout.roles().arm_ends();
  if (ends.size() < 2) {
    throw std::invalid_argument("default_search_config: network needs at least two output arms");
  }
  std::vector<ModeIndex> rest(ends.begin() + 1, ends.end());
  return SearchConfig{base,
                      std::numbers::pi / base.c,
                      ModePartition({ends.front()}, std::move(rest)),
                      InitialExcitation::squeezed(z, layout.roles().input_head()),
                      max_iters,
                      step_scale,
                      seed};
}

CouplingModel search_start_model(const NetworkSpec& base) {
  NetworkSpec uniform = base;
  uniform.profile = CouplingProfile::uniform;
  return build_network(uniform).with_diagonal(base.engineered_diagonal());
}

double objective(const CouplingModel& model, const SearchConfig& cfg) {
  const CovarianceMatrix gamma0 = embed_excitation(vacuum_cov(model.n_modes()), cfg.input);
  const CovarianceMatrix gamma = evolve(gamma0, model, cfg.target_time);
  return log_negativity(gamma, cfg.objective_partition);
}

SearchTrace optimize(const SearchConfig& cfg) {
  cfg.validate();
  CouplingModel current = search_start_model(cfg.base);
  const std::vector<Bond> bonds = current.bonds();
  if (bonds.empty()) {
    throw std::invalid_argument("optimize: network has no bonds to adjust");
  }

  SearchRng rng(cfg.seed);
  double best = objective(current, cfg);
  SearchTrace trace{best, {}, current, 0};
  trace.best_objective_per_iter.reserve(cfg.max_iters);

  for (std::size_t iter = 0; iter < cfg.max_iters; ++iter) {
    const Bond bond = bonds[rng.index(bonds.size())];
    const double factor = std::exp(rng.symmetric_unit() * cfg.step_scale);
    CouplingModel candidate = current.with_bond_value(bond, current.bond_value(bond) * factor);
    const double value = objective(candidate, cfg);
    if (value >= best) {
      best = value;
      current = std::move(candidate);
      ++trace.accepted_count;
    }
    trace.best_objective_per_iter.push_back(best);
  }
  trace.best_model = std::move(current);
  return trace;
}

}  // namespace oscnet
