#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "oscnet/gaussian.hpp"
#include "oscnet/topology.hpp"

namespace oscnet {

// Stochastic local search over bond strengths of a network, maximising the
// logarithmic negativity across `objective_partition` at `target_time`.
struct SearchConfig {
  NetworkSpec base;
  double target_time = 0.0;
  ModePartition objective_partition;
  InitialExcitation input;
  std::size_t max_iters = 20000;
  double step_scale = 0.1;
  std::uint64_t seed = 0;

  void validate() const;
};

// Arm-end partition, squeezed input on the input head, t = pi/c.
SearchConfig default_search_config(const NetworkSpec& base, double z, std::uint64_t seed,
                                   std::size_t max_iters = 20000, double step_scale = 0.1);

struct SearchTrace {
  double initial_objective = 0.0;
  std::vector<double> best_objective_per_iter;  // non-decreasing
  CouplingModel best_model;
  std::size_t accepted_count = 0;

  double final_objective() const {
    return best_objective_per_iter.empty() ? initial_objective : best_objective_per_iter.back();
  }
};

// Uniform bonds c/2 with the constant diagonal of base.diagonal.
CouplingModel search_start_model(const NetworkSpec& base);

double objective(const CouplingModel& model, const SearchConfig& cfg);

// Each iteration multiplies one uniformly chosen bond by exp(u step_scale),
// u ~ U[-1, 1], and keeps the change when the objective does not decrease.
// Deterministic in cfg.seed.
SearchTrace optimize(const SearchConfig& cfg);

// Seeded stream used by the search. std::mt19937_64 output is fixed by the
// standard; the mappings below avoid the implementation-defined
// distributions so traces match across standard libraries.
class SearchRng {
 public:
  explicit SearchRng(std::uint64_t seed) : engine_(seed) {}
  std::size_t index(std::size_t count) { return static_cast<std::size_t>(engine_() % count); }
  // Uniform in [-1, 1).
  double symmetric_unit() {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return 2.0 * unit - 1.0;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace oscnet
