#pragma once

#include <span>
#include <vector>

#include "oscnet/gaussian.hpp"
#include "oscnet/topology.hpp"

namespace oscnet {

// Symplectic matrix S(t) with Gamma(t) = S Gamma(0) S^T.
struct Propagator {
  double time = 0.0;
  Matrix matrix;
};

// Normal modes of a coupling model, V = O diag(w) O^T. Propagators at any
// absolute time are assembled from this decomposition without stepping:
//
//   S(t) = [[ O cos(wt) O^T,  O sin(wt) O^T],
//           [-O sin(wt) O^T,  O cos(wt) O^T]]
//
// which is exp([[0, T], [-V, 0]] t) for T = V.
class NormalModes {
 public:
  explicit NormalModes(const CouplingModel& model);

  std::size_t n_modes() const { return static_cast<std::size_t>(frequencies_.size()); }
  const Vector& frequencies() const { return frequencies_; }
  const Matrix& modes() const { return modes_; }

  Propagator propagator(double t) const;
  CovarianceMatrix evolve(const CovarianceMatrix& gamma0, double t) const;

  // Reduced state on `keep` at time t, built from the needed rows of S only.
  CovarianceMatrix evolve_reduced(const CovarianceMatrix& gamma0, double t,
                                  std::span<const ModeIndex> keep) const;

  // max |O^T O - 1|. Every S(t) is symplectic to this order.
  double orthogonality_defect() const;

 private:
  Vector frequencies_;
  Matrix modes_;
};

Propagator propagator_at(const CouplingModel& model, double t);

CovarianceMatrix evolve(const CovarianceMatrix& gamma0, const CouplingModel& model, double t);

// One covariance per grid point, each from its own absolute-time propagator.
std::vector<CovarianceMatrix> time_series(const CovarianceMatrix& gamma0,
                                          const CouplingModel& model,
                                          std::span<const double> t_grid);

// (1/4) tr(V Gamma_qq + T Gamma_pp) minus the same for the vacuum.
double network_energy(const CovarianceMatrix& gamma, const CouplingModel& model);

}  // namespace oscnet
