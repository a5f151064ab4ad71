#pragma once

#include "oscnet/gaussian.hpp"

namespace oscnet {

// Entropy (bits) contributed by one symplectic eigenvalue mu >= 1:
//   ((mu+1)/2) log2((mu+1)/2) - ((mu-1)/2) log2((mu-1)/2)
// Values in [1, 1 + 1e-12] contribute exactly 0.
double entropy_term(double mu);

// Von Neumann entropy (bits) of a reduced state; the entanglement entropy
// when the global state is pure.
double entropy_of_entanglement(const CovarianceMatrix& reduced);

// Logarithmic negativity (bits) between the two sides of `part`. Modes in
// neither side are traced out first.
double log_negativity(const CovarianceMatrix& gamma, const ModePartition& part);

// Overlap tr(rho_pure rho) = 2 / sqrt(det(gamma_pure + gamma)) for
// single-mode, zero-mean states; gamma_pure must be pure.
double gaussian_fidelity_pure(const CovarianceMatrix& gamma_pure, const CovarianceMatrix& gamma);

// Energy injected by a squeezed input above the vacuum, (z + 1/z)/2 - 1.
double input_energy(double z);

// Largest entanglement entropy (bits) reachable with the energy of a
// squeezed input of parameter z.
double max_entropy_bound(double z);

// Sum over modes of (gamma_qq + gamma_pp)/2 - 1.
double excitation_energy(const CovarianceMatrix& gamma);

}  // namespace oscnet
