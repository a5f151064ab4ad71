#pragma once

#include <cstddef>

#include "oscnet/gaussian.hpp"

namespace oscnet::oracles {

// Closed-form results for engineered star networks (y is n_arms = 2) at
// the perfect-transfer time t = pi/c, for a squeezed input diag(z, 1/z).
// None of these touch the dynamics code.

// Arm-end covariance: (diag(z, 1/z) + (n_arms - 1) 1) / n_arms.
CovarianceMatrix star_output_cov(double z, std::size_t n_arms);

// Symplectic eigenvalue of star_output_cov:
//   (1/N) sqrt((z + N - 1)(1/z + N - 1)).
double star_mu1(double z, std::size_t n_arms);

// Entanglement entropy (bits) between one arm end and the rest.
double star_entropy(double z, std::size_t n_arms);

// Cloning fidelity 2N / sqrt((N^2 - 1)(z + 1/z) + 2N^2 + 2).
double star_fidelity(double z, std::size_t n_arms);

// Two-mode squeezed state after the 50/50 arm mixing: the product
// diag(e^r, e^-r) (+) diag(e^-r, e^r) with cosh r = z, in qqpp ordering
// diag(e^r, e^-r, e^-r, e^r).
CovarianceMatrix tms_split_cov(double z);

}  // namespace oscnet::oracles
