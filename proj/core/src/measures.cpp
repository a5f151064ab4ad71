#include "oscnet/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace oscnet {

namespace {

constexpr double kEntropyLimitWindow = 1e-12;
constexpr double kPureInputTolerance = 1e-8;

double x_log2_x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void require_physical_spectrum(const std::vector<double>& mu, const char* what) {
  if (mu.back() < 1.0 - kPhysicalityTolerance) {
    throw std::invalid_argument(std::string(what) + ": unphysical state (symplectic eigenvalue " +
                                std::to_string(mu.back()) + ")");
  }
}

}  // namespace

double entropy_term(double mu) {
  if (!std::isfinite(mu) || mu < 1.0 - kPhysicalityTolerance) {
    throw std::invalid_argument("entropy_term: symplectic eigenvalue below 1");
  }
  if (mu <= 1.0 + kEntropyLimitWindow) {
    return 0.0;
  }
  return x_log2_x(0.5 * (mu + 1.0)) - x_log2_x(0.5 * (mu - 1.0));
}

double entropy_of_entanglement(const CovarianceMatrix& reduced) {
  const auto mu = symplectic_spectrum(reduced);
  require_physical_spectrum(mu, "entropy_of_entanglement");
  double s = 0.0;
  for (double m : mu) {
    s += entropy_term(m);
  }
  return s;
}

double log_negativity(const CovarianceMatrix& gamma, const ModePartition& part) {
  if (part.max_mode() >= gamma.n_modes()) {
    throw std::invalid_argument("log_negativity: partition references a missing mode");
  }
  const auto modes = part.modes();
  const CovarianceMatrix joint = reduce_modes(gamma, modes);
  require_physical_spectrum(symplectic_spectrum(joint), "log_negativity");

  const std::size_t na = part.side_a().size();
  std::vector<ModeIndex> a(na);
  std::vector<ModeIndex> b(modes.size() - na);
  std::iota(a.begin(), a.end(), ModeIndex{0});
  std::iota(b.begin(), b.end(), na);
  const auto transposed = partial_transpose(joint, ModePartition(std::move(a), std::move(b)));

  double n = 0.0;
  for (double nu : symplectic_spectrum(transposed)) {
    if (nu < 1.0) {
      n -= std::log2(nu);
    }
  }
  return n;
}

double gaussian_fidelity_pure(const CovarianceMatrix& gamma_pure, const CovarianceMatrix& gamma) {
  if (gamma_pure.n_modes() != 1 || gamma.n_modes() != 1) {
    throw std::invalid_argument("gaussian_fidelity_pure: only single-mode states are supported");
  }
  if (purity_defect(gamma_pure) > kPureInputTolerance) {
    throw std::invalid_argument("gaussian_fidelity_pure: reference state is not pure");
  }
  const double det = (gamma_pure.matrix() + gamma.matrix()).determinant();
  if (!(det > 0.0)) {
    throw std::invalid_argument("gaussian_fidelity_pure: det(gamma_pure + gamma) <= 0");
  }
  return 2.0 / std::sqrt(det);
}

double input_energy(double z) {
  if (!std::isfinite(z) || z < 1.0) {
    throw std::invalid_argument("input_energy: z must be >= 1");
  }
  return 0.5 * (z + 1.0 / z) - 1.0;
}

double max_entropy_bound(double z) {
  const double e = input_energy(z);
  if (e <= 0.0) {
    return 0.0;
  }
  return (0.5 * e * std::log(2.0 / e + 1.0) + std::log(0.5 * e + 1.0)) / std::log(2.0);
}

double excitation_energy(const CovarianceMatrix& gamma) {
  double e = 0.0;
  for (std::size_t k = 0; k < gamma.n_modes(); ++k) {
    e += 0.5 * (gamma.qq(k, k) + gamma.pp(k, k)) - 1.0;
  }
  return e;
}

}  // namespace oscnet
