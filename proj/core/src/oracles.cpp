#include "oscnet/oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "oscnet/measures.hpp"

namespace oscnet::oracles {

namespace {

void require_inputs(double z, std::size_t n_arms, const char* what) {
  if (!std::isfinite(z) || z < 1.0) {
    throw std::invalid_argument(std::string(what) + ": z must be >= 1");
  }
  if (n_arms < 2) {
    throw std::invalid_argument(std::string(what) + ": n_arms must be >= 2");
  }
}

}  // namespace

CovarianceMatrix star_output_cov(double z, std::size_t n_arms) {
  require_inputs(z, n_arms, "star_output_cov");
  const auto n = static_cast<double>(n_arms);
  Matrix g = Matrix::Zero(2, 2);
  g(0, 0) = (z + n - 1.0) / n;
  g(1, 1) = (1.0 / z + n - 1.0) / n;
  return CovarianceMatrix(std::move(g));
}

double star_mu1(double z, std::size_t n_arms) {
  require_inputs(z, n_arms, "star_mu1");
  const auto n = static_cast<double>(n_arms);
  return std::sqrt((z + n - 1.0) * (1.0 / z + n - 1.0)) / n;
}

double star_entropy(double z, std::size_t n_arms) {
  return entropy_term(star_mu1(z, n_arms));
}

double star_fidelity(double z, std::size_t n_arms) {
  require_inputs(z, n_arms, "star_fidelity");
  const auto n = static_cast<double>(n_arms);
  return 2.0 * n / std::sqrt((n * n - 1.0) * (z + 1.0 / z) + 2.0 * n * n + 2.0);
}

CovarianceMatrix tms_split_cov(double z) {
  if (!std::isfinite(z) || z < 1.0) {
    throw std::invalid_argument("tms_split_cov: z must be >= 1");
  }
  const double er = z + std::sqrt(z * z - 1.0);
  const double inv = 1.0 / er;
  Matrix g = Matrix::Zero(4, 4);
  g(0, 0) = er;   // q of the symmetric mode
  g(1, 1) = inv;  // q of the antisymmetric mode
  g(2, 2) = inv;
  g(3, 3) = er;
  return CovarianceMatrix(std::move(g));
}

}  // namespace oscnet::oracles
