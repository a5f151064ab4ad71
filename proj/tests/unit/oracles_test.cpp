#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oscnet/measures.hpp"
#include "oscnet/oracles.hpp"
#include "reference.hpp"

namespace oscnet {
namespace {

using testing::max_abs;

Matrix diag(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double x : values) v(k++) = x;
  return v.asDiagonal();
}

std::vector<double> z_grid() {
  std::vector<double> out;
  for (int k = 0; k < 50; ++k) out.push_back(1.0 + 99.0 * k / 49.0);
  return out;
}

TEST(StarOutput, Examples) {
  EXPECT_LE(max_abs(oracles::star_output_cov(10.0, 2).matrix() - diag({5.5, 0.55})), 1e-15);
  EXPECT_LE(max_abs(oracles::star_output_cov(1.0, 5).matrix() - diag({1.0, 1.0})), 1e-15);
  EXPECT_LE(max_abs(oracles::star_output_cov(10.0, 4).matrix() - diag({3.25, 0.775})), 1e-15);
}

TEST(StarMu1, Examples) {
  EXPECT_NEAR(oracles::star_mu1(10.0, 2), 1.73925271309, 1e-10);
  EXPECT_NEAR(oracles::star_mu1(1.0, 3), 1.0, 1e-15);
  EXPECT_NEAR(oracles::star_mu1(10.0, 4), 1.587057024810, 1e-11);
}

TEST(StarFidelity, Examples) {
  EXPECT_NEAR(oracles::star_fidelity(10.0, 2), 0.630097081811, 1e-11);
  EXPECT_NEAR(oracles::star_fidelity(1.0, 7), 1.0, 1e-15);
  EXPECT_NEAR(oracles::star_fidelity(10.0, 1000000), 0.574959574576, 1e-6);
  EXPECT_NEAR(oracles::star_fidelity(10.0, 4), 0.587378478571, 1e-11);
}

TEST(TmsSplit, Examples) {
  EXPECT_LE(max_abs(oracles::tms_split_cov(1.0).matrix() - Matrix::Identity(4, 4)), 1e-15);
  const double er = 19.949874371066;
  EXPECT_LE(max_abs(oracles::tms_split_cov(10.0).matrix() - diag({er, 1 / er, 1 / er, er})),
            1e-10);
  EXPECT_NEAR(log_negativity(oracles::tms_split_cov(10.0), ModePartition({0}, {1})), 0.0, 1e-12);
}

TEST(TmsSplit, EqualsHadamardConjugatedTms) {
  const double h = 1.0 / std::sqrt(2.0);
  Matrix o = Matrix::Zero(4, 4);
  o.topLeftCorner(2, 2) << h, h, h, -h;
  o.bottomRightCorner(2, 2) = o.topLeftCorner(2, 2);
  for (double z : z_grid()) {
    const Matrix brute = o * two_mode_squeezed_cov(z).matrix() * o.transpose();
    EXPECT_LE(max_abs(oracles::tms_split_cov(z).matrix() - brute), 1e-10 * z);
  }
}

TEST(Identities, TwoArmReductions) {
  for (double z : z_grid()) {
    const Matrix half = 0.5 * (single_mode_squeezed_cov(z).matrix() + Matrix::Identity(2, 2));
    EXPECT_LE(max_abs(oracles::star_output_cov(z, 2).matrix() - half), 1e-12);
    EXPECT_NEAR(oracles::star_mu1(z, 2), 0.5 * std::sqrt(z + 1.0 / z + 2.0), 1e-12);
    EXPECT_NEAR(oracles::star_fidelity(z, 2), 4.0 / std::sqrt(3.0 * z + 3.0 / z + 10.0), 1e-12);
  }
}

TEST(Identities, InternalConsistency) {
  for (double z : z_grid()) {
    for (std::size_t n = 2; n <= 6; ++n) {
      const CovarianceMatrix out = oracles::star_output_cov(z, n);
      EXPECT_NEAR(symplectic_spectrum(out)[0], oracles::star_mu1(z, n), 1e-12);
      EXPECT_NEAR(gaussian_fidelity_pure(single_mode_squeezed_cov(z), out),
                  oracles::star_fidelity(z, n), 1e-12);
      EXPECT_NEAR(oracles::star_entropy(z, n), entropy_of_entanglement(out), 1e-12);
    }
  }
}

TEST(Trends, DecreasingInArmCount) {
  for (std::size_t n = 2; n < 10; ++n) {
    EXPECT_GT(entropy_of_entanglement(oracles::star_output_cov(10.0, n)),
              entropy_of_entanglement(oracles::star_output_cov(10.0, n + 1)));
    EXPECT_GT(oracles::star_fidelity(10.0, n), oracles::star_fidelity(10.0, n + 1));
  }
}

TEST(Validation, RejectsBadArguments) {
  EXPECT_THROW(oracles::star_output_cov(10.0, 1), std::invalid_argument);
  EXPECT_THROW(oracles::star_mu1(0.5, 2), std::invalid_argument);
  EXPECT_THROW(oracles::star_fidelity(10.0, 0), std::invalid_argument);
  EXPECT_THROW(oracles::tms_split_cov(0.2), std::invalid_argument);
}

}  // namespace
}  // namespace oscnet
