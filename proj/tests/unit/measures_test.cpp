#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "oscnet/dynamics.hpp"
#include "oscnet/measures.hpp"
#include "reference.hpp"

namespace oscnet {
namespace {

CovarianceMatrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return CovarianceMatrix(m);
}

// Half-and-half mixture of a squeezed state with vacuum: one y output arm.
CovarianceMatrix half_mix(double z) { return diag2(0.5 * (z + 1.0), 0.5 * (1.0 / z + 1.0)); }

TEST(Entropy, Examples) {
  EXPECT_EQ(entropy_of_entanglement(vacuum_cov(1)), 0.0);
  EXPECT_EQ(entropy_of_entanglement(vacuum_cov(3)), 0.0);
  const double mu_y = 0.5 * std::sqrt(12.1);
  EXPECT_NEAR(entropy_of_entanglement(diag2(mu_y, mu_y)), 1.152244164767, 1e-10);
  const double mu_star = 0.25 * std::sqrt(40.3);
  EXPECT_NEAR(entropy_of_entanglement(diag2(mu_star, mu_star)), 0.999386348657, 1e-10);
  EXPECT_NEAR(entropy_of_entanglement(half_mix(2.0)), 0.197371889921, 1e-10);
}

TEST(Entropy, LimitConvention) {
  EXPECT_EQ(entropy_term(1.0), 0.0);
  EXPECT_EQ(entropy_term(1.0 + 5e-13), 0.0);
  EXPECT_GT(entropy_term(1.0 + 1e-6), 0.0);
}

TEST(Entropy, RejectsUnphysical) {
  EXPECT_THROW(entropy_of_entanglement(diag2(0.5, 0.5)), std::invalid_argument);
}

TEST(Entropy, EqualOnBothSidesOfPureState) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const CovarianceMatrix g(testing::random_pure_state(5, rng));
    const std::vector<ModeIndex> a{0, 3};
    const std::vector<ModeIndex> b{1, 2, 4};
    EXPECT_NEAR(entropy_of_entanglement(reduce_modes(g, a)),
                entropy_of_entanglement(reduce_modes(g, b)), 1e-8);
  }
}

TEST(LogNegativity, VacuumAndProductStates) {
  EXPECT_EQ(log_negativity(vacuum_cov(4), ModePartition({0, 1}, {2})), 0.0);
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix a = testing::random_pure_state(2, rng);
    const Matrix b = testing::random_pure_state(2, rng);
    // Direct sum in qqpp layout: modes 0,1 from a and 2,3 from b.
    Matrix g = Matrix::Zero(8, 8);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        g(i, j) = a(i, j);
        g(i, 4 + j) = a(i, 2 + j);
        g(4 + i, j) = a(2 + i, j);
        g(4 + i, 4 + j) = a(2 + i, 2 + j);
        g(2 + i, 2 + j) = b(i, j);
        g(2 + i, 6 + j) = b(i, 2 + j);
        g(6 + i, 2 + j) = b(2 + i, j);
        g(6 + i, 6 + j) = b(2 + i, 2 + j);
      }
    }
    EXPECT_LE(log_negativity(CovarianceMatrix::symmetrized(g), ModePartition({0, 1}, {2, 3})),
              1e-9);
  }
}

TEST(LogNegativity, TwoModeSqueezedAgainstBruteForce) {
  for (double z : {1.5, 10.0, 40.0}) {
    const CovarianceMatrix tms = two_mode_squeezed_cov(z);
    const ModePartition part({0}, {1});
    const auto nu = testing::brute_symplectic_spectrum(partial_transpose(tms, part).matrix());
    double expected = 0.0;
    for (double v : nu) {
      if (v < 1.0) expected -= std::log2(v);
    }
    EXPECT_NEAR(log_negativity(tms, part), expected, 1e-9);
  }
}

TEST(LogNegativity, YOutputAtTransferTime) {
  const CouplingModel m = build_network(NetworkSpec::y_shape(2, 2, 0.2));
  const CovarianceMatrix g0 = embed_excitation(vacuum_cov(m.n_modes()),
                                               InitialExcitation::squeezed(10.0, 0));
  const CovarianceMatrix g = evolve(g0, m, std::numbers::pi / 0.2);
  const auto ends = m.roles().arm_ends();
  EXPECT_NEAR(log_negativity(g, ModePartition({ends[0]}, {ends[1]})), 1.660964047444, 1e-8);
}

TEST(LogNegativity, ThermalInputNeverEntangles) {
  const CouplingModel m = build_network(NetworkSpec::y_shape(2, 2, 0.2));
  const NormalModes modes(m);
  const CovarianceMatrix g0 = embed_excitation(vacuum_cov(m.n_modes()),
                                               InitialExcitation::thermal(10.0, 0));
  const auto ends = m.roles().arm_ends();
  for (int k = 0; k <= 50; ++k) {
    const CovarianceMatrix g = modes.evolve(g0, 0.6 * k);
    EXPECT_LE(log_negativity(g, ModePartition({ends[0]}, {ends[1]})), 1e-10);
  }
}

TEST(LogNegativity, InvariantUnderLocalSymplectics) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const CovarianceMatrix g(testing::random_pure_state(3, rng));
    const ModePartition part({0}, {1, 2});
    std::vector<Matrix> blocks;
    for (int k = 0; k < 3; ++k) blocks.push_back(testing::random_single_mode_symplectic(rng));
    const Matrix s = testing::local_symplectic(blocks);
    const CovarianceMatrix moved = CovarianceMatrix::symmetrized(s * g.matrix() * s.transpose());
    const double before = log_negativity(g, part);
    EXPECT_GE(before, 0.0);
    EXPECT_NEAR(log_negativity(moved, part), before, 1e-8);
  }
}

TEST(LogNegativity, RejectsUnphysical) {
  Matrix m = Matrix::Identity(4, 4) * 0.5;
  EXPECT_THROW(log_negativity(CovarianceMatrix(m), ModePartition({0}, {1})),
               std::invalid_argument);
}

TEST(Fidelity, Examples) {
  const CovarianceMatrix sq = single_mode_squeezed_cov(10.0);
  EXPECT_NEAR(gaussian_fidelity_pure(sq, sq), 1.0, 1e-12);
  EXPECT_NEAR(gaussian_fidelity_pure(sq, vacuum_cov(1)), 0.574959574576, 1e-11);
  EXPECT_NEAR(gaussian_fidelity_pure(sq, half_mix(10.0)), 0.630097081811, 1e-11);
}

TEST(Fidelity, OneOnlyForTheSameState) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const CovarianceMatrix pure(testing::random_pure_state(1, rng));
    EXPECT_NEAR(gaussian_fidelity_pure(pure, pure), 1.0, 1e-8);
    const CovarianceMatrix other(testing::random_pure_state(1, rng));
    if (testing::max_abs(other.matrix() - pure.matrix()) > 1e-3) {
      EXPECT_LT(gaussian_fidelity_pure(pure, other), 1.0 - 1e-8);
    }
  }
}

TEST(Fidelity, DecreasesWithSqueezing) {
  double previous = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double z = 1.0 + 0.99 * k;
    const double f = gaussian_fidelity_pure(single_mode_squeezed_cov(z), half_mix(z));
    EXPECT_LT(f, previous);
    previous = f;
  }
}

TEST(Fidelity, Validation) {
  EXPECT_THROW(gaussian_fidelity_pure(vacuum_cov(2), vacuum_cov(2)), std::invalid_argument);
  EXPECT_THROW(gaussian_fidelity_pure(single_mode_thermal_cov(2.0), vacuum_cov(1)),
               std::invalid_argument);
}

TEST(InputEnergy, Examples) {
  EXPECT_EQ(input_energy(1.0), 0.0);
  EXPECT_NEAR(input_energy(10.0), 4.05, 1e-14);
  EXPECT_NEAR(input_energy(2.0), 0.25, 1e-15);
  EXPECT_THROW(input_energy(0.9), std::invalid_argument);
}

TEST(InputEnergy, MatchesExcitationEnergyOfInput) {
  EXPECT_NEAR(excitation_energy(single_mode_squeezed_cov(10.0)), input_energy(10.0), 1e-14);
  EXPECT_EQ(excitation_energy(vacuum_cov(4)), 0.0);
}

TEST(MaxEntropyBound, Examples) {
  EXPECT_EQ(max_entropy_bound(1.0), 0.0);
  EXPECT_NEAR(max_entropy_bound(10.0), 2.769436942027, 1e-10);
  EXPECT_THROW(max_entropy_bound(0.5), std::invalid_argument);
}

TEST(MaxEntropyBound, BoundsOutputEntropy) {
  for (int k = 0; k < 50; ++k) {
    const double z = 1.0 + 99.0 * k / 49.0;
    EXPECT_LE(entropy_of_entanglement(half_mix(z)), max_entropy_bound(z) + 1e-12) << z;
  }
}

}  // namespace
}  // namespace oscnet
