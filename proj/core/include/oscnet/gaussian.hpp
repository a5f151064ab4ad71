#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace oscnet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Zero-based oscillator (mode) index.
using ModeIndex = std::size_t;

// Second moments of a zero-mean Gaussian state of n modes.
//
// Quadratures are ordered (q_1..q_n, p_1..p_n) and the vacuum has unit
// variance per quadrature, so the n-mode vacuum is the 2n identity.
// Construction checks shape and symmetry (relative 1e-12); physicality is
// a separate query, since unphysical matrices are legitimate inputs to
// physicality_check.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Matrix data);

  // Accepts a nearly symmetric matrix and stores (M + M^T) / 2.
  static CovarianceMatrix symmetrized(const Matrix& data);

  std::size_t n_modes() const { return static_cast<std::size_t>(data_.rows() / 2); }
  const Matrix& matrix() const { return data_; }

  double qq(ModeIndex i, ModeIndex j) const;
  double pp(ModeIndex i, ModeIndex j) const;
  double qp(ModeIndex i, ModeIndex j) const;

  auto qq_block() const { return data_.topLeftCorner(n_modes_i(), n_modes_i()); }
  auto pp_block() const { return data_.bottomRightCorner(n_modes_i(), n_modes_i()); }

 private:
  struct Unchecked {};
  CovarianceMatrix(Matrix data, Unchecked) : data_(std::move(data)) {}
  Eigen::Index n_modes_i() const { return data_.rows() / 2; }

  Matrix data_;
};

// sigma = [[0, 1], [-1, 0]] in qqpp ordering.
Matrix symplectic_form(std::size_t n_modes);

// Two disjoint, non-empty sets of modes. Modes in neither side are traced
// out by the bipartite measures.
class ModePartition {
 public:
  ModePartition(std::vector<ModeIndex> side_a, std::vector<ModeIndex> side_b);

  const std::vector<ModeIndex>& side_a() const { return side_a_; }
  const std::vector<ModeIndex>& side_b() const { return side_b_; }

  // side_a followed by side_b.
  std::vector<ModeIndex> modes() const;
  std::size_t max_mode() const;

 private:
  std::vector<ModeIndex> side_a_;
  std::vector<ModeIndex> side_b_;
};

enum class ExcitationKind { squeezed, thermal, two_mode_squeezed };

struct InitialExcitation {
  ExcitationKind kind = ExcitationKind::squeezed;
  double z = 1.0;
  std::vector<ModeIndex> target_sites;

  static InitialExcitation squeezed(double z, ModeIndex site);
  static InitialExcitation thermal(double z, ModeIndex site);
  static InitialExcitation two_mode_squeezed(double z, ModeIndex first, ModeIndex second);

  // Number of target sites the kind requires (1 or 2).
  std::size_t arity() const;
};

CovarianceMatrix vacuum_cov(std::size_t n_modes);

// diag(z, 1/z): the q variance is stretched by z.
CovarianceMatrix single_mode_squeezed_cov(double z);

// diag(z, z); z is the symplectic eigenvalue.
CovarianceMatrix single_mode_thermal_cov(double z);

// cosh(r) = z; q-q correlation +sinh(r), p-p correlation -sinh(r).
CovarianceMatrix two_mode_squeezed_cov(double z);

// Local covariance of an excitation, ordered like its target sites.
CovarianceMatrix excitation_cov(const InitialExcitation& excitation);

// Replaces the rows and columns of the target sites (both sectors) by the
// excitation's covariance; correlations between targets and the remaining
// modes are set to zero.
CovarianceMatrix embed_excitation(const CovarianceMatrix& background,
                                  const InitialExcitation& excitation);

// Principal submatrix on `keep`, in the order given, re-emitted in qqpp.
CovarianceMatrix reduce_modes(const CovarianceMatrix& gamma, std::span<const ModeIndex> keep);

// Symplectic eigenvalues, sorted descending (one per mode).
std::vector<double> symplectic_spectrum(const CovarianceMatrix& gamma);

// Flips the sign of the momenta of side_b (rows and columns).
CovarianceMatrix partial_transpose(const CovarianceMatrix& gamma, const ModePartition& part);

// max |(-(gamma sigma)^2 - 1)_{ij}|; zero exactly for pure states.
double purity_defect(const CovarianceMatrix& gamma);

// True iff every symplectic eigenvalue is >= 1 - 1e-9.
bool physicality_check(const CovarianceMatrix& gamma);

inline constexpr double kPhysicalityTolerance = 1e-9;

}  // namespace oscnet
