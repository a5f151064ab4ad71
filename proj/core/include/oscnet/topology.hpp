#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "oscnet/gaussian.hpp"

namespace oscnet {

enum class NetworkKind { chain, y, star, x };
enum class CouplingProfile { engineered, uniform };
enum class DiagonalMode { unit, cloning };

std::string_view to_string(NetworkKind kind);
std::string_view to_string(CouplingProfile profile);
std::string_view to_string(DiagonalMode mode);
NetworkKind parse_network_kind(std::string_view text);
CouplingProfile parse_coupling_profile(std::string_view text);
DiagonalMode parse_diagonal_mode(std::string_view text);

// Declarative description of an oscillator network.
//
//   chain : m_in + m_out oscillators in a line (n_arms = 1)
//   y     : input arm of m_in sites, two output arms of m_out sites
//   star  : input arm of m_in sites, n_arms output arms of m_out sites
//   x     : two input arms of m_in sites and two output arms of m_out sites
//           meeting at one central oscillator
struct NetworkSpec {
  NetworkKind kind = NetworkKind::y;
  std::size_t m_in = 2;
  std::size_t m_out = 2;
  std::size_t n_arms = 2;
  double c = 0.2;
  CouplingProfile profile = CouplingProfile::engineered;
  DiagonalMode diagonal = DiagonalMode::unit;

  static NetworkSpec chain(std::size_t length, double c,
                           CouplingProfile profile = CouplingProfile::engineered,
                           DiagonalMode diagonal = DiagonalMode::unit);
  static NetworkSpec y_shape(std::size_t m_in, std::size_t m_out, double c,
                             DiagonalMode diagonal = DiagonalMode::unit);
  static NetworkSpec star(std::size_t n_arms, std::size_t m_in, std::size_t m_out, double c,
                          DiagonalMode diagonal = DiagonalMode::unit);
  static NetworkSpec x_shape(std::size_t m_in, std::size_t m_out, double c,
                             DiagonalMode diagonal = DiagonalMode::unit);

  // Throws std::invalid_argument on arity or range violations.
  void validate() const;

  std::size_t n_modes() const;

  // Length of the chain that carries the transmission after decoupling;
  // the square-root law is evaluated with M equal to this length.
  std::size_t transmission_length() const;

  // Number of output arms (1 for chain, 2 for y and x).
  std::size_t output_arm_count() const;
  std::size_t input_arm_count() const;

  // Diagonal entry used by the engineered profile: 1 for unit, and
  // [3 - (-1)^(m_in+m_out)] c / 4 for cloning.
  double engineered_diagonal() const;
};

// Where the semantically interesting sites of a network live.
struct SiteRoles {
  // input_arms[k][p]: p = 0 is the head (first oscillator, far from the
  // junction). For y/star the last input site is the junction.
  std::vector<std::vector<ModeIndex>> input_arms;
  // output_arms[k][p]: p = 0 is adjacent to the junction, back() is the end.
  std::vector<std::vector<ModeIndex>> output_arms;
  // y/star: last input site; x: central oscillator; chain: none.
  std::optional<ModeIndex> junction;

  ModeIndex input_head(std::size_t arm = 0) const;
  ModeIndex arm_end(std::size_t arm) const;
  ModeIndex arm_site(std::size_t arm, std::size_t position) const;
  std::vector<ModeIndex> arm_ends() const;
};

struct Bond {
  ModeIndex a = 0;
  ModeIndex b = 0;  // a < b
  friend bool operator==(const Bond&, const Bond&) = default;
};

// Realised potential and kinetic matrices of a network. Under the rotating
// wave approximation T = V, so only V is stored.
class CouplingModel {
 public:
  // Bonds are the non-zero off-diagonal entries of `potential`.
  CouplingModel(Matrix potential, SiteRoles roles);
  // Explicit bond list; entries off the list must be zero.
  CouplingModel(Matrix potential, SiteRoles roles, std::vector<Bond> bonds);

  std::size_t n_modes() const { return static_cast<std::size_t>(potential_.rows()); }
  const Matrix& potential() const { return potential_; }
  const Matrix& kinetic() const { return potential_; }
  const SiteRoles& roles() const { return roles_; }
  const std::vector<Bond>& bonds() const { return bonds_; }

  double bond_value(const Bond& bond) const;
  CouplingModel with_bond_value(const Bond& bond, double value) const;
  CouplingModel with_diagonal(double value) const;

 private:
  Matrix potential_;
  SiteRoles roles_;
  std::vector<Bond> bonds_;
};

CouplingModel build_network(const NetworkSpec& spec);

// Orthogonal change of variables that splits a branched network into one
// transmission chain and decoupled arms. Same-position sites of the
// grouped arms are mixed with a real Fourier basis whose first row is
// uniform; the uniform combination is stored at the index of arm 0.
struct DecouplingTransform {
  Matrix orthogonal;  // 2n x 2n, identical q and p blocks
  // Transformed indices of the transmission chain, head to end.
  std::vector<ModeIndex> coupled_chain;
  // Transformed indices of every decoupled block (one per non-uniform
  // Fourier component and grouped arm family).
  std::vector<std::vector<ModeIndex>> decoupled_blocks;

  std::size_t n_modes() const { return static_cast<std::size_t>(orthogonal.rows() / 2); }
  // q-sector block.
  Matrix position_block() const;
};

// Real orthogonal N x N matrix: row 0 uniform, then cos/sin pairs, then
// an alternating row when N is even. For N = 2 it is (1/sqrt2)[[1,1],[1,-1]].
Matrix real_fourier_basis(std::size_t n);

DecouplingTransform decoupling_transform(const NetworkSpec& spec);

// V' = O_q V O_q^T, T' = V'.
CouplingModel conjugate_potential(const CouplingModel& model, const DecouplingTransform& transform);

// Applies the transform to a covariance matrix: O gamma O^T.
CovarianceMatrix transform_covariance(const CovarianceMatrix& gamma,
                                      const DecouplingTransform& transform);

}  // namespace oscnet
