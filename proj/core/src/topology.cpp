#include "oscnet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace oscnet {

namespace {

// (c/2) sqrt(p (M - p)) for the bond between chain positions p and p + 1
// (1-based).
double sqrt_law_bond(double c, std::size_t length, std::size_t position) {
  const auto p = static_cast<double>(position);
  const auto m = static_cast<double>(length);
  return 0.5 * c * std::sqrt(p * (m - p));
}

void set_bond(Matrix& v, ModeIndex a, ModeIndex b, double value) {
  const auto i = static_cast<Eigen::Index>(a);
  const auto j = static_cast<Eigen::Index>(b);
  v(i, j) = value;
  v(j, i) = value;
}

std::vector<ModeIndex> iota_sites(ModeIndex first, std::size_t count) {
  std::vector<ModeIndex> sites(count);
  for (std::size_t k = 0; k < count; ++k) {
    sites[k] = first + k;
  }
  return sites;
}

SiteRoles layout(const NetworkSpec& spec) {
  SiteRoles roles;
  switch (spec.kind) {
    case NetworkKind::chain:
    case NetworkKind::y:
    case NetworkKind::star: {
      roles.input_arms.push_back(iota_sites(0, spec.m_in));
      for (std::size_t a = 0; a < spec.output_arm_count(); ++a) {
        roles.output_arms.push_back(iota_sites(spec.m_in + a * spec.m_out, spec.m_out));
      }
      if (spec.kind != NetworkKind::chain) {
        roles.junction = spec.m_in - 1;
      }
      break;
    }
    case NetworkKind::x: {
      roles.input_arms.push_back(iota_sites(0, spec.m_in));
      roles.input_arms.push_back(iota_sites(spec.m_in, spec.m_in));
      const ModeIndex centre = 2 * spec.m_in;
      roles.junction = centre;
      roles.output_arms.push_back(iota_sites(centre + 1, spec.m_out));
      roles.output_arms.push_back(iota_sites(centre + 1 + spec.m_out, spec.m_out));
      break;
    }
  }
  return roles;
}

// Bonds of a chain/y/star network: input arm, junction fan-out, arms.
void fill_branched_bonds(const NetworkSpec& spec, const SiteRoles& roles, Matrix& v) {
  const std::size_t length = spec.transmission_length();
  const auto arms = static_cast<double>(spec.output_arm_count());
  const bool engineered = spec.profile == CouplingProfile::engineered;
  const double uniform = 0.5 * spec.c;

  const auto& input = roles.input_arms.front();
  for (std::size_t p = 1; p < spec.m_in; ++p) {
    set_bond(v, input[p - 1], input[p], engineered ? sqrt_law_bond(spec.c, length, p) : uniform);
  }
  const double fan_out =
      engineered ? sqrt_law_bond(spec.c, length, spec.m_in) / std::sqrt(arms) : uniform;
  for (const auto& arm : roles.output_arms) {
    set_bond(v, input.back(), arm.front(), fan_out);
    for (std::size_t k = 0; k + 1 < arm.size(); ++k) {
      const std::size_t position = spec.m_in + k + 1;
      set_bond(v, arm[k], arm[k + 1],
               engineered ? sqrt_law_bond(spec.c, length, position) : uniform);
    }
  }
}

// Bonds of the x network. Along the symmetric chain the input site p has
// chain position p + 1, the centre m_in + 1 and output site k position
// m_in + 2 + k. The four central bonds carry 1/sqrt(2) of the chain bond
// because the symmetric combination of two sites couples with sqrt(2).
void fill_x_bonds(const NetworkSpec& spec, const SiteRoles& roles, Matrix& v) {
  const std::size_t length = spec.transmission_length();
  const bool engineered = spec.profile == CouplingProfile::engineered;
  const double uniform = 0.5 * spec.c;
  const ModeIndex centre = *roles.junction;
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

  for (const auto& arm : roles.input_arms) {
    for (std::size_t p = 0; p + 1 < arm.size(); ++p) {
      set_bond(v, arm[p], arm[p + 1], engineered ? sqrt_law_bond(spec.c, length, p + 1) : uniform);
    }
    set_bond(v, arm.back(), centre,
             engineered ? sqrt_law_bond(spec.c, length, spec.m_in) * inv_sqrt2 : uniform);
  }
  for (const auto& arm : roles.output_arms) {
    set_bond(v, centre, arm.front(),
             engineered ? sqrt_law_bond(spec.c, length, spec.m_in + 1) * inv_sqrt2 : uniform);
    for (std::size_t k = 0; k + 1 < arm.size(); ++k) {
      set_bond(v, arm[k], arm[k + 1],
               engineered ? sqrt_law_bond(spec.c, length, spec.m_in + 2 + k) : uniform);
    }
  }
}

// Mixes same-position sites of `family` (arms of equal length) with the
// real Fourier basis. Writes into the q block `o` and records the chain
// and decoupled blocks.
void mix_arm_family(const std::vector<std::vector<ModeIndex>>& family, Matrix& o,
                    std::vector<ModeIndex>& uniform_arm,
                    std::vector<std::vector<ModeIndex>>& decoupled) {
  const std::size_t count = family.size();
  const Matrix basis = real_fourier_basis(count);
  const std::size_t length = family.front().size();
  for (std::size_t p = 0; p < length; ++p) {
    for (std::size_t j = 0; j < count; ++j) {
      const auto row = static_cast<Eigen::Index>(family[j][p]);
      o.row(row).setZero();
      for (std::size_t a = 0; a < count; ++a) {
        o(row, static_cast<Eigen::Index>(family[a][p])) =
            basis(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(a));
      }
    }
  }
  uniform_arm = family.front();
  for (std::size_t j = 1; j < count; ++j) {
    decoupled.push_back(family[j]);
  }
}

}  // namespace

std::string_view to_string(NetworkKind kind) {
  switch (kind) {
    case NetworkKind::chain: return "chain";
    case NetworkKind::y: return "y";
    case NetworkKind::star: return "star";
    case NetworkKind::x: return "x";
  }
  return "?";
}

std::string_view to_string(CouplingProfile profile) {
  return profile == CouplingProfile::engineered ? "engineered" : "uniform";
}

std::string_view to_string(DiagonalMode mode) {
  return mode == DiagonalMode::unit ? "unit" : "cloning";
}

NetworkKind parse_network_kind(std::string_view text) {
  if (text == "chain") return NetworkKind::chain;
  if (text == "y") return NetworkKind::y;
  if (text == "star") return NetworkKind::star;
  if (text == "x") return NetworkKind::x;
  throw std::invalid_argument("unknown network kind '" + std::string(text) + "'");
}

CouplingProfile parse_coupling_profile(std::string_view text) {
  if (text == "engineered") return CouplingProfile::engineered;
  if (text == "uniform") return CouplingProfile::uniform;
  throw std::invalid_argument("unknown coupling profile '" + std::string(text) + "'");
}

DiagonalMode parse_diagonal_mode(std::string_view text) {
  if (text == "unit") return DiagonalMode::unit;
  if (text == "cloning") return DiagonalMode::cloning;
  throw std::invalid_argument("unknown diagonal mode '" + std::string(text) + "'");
}

NetworkSpec NetworkSpec::chain(std::size_t length, double c, CouplingProfile profile,
                               DiagonalMode diagonal) {
  if (length < 2) {
    throw std::invalid_argument("NetworkSpec::chain: length must be >= 2");
  }
  return {NetworkKind::chain, 1, length - 1, 1, c, profile, diagonal};
}

NetworkSpec NetworkSpec::y_shape(std::size_t m_in, std::size_t m_out, double c,
                                 DiagonalMode diagonal) {
  return {NetworkKind::y, m_in, m_out, 2, c, CouplingProfile::engineered, diagonal};
}

NetworkSpec NetworkSpec::star(std::size_t n_arms, std::size_t m_in, std::size_t m_out, double c,
                              DiagonalMode diagonal) {
  return {NetworkKind::star, m_in, m_out, n_arms, c, CouplingProfile::engineered, diagonal};
}

NetworkSpec NetworkSpec::x_shape(std::size_t m_in, std::size_t m_out, double c,
                                 DiagonalMode diagonal) {
  return {NetworkKind::x, m_in, m_out, 2, c, CouplingProfile::engineered, diagonal};
}

void NetworkSpec::validate() const {
  if (m_in == 0 || m_out == 0) {
    throw std::invalid_argument("NetworkSpec: m_in and m_out must be >= 1");
  }
  if (!std::isfinite(c) || c <= 0.0) {
    throw std::invalid_argument("NetworkSpec: coupling scale c must be > 0");
  }
  switch (kind) {
    case NetworkKind::chain:
      if (n_arms != 1) throw std::invalid_argument("NetworkSpec: chain requires n_arms = 1");
      break;
    case NetworkKind::y:
      if (n_arms != 2) throw std::invalid_argument("NetworkSpec: y requires n_arms = 2");
      break;
    case NetworkKind::star:
      if (n_arms < 2) throw std::invalid_argument("NetworkSpec: star requires n_arms >= 2");
      break;
    case NetworkKind::x:
      if (n_arms != 2) throw std::invalid_argument("NetworkSpec: x requires n_arms = 2");
      break;
  }
}

std::size_t NetworkSpec::n_modes() const {
  switch (kind) {
    case NetworkKind::chain: return m_in + m_out;
    case NetworkKind::y:
    case NetworkKind::star: return m_in + n_arms * m_out;
    case NetworkKind::x: return 2 * m_in + 1 + 2 * m_out;
  }
  return 0;
}

std::size_t NetworkSpec::transmission_length() const {
  return kind == NetworkKind::x ? m_in + 1 + m_out : m_in + m_out;
}

std::size_t NetworkSpec::output_arm_count() const {
  return kind == NetworkKind::chain ? 1 : n_arms;
}

std::size_t NetworkSpec::input_arm_count() const {
  return kind == NetworkKind::x ? 2 : 1;
}

double NetworkSpec::engineered_diagonal() const {
  if (diagonal == DiagonalMode::unit) {
    return 1.0;
  }
  const bool even = transmission_length() % 2 == 0;
  return 0.25 * (3.0 - (even ? 1.0 : -1.0)) * c;
}

ModeIndex SiteRoles::input_head(std::size_t arm) const {
  return input_arms.at(arm).front();
}

ModeIndex SiteRoles::arm_end(std::size_t arm) const {
  return output_arms.at(arm).back();
}

ModeIndex SiteRoles::arm_site(std::size_t arm, std::size_t position) const {
  return output_arms.at(arm).at(position);
}

std::vector<ModeIndex> SiteRoles::arm_ends() const {
  std::vector<ModeIndex> ends;
  for (const auto& arm : output_arms) {
    ends.push_back(arm.back());
  }
  return ends;
}

CouplingModel::CouplingModel(Matrix potential, SiteRoles roles)
    : potential_(std::move(potential)), roles_(std::move(roles)) {
  if (potential_.rows() == 0 || potential_.rows() != potential_.cols()) {
    throw std::invalid_argument("CouplingModel: potential must be square and non-empty");
  }
  if ((potential_ - potential_.transpose()).cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("CouplingModel: potential must be symmetric");
  }
  for (Eigen::Index i = 0; i < potential_.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < potential_.cols(); ++j) {
      if (potential_(i, j) != 0.0) {
        bonds_.push_back({static_cast<ModeIndex>(i), static_cast<ModeIndex>(j)});
      }
    }
  }
}

CouplingModel::CouplingModel(Matrix potential, SiteRoles roles, std::vector<Bond> bonds)
    : potential_(std::move(potential)), roles_(std::move(roles)), bonds_(std::move(bonds)) {
  if (potential_.rows() == 0 || potential_.rows() != potential_.cols()) {
    throw std::invalid_argument("CouplingModel: potential must be square and non-empty");
  }
  if ((potential_ - potential_.transpose()).cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("CouplingModel: potential must be symmetric");
  }
  Matrix mask = Matrix::Zero(potential_.rows(), potential_.cols());
  for (const Bond& bond : bonds_) {
    if (bond.a >= bond.b || bond.b >= n_modes()) {
      throw std::invalid_argument("CouplingModel: malformed bond");
    }
    mask(static_cast<Eigen::Index>(bond.a), static_cast<Eigen::Index>(bond.b)) = 1.0;
    mask(static_cast<Eigen::Index>(bond.b), static_cast<Eigen::Index>(bond.a)) = 1.0;
  }
  for (Eigen::Index i = 0; i < potential_.rows(); ++i) {
    for (Eigen::Index j = 0; j < potential_.cols(); ++j) {
      if (i != j && mask(i, j) == 0.0 && potential_(i, j) != 0.0) {
        throw std::invalid_argument("CouplingModel: off-diagonal entry outside the bond list");
      }
    }
  }
}

double CouplingModel::bond_value(const Bond& bond) const {
  return potential_(static_cast<Eigen::Index>(bond.a), static_cast<Eigen::Index>(bond.b));
}

CouplingModel CouplingModel::with_bond_value(const Bond& bond, double value) const {
  if (std::find(bonds_.begin(), bonds_.end(), bond) == bonds_.end()) {
    throw std::invalid_argument("CouplingModel::with_bond_value: not a bond of this model");
  }
  Matrix v = potential_;
  set_bond(v, bond.a, bond.b, value);
  return CouplingModel(std::move(v), roles_, bonds_);
}

CouplingModel CouplingModel::with_diagonal(double value) const {
  Matrix v = potential_;
  v.diagonal().setConstant(value);
  return CouplingModel(std::move(v), roles_, bonds_);
}

CouplingModel build_network(const NetworkSpec& spec) {
  spec.validate();
  const auto n = static_cast<Eigen::Index>(spec.n_modes());
  SiteRoles roles = layout(spec);
  Matrix v = Matrix::Zero(n, n);
  if (spec.kind == NetworkKind::x) {
    fill_x_bonds(spec, roles, v);
  } else {
    fill_branched_bonds(spec, roles, v);
  }

  if (spec.diagonal == DiagonalMode::cloning || spec.profile == CouplingProfile::engineered) {
    v.diagonal().setConstant(spec.engineered_diagonal());
  } else {
    // Uniform chain convention: 1 + (c/2) per attached bond.
    for (Eigen::Index i = 0; i < n; ++i) {
      double degree = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j != i && v(i, j) != 0.0) degree += 1.0;
      }
      v(i, i) = 1.0 + 0.5 * spec.c * degree;
    }
  }
  return CouplingModel(std::move(v), std::move(roles));
}

Matrix real_fourier_basis(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("real_fourier_basis: n must be >= 1");
  }
  const auto ni = static_cast<Eigen::Index>(n);
  const double dn = static_cast<double>(n);
  Matrix f(ni, ni);
  f.row(0).setConstant(1.0 / std::sqrt(dn));
  Eigen::Index row = 1;
  for (std::size_t k = 1; 2 * k < n; ++k) {
    for (Eigen::Index m = 0; m < ni; ++m) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k * static_cast<std::size_t>(m)) / dn;
      f(row, m) = std::sqrt(2.0 / dn) * std::cos(angle);
      f(row + 1, m) = std::sqrt(2.0 / dn) * std::sin(angle);
    }
    row += 2;
  }
  if (n % 2 == 0) {
    for (Eigen::Index m = 0; m < ni; ++m) {
      f(row, m) = (m % 2 == 0 ? 1.0 : -1.0) / std::sqrt(dn);
    }
  }
  return f;
}

Matrix DecouplingTransform::position_block() const {
  const auto n = static_cast<Eigen::Index>(n_modes());
  return orthogonal.topLeftCorner(n, n);
}

DecouplingTransform decoupling_transform(const NetworkSpec& spec) {
  spec.validate();
  if (spec.kind == NetworkKind::chain) {
    throw std::invalid_argument("decoupling_transform: a chain has no arms to decouple");
  }
  const SiteRoles roles = layout(spec);
  const auto n = static_cast<Eigen::Index>(spec.n_modes());
  Matrix o = Matrix::Identity(n, n);

  DecouplingTransform out;
  std::vector<ModeIndex> input_chain;
  std::vector<ModeIndex> output_chain;
  if (spec.kind == NetworkKind::x) {
    mix_arm_family(roles.input_arms, o, input_chain, out.decoupled_blocks);
  } else {
    input_chain = roles.input_arms.front();
  }
  mix_arm_family(roles.output_arms, o, output_chain, out.decoupled_blocks);

  out.coupled_chain = input_chain;
  if (spec.kind == NetworkKind::x) {
    out.coupled_chain.push_back(*roles.junction);
  }
  out.coupled_chain.insert(out.coupled_chain.end(), output_chain.begin(), output_chain.end());

  out.orthogonal = Matrix::Zero(2 * n, 2 * n);
  out.orthogonal.topLeftCorner(n, n) = o;
  out.orthogonal.bottomRightCorner(n, n) = o;
  return out;
}

CouplingModel conjugate_potential(const CouplingModel& model,
                                  const DecouplingTransform& transform) {
  if (transform.n_modes() != model.n_modes()) {
    throw std::invalid_argument("conjugate_potential: transform has " +
                                std::to_string(transform.n_modes()) + " modes, model has " +
                                std::to_string(model.n_modes()));
  }
  const Matrix o = transform.position_block();
  const Matrix raw = o * model.potential() * o.transpose();
  Matrix v = 0.5 * (raw + raw.transpose());
  return CouplingModel(std::move(v), model.roles());
}

CovarianceMatrix transform_covariance(const CovarianceMatrix& gamma,
                                      const DecouplingTransform& transform) {
  if (transform.n_modes() != gamma.n_modes()) {
    throw std::invalid_argument("transform_covariance: dimension mismatch");
  }
  return CovarianceMatrix::symmetrized(transform.orthogonal * gamma.matrix() *
                                       transform.orthogonal.transpose());
}

}  // namespace oscnet
