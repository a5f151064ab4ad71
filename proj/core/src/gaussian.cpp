#include "oscnet/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>

#include "oscnet/error.hpp"

namespace oscnet {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

void require_z(double z, const char* what) {
  if (!std::isfinite(z) || z < 1.0) {
    throw std::invalid_argument(std::string(what) + ": z must be finite and >= 1, got " +
                                std::to_string(z));
  }
}

void require_distinct(std::span<const ModeIndex> modes, const char* what) {
  std::set<ModeIndex> seen(modes.begin(), modes.end());
  if (seen.size() != modes.size()) {
    throw std::invalid_argument(std::string(what) + ": duplicate mode index");
  }
}

// Eigenvalues of -(sigma gamma)^2 through the general real eigensolver.
// Used only when gamma is not positive definite.
std::vector<double> spectrum_by_eigensolve(const Matrix& gamma) {
  const auto n = static_cast<std::size_t>(gamma.rows() / 2);
  const Matrix sg = symplectic_form(n) * gamma;
  const Matrix m = -(sg * sg);
  Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symplectic_spectrum: eigensolver did not converge");
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    values.push_back(solver.eigenvalues()[i].real());
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  std::vector<double> mu;
  mu.reserve(n);
  for (std::size_t i = 0; i < values.size(); i += 2) {
    double v = values[i];
    if (v < -kPhysicalityTolerance) {
      throw NumericalError("symplectic_spectrum: -(sigma gamma)^2 has eigenvalue " +
                           std::to_string(v));
    }
    mu.push_back(std::sqrt(std::max(v, 0.0)));
  }
  return mu;
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Matrix data) : data_(std::move(data)) {
  if (data_.rows() == 0 || data_.rows() != data_.cols() || data_.rows() % 2 != 0) {
    throw std::invalid_argument("CovarianceMatrix: expected a non-empty 2n x 2n matrix");
  }
  if (!data_.allFinite()) {
    throw std::invalid_argument("CovarianceMatrix: non-finite entry");
  }
  const double scale = std::max(1.0, data_.cwiseAbs().maxCoeff());
  const double asym = (data_ - data_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance * scale) {
    throw std::invalid_argument("CovarianceMatrix: matrix is not symmetric (deviation " +
                                std::to_string(asym) + ")");
  }
}

CovarianceMatrix CovarianceMatrix::symmetrized(const Matrix& data) {
  if (data.rows() == 0 || data.rows() != data.cols() || data.rows() % 2 != 0) {
    throw std::invalid_argument("CovarianceMatrix: expected a non-empty 2n x 2n matrix");
  }
  Matrix sym = 0.5 * (data + data.transpose());
  return CovarianceMatrix(std::move(sym), Unchecked{});
}

double CovarianceMatrix::qq(ModeIndex i, ModeIndex j) const {
  return data_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

double CovarianceMatrix::pp(ModeIndex i, ModeIndex j) const {
  const auto n = n_modes_i();
  return data_(n + static_cast<Eigen::Index>(i), n + static_cast<Eigen::Index>(j));
}

double CovarianceMatrix::qp(ModeIndex i, ModeIndex j) const {
  return data_(static_cast<Eigen::Index>(i), n_modes_i() + static_cast<Eigen::Index>(j));
}

Matrix symplectic_form(std::size_t n_modes) {
  const auto n = static_cast<Eigen::Index>(n_modes);
  Matrix sigma = Matrix::Zero(2 * n, 2 * n);
  sigma.topRightCorner(n, n).setIdentity();
  sigma.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return sigma;
}

ModePartition::ModePartition(std::vector<ModeIndex> side_a, std::vector<ModeIndex> side_b)
    : side_a_(std::move(side_a)), side_b_(std::move(side_b)) {
  if (side_a_.empty() || side_b_.empty()) {
    throw std::invalid_argument("ModePartition: both sides must be non-empty");
  }
  std::vector<ModeIndex> all = modes();
  require_distinct(all, "ModePartition");
}

std::vector<ModeIndex> ModePartition::modes() const {
  std::vector<ModeIndex> all = side_a_;
  all.insert(all.end(), side_b_.begin(), side_b_.end());
  return all;
}

std::size_t ModePartition::max_mode() const {
  const auto all = modes();
  return *std::max_element(all.begin(), all.end());
}

InitialExcitation InitialExcitation::squeezed(double z, ModeIndex site) {
  return {ExcitationKind::squeezed, z, {site}};
}

InitialExcitation InitialExcitation::thermal(double z, ModeIndex site) {
  return {ExcitationKind::thermal, z, {site}};
}

InitialExcitation InitialExcitation::two_mode_squeezed(double z, ModeIndex first,
                                                       ModeIndex second) {
  return {ExcitationKind::two_mode_squeezed, z, {first, second}};
}

std::size_t InitialExcitation::arity() const {
  return kind == ExcitationKind::two_mode_squeezed ? 2 : 1;
}

CovarianceMatrix vacuum_cov(std::size_t n_modes) {
  if (n_modes == 0) {
    throw std::invalid_argument("vacuum_cov: n_modes must be >= 1");
  }
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  return CovarianceMatrix(Matrix::Identity(dim, dim));
}

CovarianceMatrix single_mode_squeezed_cov(double z) {
  require_z(z, "single_mode_squeezed_cov");
  Matrix g = Matrix::Zero(2, 2);
  g(0, 0) = z;
  g(1, 1) = 1.0 / z;
  return CovarianceMatrix(std::move(g));
}

CovarianceMatrix single_mode_thermal_cov(double z) {
  require_z(z, "single_mode_thermal_cov");
  Matrix g = Matrix::Identity(2, 2) * z;
  return CovarianceMatrix(std::move(g));
}

CovarianceMatrix two_mode_squeezed_cov(double z) {
  require_z(z, "two_mode_squeezed_cov");
  const double ch = z;
  const double sh = std::sqrt(z * z - 1.0);  // sinh(arccosh z)
  Matrix g = Matrix::Identity(4, 4) * ch;
  g(0, 1) = g(1, 0) = sh;
  g(2, 3) = g(3, 2) = -sh;
  return CovarianceMatrix(std::move(g));
}

CovarianceMatrix excitation_cov(const InitialExcitation& excitation) {
  switch (excitation.kind) {
    case ExcitationKind::squeezed:
      return single_mode_squeezed_cov(excitation.z);
    case ExcitationKind::thermal:
      return single_mode_thermal_cov(excitation.z);
    case ExcitationKind::two_mode_squeezed:
      return two_mode_squeezed_cov(excitation.z);
  }
  throw std::invalid_argument("excitation_cov: unknown excitation kind");
}

CovarianceMatrix embed_excitation(const CovarianceMatrix& background,
                                  const InitialExcitation& excitation) {
  const auto& sites = excitation.target_sites;
  if (sites.size() != excitation.arity()) {
    throw std::invalid_argument("embed_excitation: wrong number of target sites");
  }
  require_distinct(sites, "embed_excitation");
  const std::size_t n = background.n_modes();
  for (ModeIndex s : sites) {
    if (s >= n) {
      throw std::invalid_argument("embed_excitation: target site " + std::to_string(s) +
                                  " out of range for " + std::to_string(n) + " modes");
    }
  }
  const CovarianceMatrix local = excitation_cov(excitation);
  const auto k = static_cast<Eigen::Index>(sites.size());
  const auto ni = static_cast<Eigen::Index>(n);

  // Global row/column of local quadrature index.
  auto global = [&](Eigen::Index local_index) {
    const bool momentum = local_index >= k;
    const auto site = static_cast<Eigen::Index>(sites[static_cast<std::size_t>(local_index % k)]);
    return momentum ? ni + site : site;
  };

  Matrix out = background.matrix();
  for (Eigen::Index a = 0; a < 2 * k; ++a) {
    const auto row = global(a);
    out.row(row).setZero();
    out.col(row).setZero();
  }
  for (Eigen::Index a = 0; a < 2 * k; ++a) {
    for (Eigen::Index b = 0; b < 2 * k; ++b) {
      out(global(a), global(b)) = local.matrix()(a, b);
    }
  }
  return CovarianceMatrix(std::move(out));
}

CovarianceMatrix reduce_modes(const CovarianceMatrix& gamma, std::span<const ModeIndex> keep) {
  if (keep.empty()) {
    throw std::invalid_argument("reduce_modes: keep-set is empty");
  }
  require_distinct(keep, "reduce_modes");
  const std::size_t n = gamma.n_modes();
  const auto ni = static_cast<Eigen::Index>(n);
  const auto k = static_cast<Eigen::Index>(keep.size());
  std::vector<Eigen::Index> rows;
  rows.reserve(keep.size() * 2);
  for (ModeIndex m : keep) {
    if (m >= n) {
      throw std::invalid_argument("reduce_modes: mode " + std::to_string(m) + " out of range");
    }
    rows.push_back(static_cast<Eigen::Index>(m));
  }
  for (ModeIndex m : keep) {
    rows.push_back(ni + static_cast<Eigen::Index>(m));
  }
  Matrix out(2 * k, 2 * k);
  for (Eigen::Index a = 0; a < 2 * k; ++a) {
    for (Eigen::Index b = 0; b < 2 * k; ++b) {
      out(a, b) = gamma.matrix()(rows[static_cast<std::size_t>(a)],
                                 rows[static_cast<std::size_t>(b)]);
    }
  }
  return CovarianceMatrix(std::move(out));
}

std::vector<double> symplectic_spectrum(const CovarianceMatrix& gamma) {
  const std::size_t n = gamma.n_modes();
  // For gamma = L L^T, sigma gamma is similar to L^T sigma L, a real
  // antisymmetric matrix whose singular values are the symplectic
  // eigenvalues, each twice.
  Eigen::LLT<Matrix> chol(gamma.matrix());
  if (chol.info() != Eigen::Success) {
    return spectrum_by_eigensolve(gamma.matrix());
  }
  const Matrix lower = chol.matrixL();
  const Matrix k = lower.transpose() * symplectic_form(n) * lower;
  Eigen::BDCSVD<Matrix> svd(k);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("symplectic_spectrum: SVD did not converge");
  }
  const Vector& sv = svd.singularValues();  // descending
  std::vector<double> mu;
  mu.reserve(n);
  for (Eigen::Index i = 0; i < sv.size(); i += 2) {
    mu.push_back(sv[i]);
  }
  return mu;
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& gamma, const ModePartition& part) {
  const std::size_t n = gamma.n_modes();
  if (part.max_mode() >= n) {
    throw std::invalid_argument("partial_transpose: partition references a missing mode");
  }
  Vector sign = Vector::Ones(static_cast<Eigen::Index>(2 * n));
  for (ModeIndex b : part.side_b()) {
    sign[static_cast<Eigen::Index>(n + b)] = -1.0;
  }
  Matrix out = sign.asDiagonal() * gamma.matrix() * sign.asDiagonal();
  return CovarianceMatrix(std::move(out));
}

double purity_defect(const CovarianceMatrix& gamma) {
  const std::size_t n = gamma.n_modes();
  const Matrix gs = gamma.matrix() * symplectic_form(n);
  const Matrix witness = -(gs * gs) - Matrix::Identity(gs.rows(), gs.cols());
  return witness.cwiseAbs().maxCoeff();
}

bool physicality_check(const CovarianceMatrix& gamma) {
  std::vector<double> mu;
  try {
    mu = symplectic_spectrum(gamma);
  } catch (const NumericalError&) {
    return false;
  }
  return mu.back() >= 1.0 - kPhysicalityTolerance;
}

}  // namespace oscnet
