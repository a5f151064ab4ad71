#include "oscnet/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "oscnet/error.hpp"

namespace oscnet {

NormalModes::NormalModes(const CouplingModel& model) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(model.potential());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("NormalModes: eigendecomposition of the potential failed");
  }
  frequencies_ = solver.eigenvalues();
  modes_ = solver.eigenvectors();
}

Propagator NormalModes::propagator(double t) const {
  if (!std::isfinite(t) || t < 0.0) {
    throw std::invalid_argument("propagator: time must be finite and >= 0");
  }
  const auto n = static_cast<Eigen::Index>(n_modes());
  const Vector wt = frequencies_ * t;
  const Matrix cos_part = modes_ * wt.array().cos().matrix().asDiagonal() * modes_.transpose();
  const Matrix sin_part = modes_ * wt.array().sin().matrix().asDiagonal() * modes_.transpose();

  Propagator out{t, Matrix(2 * n, 2 * n)};
  out.matrix.topLeftCorner(n, n) = cos_part;
  out.matrix.topRightCorner(n, n) = sin_part;
  out.matrix.bottomLeftCorner(n, n) = -sin_part;
  out.matrix.bottomRightCorner(n, n) = cos_part;
  return out;
}

CovarianceMatrix NormalModes::evolve(const CovarianceMatrix& gamma0, double t) const {
  if (gamma0.n_modes() != n_modes()) {
    throw std::invalid_argument("evolve: state has " + std::to_string(gamma0.n_modes()) +
                                " modes, model has " + std::to_string(n_modes()));
  }
  const Propagator s = propagator(t);
  return CovarianceMatrix::symmetrized(s.matrix * gamma0.matrix() * s.matrix.transpose());
}

CovarianceMatrix NormalModes::evolve_reduced(const CovarianceMatrix& gamma0, double t,
                                             std::span<const ModeIndex> keep) const {
  if (gamma0.n_modes() != n_modes()) {
    throw std::invalid_argument("evolve_reduced: dimension mismatch");
  }
  if (keep.empty()) {
    throw std::invalid_argument("evolve_reduced: keep-set is empty");
  }
  if (!std::isfinite(t) || t < 0.0) {
    throw std::invalid_argument("evolve_reduced: time must be finite and >= 0");
  }
  const auto n = static_cast<Eigen::Index>(n_modes());
  const auto k = static_cast<Eigen::Index>(keep.size());
  Matrix rows(k, n);
  for (Eigen::Index a = 0; a < k; ++a) {
    const auto m = static_cast<Eigen::Index>(keep[static_cast<std::size_t>(a)]);
    if (m >= n) {
      throw std::invalid_argument("evolve_reduced: mode out of range");
    }
    rows.row(a) = modes_.row(m);
  }
  const Vector wt = frequencies_ * t;
  const Matrix cos_rows = rows * wt.array().cos().matrix().asDiagonal() * modes_.transpose();
  const Matrix sin_rows = rows * wt.array().sin().matrix().asDiagonal() * modes_.transpose();
  Matrix s(2 * k, 2 * n);
  s.topLeftCorner(k, n) = cos_rows;
  s.topRightCorner(k, n) = sin_rows;
  s.bottomLeftCorner(k, n) = -sin_rows;
  s.bottomRightCorner(k, n) = cos_rows;
  return CovarianceMatrix::symmetrized(s * gamma0.matrix() * s.transpose());
}

double NormalModes::orthogonality_defect() const {
  const Matrix gram = modes_.transpose() * modes_;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

Propagator propagator_at(const CouplingModel& model, double t) {
  return NormalModes(model).propagator(t);
}

CovarianceMatrix evolve(const CovarianceMatrix& gamma0, const CouplingModel& model, double t) {
  if (gamma0.n_modes() != model.n_modes()) {
    throw std::invalid_argument("evolve: state has " + std::to_string(gamma0.n_modes()) +
                                " modes, model has " + std::to_string(model.n_modes()));
  }
  return NormalModes(model).evolve(gamma0, t);
}

std::vector<CovarianceMatrix> time_series(const CovarianceMatrix& gamma0,
                                          const CouplingModel& model,
                                          std::span<const double> t_grid) {
  if (t_grid.empty()) {
    throw std::invalid_argument("time_series: empty time grid");
  }
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (!std::isfinite(t_grid[k]) || t_grid[k] < 0.0) {
      throw std::invalid_argument("time_series: times must be finite and >= 0");
    }
    if (k > 0 && !(t_grid[k] > t_grid[k - 1])) {
      throw std::invalid_argument("time_series: grid must be strictly increasing");
    }
  }
  if (gamma0.n_modes() != model.n_modes()) {
    throw std::invalid_argument("time_series: dimension mismatch");
  }
  const NormalModes modes(model);
  std::vector<CovarianceMatrix> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    out.push_back(modes.evolve(gamma0, t));
  }
  return out;
}

double network_energy(const CovarianceMatrix& gamma, const CouplingModel& model) {
  if (gamma.n_modes() != model.n_modes()) {
    throw std::invalid_argument("network_energy: dimension mismatch");
  }
  const Matrix& v = model.potential();
  const Matrix& t = model.kinetic();
  const double raw = 0.25 * ((v * gamma.qq_block()).trace() + (t * gamma.pp_block()).trace());
  const double vacuum = 0.25 * (v.trace() + t.trace());
  return raw - vacuum;
}

}  // namespace oscnet
