// Copyright 2026 The QSL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsl/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace qsl {

namespace {

std::string dim_message(const char* what, std::size_t got, std::size_t want) {
  return std::string(what) + ": got dimension " + std::to_string(got) +
         ", layout requires " + std::to_string(want);
}

bool is_diagonal(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j && m(i, j) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

std::shared_ptr<const Eigensystem> diagonalize(const CMatrix& h) {
  const auto n = h.rows();
  auto eig = std::make_shared<Eigensystem>();
  if (is_diagonal(h)) {
    // Sorting the diagonal is exact; no need for the iterative solver.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return h(a, a).real() < h(b, b).real();
    });
    eig->values.resize(n);
    eig->vectors = CMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto src = order[static_cast<std::size_t>(j)];
      eig->values(j) = h(src, src).real();
      eig->vectors(src, j) = 1.0;
    }
    return eig;
  }
  const CMatrix herm = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("Hermitian eigensolver did not converge");
  }
  eig->values = solver.eigenvalues();
  eig->vectors = solver.eigenvectors();
  return eig;
}

}  // namespace

// ---------------------------------------------------------------------------
// SubsystemLayout

SubsystemLayout::SubsystemLayout(std::vector<std::size_t> dims,
                                 std::size_t dim_cap)
    : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw InvalidArgument("layout needs at least one subsystem");
  }
  for (std::size_t d : dims_) {
    if (d == 0) throw InvalidArgument("local dimension must be positive");
    if (total_dim_ > dim_cap / d) {
      throw InvalidArgument("total dimension exceeds cap of " +
                            std::to_string(dim_cap));
    }
    total_dim_ *= d;
  }
}

SubsystemLayout SubsystemLayout::uniform(std::size_t d, std::size_t m,
                                         std::size_t dim_cap) {
  return SubsystemLayout(std::vector<std::size_t>(m, d), dim_cap);
}

std::size_t SubsystemLayout::local_dim(std::size_t site) const {
  if (site >= dims_.size()) {
    throw InvalidArgument("site " + std::to_string(site) + " out of range for " +
                          std::to_string(dims_.size()) + " subsystems");
  }
  return dims_[site];
}

// ---------------------------------------------------------------------------
// PureState / DensityMatrix

PureState::PureState(SubsystemLayout layout, CVector amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (dim() != layout_.total_dim()) {
    throw InvalidArgument(dim_message("state", dim(), layout_.total_dim()));
  }
  const double norm = amplitudes_.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > tol::kConstruction) {
    throw InvariantViolation("state is not normalized (norm " +
                             std::to_string(norm) + ")");
  }
}

DensityMatrix::DensityMatrix(SubsystemLayout layout, CMatrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw InvalidArgument("density matrix must be square");
  }
  if (dim() != layout_.total_dim()) {
    throw InvalidArgument(dim_message("density matrix", dim(), layout_.total_dim()));
  }
  if (!matrix_.allFinite()) {
    throw InvariantViolation("density matrix has non-finite entries");
  }
  if (hermiticity_defect(matrix_) > tol::kConstruction) {
    throw InvariantViolation("density matrix is not Hermitian");
  }
  const Complex trace = matrix_.trace();
  if (std::abs(trace - 1.0) > tol::kConstruction) {
    throw InvariantViolation("density matrix trace is not 1 (" +
                             std::to_string(trace.real()) + ")");
  }
  const CMatrix herm = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eigensolver failed while checking positivity");
  }
  if (solver.eigenvalues().minCoeff() < -tol::kPsdSlack) {
    throw InvariantViolation("density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::projector(const PureState& state) {
  const CVector& a = state.amplitudes();
  return DensityMatrix(state.layout(), a * a.adjoint());
}

// ---------------------------------------------------------------------------
// Hamiltonian

Hamiltonian::Hamiltonian(SubsystemLayout layout, CMatrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw InvalidArgument("Hamiltonian must be square");
  }
  if (dim() != layout_.total_dim()) {
    throw InvalidArgument(dim_message("Hamiltonian", dim(), layout_.total_dim()));
  }
  if (!matrix_.allFinite()) {
    throw InvariantViolation("Hamiltonian has non-finite entries");
  }
  if (hermiticity_defect(matrix_) > tol::kConstruction) {
    throw InvariantViolation("Hamiltonian is not Hermitian");
  }
  eigen_ = diagonalize(matrix_);
}

Hamiltonian::Hamiltonian(SubsystemLayout layout, CMatrix matrix,
                         std::shared_ptr<const Eigensystem> eigen)
    : layout_(std::move(layout)),
      matrix_(std::move(matrix)),
      eigen_(std::move(eigen)) {}

bool Hamiltonian::is_ground_shifted() const {
  return std::abs(ground_energy()) <= tol::kGroundShift;
}

void Hamiltonian::require_ground_shifted(const char* context) const {
  if (!is_ground_shifted()) {
    throw InvariantViolation(std::string(context) +
                             ": Hamiltonian is not ground-shifted (ground energy " +
                             std::to_string(ground_energy()) + ")");
  }
}

Hamiltonian ground_shift(const Hamiltonian& h) {
  const double e0 = h.ground_energy();
  CMatrix shifted = h.matrix();
  shifted.diagonal().array() -= e0;
  auto eig = std::make_shared<Eigensystem>(h.eigensystem());
  eig->values.array() -= e0;
  // Pin the minimum so the shifted ground energy is exactly zero.
  eig->values(0) = 0.0;
  return Hamiltonian(h.layout(), std::move(shifted), std::move(eig));
}

// ---------------------------------------------------------------------------
// SeparableEnsemble

SeparableEnsemble::SeparableEnsemble(std::vector<double> weights,
                                     std::vector<std::vector<DensityMatrix>> terms)
    : weights_(std::move(weights)),
      terms_(std::move(terms)),
      layout_([this] {
        if (terms_.empty() || terms_.front().empty()) {
          throw InvalidArgument("ensemble needs at least one term with one factor");
        }
        std::vector<std::size_t> dims;
        for (const auto& f : terms_.front()) dims.push_back(f.dim());
        return SubsystemLayout(std::move(dims));
      }()) {
  if (weights_.size() != terms_.size()) {
    throw InvalidArgument("ensemble weights and terms differ in length");
  }
  double total = 0.0;
  for (double p : weights_) {
    if (!(p > 0.0)) throw InvariantViolation("ensemble weights must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > tol::kConstruction) {
    throw InvariantViolation("ensemble weights do not sum to 1");
  }
  const auto& dims = layout_.dims();
  for (const auto& term : terms_) {
    if (term.size() != dims.size()) {
      throw InvalidArgument("every ensemble term needs " +
                            std::to_string(dims.size()) + " factors");
    }
    for (std::size_t k = 0; k < term.size(); ++k) {
      if (term[k].dim() != dims[k]) {
        throw InvalidArgument(dim_message("ensemble factor", term[k].dim(), dims[k]));
      }
    }
  }
}

DensityMatrix SeparableEnsemble::assemble() const {
  CMatrix total = CMatrix::Zero(static_cast<Eigen::Index>(layout_.total_dim()),
                                static_cast<Eigen::Index>(layout_.total_dim()));
  for (std::size_t n = 0; n < terms_.size(); ++n) {
    std::vector<CMatrix> factors;
    factors.reserve(terms_[n].size());
    for (const auto& f : terms_[n]) factors.push_back(f.matrix());
    total += weights_[n] * kron_all(factors);
  }
  return DensityMatrix(layout_, std::move(total));
}

// ---------------------------------------------------------------------------
// Operations

PureState tensor_product(std::span<const CVector> factors) {
  if (factors.empty()) throw InvalidArgument("tensor_product of no factors");
  std::vector<std::size_t> dims;
  for (const auto& f : factors) dims.push_back(static_cast<std::size_t>(f.size()));
  return tensor_product(factors, SubsystemLayout(std::move(dims)));
}

PureState tensor_product(std::span<const CVector> factors,
                         const SubsystemLayout& layout) {
  if (factors.empty()) throw InvalidArgument("tensor_product of no factors");
  if (factors.size() != layout.num_subsystems()) {
    throw InvalidArgument("tensor_product: " + std::to_string(factors.size()) +
                          " factors for " + std::to_string(layout.num_subsystems()) +
                          " subsystems");
  }
  CVector out = CVector::Ones(1);
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const CVector& f = factors[k];
    if (static_cast<std::size_t>(f.size()) != layout.local_dim(k)) {
      throw InvalidArgument(dim_message("tensor factor", static_cast<std::size_t>(f.size()),
                                        layout.local_dim(k)));
    }
    if (std::abs(f.norm() - 1.0) > tol::kConstruction) {
      throw InvariantViolation("tensor factor " + std::to_string(k) +
                               " is not normalized");
    }
    CVector next = Eigen::kroneckerProduct(out, f).eval();
    out = std::move(next);
  }
  return PureState(layout, std::move(out));
}

CMatrix kron_all(std::span<const CMatrix> factors) {
  CMatrix out = CMatrix::Ones(1, 1);
  for (const auto& f : factors) {
    CMatrix next = Eigen::kroneckerProduct(out, f).eval();
    out = std::move(next);
  }
  return out;
}

CMatrix embed_local(const CMatrix& op, std::size_t site,
                    const SubsystemLayout& layout) {
  const std::size_t d = layout.local_dim(site);
  if (static_cast<std::size_t>(op.rows()) != d || op.rows() != op.cols()) {
    throw InvalidArgument(dim_message("local operator", static_cast<std::size_t>(op.rows()), d));
  }
  if (hermiticity_defect(op) > tol::kConstruction) {
    throw InvariantViolation("local operator is not Hermitian");
  }
  std::size_t left = 1;
  for (std::size_t k = 0; k < site; ++k) left *= layout.dims()[k];
  const std::size_t right = layout.total_dim() / (left * d);
  const CMatrix id_left = CMatrix::Identity(static_cast<Eigen::Index>(left),
                                            static_cast<Eigen::Index>(left));
  const CMatrix id_right = CMatrix::Identity(static_cast<Eigen::Index>(right),
                                             static_cast<Eigen::Index>(right));
  CMatrix inner = Eigen::kroneckerProduct(op, id_right).eval();
  return Eigen::kroneckerProduct(id_left, inner).eval();
}

Hamiltonian non_interacting_hamiltonian(std::span<const Hamiltonian> locals) {
  if (locals.empty()) throw InvalidArgument("no local Hamiltonians given");
  std::vector<std::size_t> dims;
  for (const auto& h : locals) {
    if (h.layout().num_subsystems() != 1) {
      throw InvalidArgument("local Hamiltonian spans " +
                            std::to_string(h.layout().num_subsystems()) +
                            " subsystems; interacting terms are not allowed here");
    }
    dims.push_back(h.dim());
  }
  SubsystemLayout layout(std::move(dims));
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  CMatrix total = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k < locals.size(); ++k) {
    total += embed_local(locals[k].matrix(), k, layout);
  }
  return Hamiltonian(std::move(layout), std::move(total));
}

namespace {

EnergyStats stats_from_weights(const RVector& weights, const RVector& levels) {
  const double total = weights.sum();
  const double mean = weights.dot(levels) / total;
  const double var = weights.dot((levels.array() - mean).square().matrix()) / total;
  return EnergyStats{std::max(mean, 0.0), std::sqrt(std::max(var, 0.0))};
}

void require_same_layout(const SubsystemLayout& a, const SubsystemLayout& b,
                         const char* context) {
  if (!(a == b)) throw InvalidArgument(std::string(context) + ": layout mismatch");
}

}  // namespace

EnergyStats energy_stats(const PureState& state, const Hamiltonian& h) {
  require_same_layout(state.layout(), h.layout(), "energy_stats");
  h.require_ground_shifted("energy_stats");
  const Eigensystem& eig = h.eigensystem();
  const CVector coeffs = eig.vectors.adjoint() * state.amplitudes();
  return stats_from_weights(coeffs.cwiseAbs2(), eig.values);
}

EnergyStats energy_stats(const DensityMatrix& rho, const Hamiltonian& h) {
  require_same_layout(rho.layout(), h.layout(), "energy_stats");
  h.require_ground_shifted("energy_stats");
  const Eigensystem& eig = h.eigensystem();
  const CMatrix in_basis = eig.vectors.adjoint() * rho.matrix() * eig.vectors;
  RVector weights = in_basis.diagonal().real().cwiseMax(0.0);
  return stats_from_weights(weights, eig.values);
}

namespace {
double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }
}  // namespace

double state_overlap(const PureState& a, const PureState& b) {
  require_same_layout(a.layout(), b.layout(), "state_overlap");
  return clamp_unit(std::norm(a.amplitudes().dot(b.amplitudes())));
}

double state_overlap(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_layout(a.layout(), b.layout(), "state_overlap");
  const Complex tr = (a.matrix().array() * b.matrix().transpose().array()).sum();
  return clamp_unit(tr.real());
}

double state_overlap(const PureState& a, const DensityMatrix& b) {
  require_same_layout(a.layout(), b.layout(), "state_overlap");
  const CVector& v = a.amplitudes();
  return clamp_unit(v.dot(b.matrix() * v).real());
}

double state_overlap(const DensityMatrix& a, const PureState& b) {
  return state_overlap(b, a);
}

std::vector<SpectralTerm> spectral_decompose(const DensityMatrix& rho) {
  const CMatrix herm = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eigensolver failed on density matrix");
  }
  std::vector<SpectralTerm> out;
  const auto& values = solver.eigenvalues();
  for (Eigen::Index j = values.size() - 1; j >= 0; --j) {
    if (values(j) < tol::kDroppedWeight) continue;
    out.push_back(SpectralTerm{values(j), solver.eigenvectors().col(j)});
  }
  return out;
}

double hermiticity_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double commutator_norm(const CMatrix& a, const CMatrix& b) {
  if (a.size() == 0) return 0.0;
  return (a * b - b * a).cwiseAbs().maxCoeff();
}

}  // namespace qsl
