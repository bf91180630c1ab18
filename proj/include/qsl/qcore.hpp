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

// Value types for composite quantum systems: layouts, pure states, density
// matrices and Hamiltonians, plus the dense linear-algebra primitives the
// rest of the library is built on. Everything here is an immutable value;
// invariants are checked once, at construction.
//
// Conventions: hbar = 1. Subsystem k of a layout with dims (d_0, ..., d_{M-1})
// is the k-th tensor factor, with subsystem 0 the most significant digit of
// the flat basis index.

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qsl/errors.hpp"

namespace qsl {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

namespace tol {
inline constexpr double kConstruction = 1e-12;
inline constexpr double kPsdSlack = 1e-10;
inline constexpr double kGroundShift = 1e-10;
inline constexpr double kDroppedWeight = 1e-12;
}  // namespace tol

inline constexpr std::size_t kDefaultDimCap = 4096;

/// Ordered local dimensions of an M-part system.
class SubsystemLayout {
 public:
  explicit SubsystemLayout(std::vector<std::size_t> dims,
                           std::size_t dim_cap = kDefaultDimCap);

  /// M identical subsystems of dimension d.
  static SubsystemLayout uniform(std::size_t d, std::size_t m,
                                 std::size_t dim_cap = kDefaultDimCap);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t num_subsystems() const { return dims_.size(); }
  std::size_t local_dim(std::size_t site) const;
  std::size_t total_dim() const { return total_dim_; }

  bool operator==(const SubsystemLayout& other) const {
    return dims_ == other.dims_;
  }

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_dim_ = 1;
};

class PureState {
 public:
  /// Throws InvariantViolation unless the norm is 1 within 1e-12.
  PureState(SubsystemLayout layout, CVector amplitudes);

  const SubsystemLayout& layout() const { return layout_; }
  const CVector& amplitudes() const { return amplitudes_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }

 private:
  SubsystemLayout layout_;
  CVector amplitudes_;
};

class DensityMatrix {
 public:
  /// Checks Hermiticity (1e-12), unit trace (1e-12) and PSD (-1e-10).
  DensityMatrix(SubsystemLayout layout, CMatrix matrix);

  static DensityMatrix projector(const PureState& state);

  const SubsystemLayout& layout() const { return layout_; }
  const CMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  SubsystemLayout layout_;
  CMatrix matrix_;
};

/// Eigendecomposition H = V diag(values) V^dagger, eigenvalues ascending.
struct Eigensystem {
  RVector values;
  CMatrix vectors;
};

/// Hermitian operator on a layout. The spectrum is computed once at
/// construction and shared between copies.
class Hamiltonian {
 public:
  /// Throws InvariantViolation if the matrix is not Hermitian within 1e-12,
  /// NumericalFailure if the eigensolver does not converge.
  Hamiltonian(SubsystemLayout layout, CMatrix matrix);

  const SubsystemLayout& layout() const { return layout_; }
  const CMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  double ground_energy() const { return eigen_->values(0); }
  bool is_ground_shifted() const;
  const Eigensystem& eigensystem() const { return *eigen_; }

  /// Throws InvariantViolation naming `context` when not ground-shifted.
  void require_ground_shifted(const char* context) const;

 private:
  Hamiltonian(SubsystemLayout layout, CMatrix matrix,
              std::shared_ptr<const Eigensystem> eigen);
  friend Hamiltonian ground_shift(const Hamiltonian& h);

  SubsystemLayout layout_;
  CMatrix matrix_;
  std::shared_ptr<const Eigensystem> eigen_;
};

/// Mean energy E and spread Delta E = sqrt(<(H - E)^2>).
struct EnergyStats {
  double energy = 0.0;
  double spread = 0.0;
};

/// sum_n p_n rho_1^(n) (x) ... (x) rho_M^(n).
class SeparableEnsemble {
 public:
  SeparableEnsemble(std::vector<double> weights,
                    std::vector<std::vector<DensityMatrix>> terms);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<std::vector<DensityMatrix>>& terms() const { return terms_; }
  std::size_t num_terms() const { return weights_.size(); }
  std::size_t num_subsystems() const { return terms_.front().size(); }
  const SubsystemLayout& layout() const { return layout_; }

  /// The global density matrix of the mixture.
  DensityMatrix assemble() const;

 private:
  std::vector<double> weights_;
  std::vector<std::vector<DensityMatrix>> terms_;
  SubsystemLayout layout_;
};

struct SpectralTerm {
  double weight;
  CVector vector;
};

// ---------------------------------------------------------------------------
// Operations

/// Kronecker product of normalized local vectors. The layout is taken from
/// the factor sizes.
PureState tensor_product(std::span<const CVector> factors);

/// As above, checking the factor sizes against a declared layout.
PureState tensor_product(std::span<const CVector> factors,
                         const SubsystemLayout& layout);

/// Kronecker product of square matrices, factor 0 most significant.
CMatrix kron_all(std::span<const CMatrix> factors);

/// I (x) ... (x) op (x) ... (x) I with `op` at `site`.
CMatrix embed_local(const CMatrix& op, std::size_t site,
                    const SubsystemLayout& layout);

/// sum_k embed_local(H_k, k) for single-site Hamiltonians H_k.
Hamiltonian non_interacting_hamiltonian(std::span<const Hamiltonian> locals);

/// H - lambda_min I.
Hamiltonian ground_shift(const Hamiltonian& h);

EnergyStats energy_stats(const PureState& state, const Hamiltonian& h);
EnergyStats energy_stats(const DensityMatrix& rho, const Hamiltonian& h);

/// Tr[rho_a rho_b]; |<a|b>|^2 for pure inputs. Clamped to [0, 1].
double state_overlap(const PureState& a, const PureState& b);
double state_overlap(const DensityMatrix& a, const DensityMatrix& b);
double state_overlap(const PureState& a, const DensityMatrix& b);
double state_overlap(const DensityMatrix& a, const PureState& b);

/// Eigenpairs of rho sorted by descending weight; weights below 1e-12 are
/// dropped. Degenerate eigenspaces come back in whatever orthonormal basis
/// the eigensolver picks.
std::vector<SpectralTerm> spectral_decompose(const DensityMatrix& rho);

/// Largest |A_ij - conj(A_ji)|.
double hermiticity_defect(const CMatrix& a);

/// Largest |[A, B]_ij|.
double commutator_norm(const CMatrix& a, const CMatrix& b);

}  // namespace qsl
