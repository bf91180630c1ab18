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

// Concrete states and Hamiltonians, each paired with a closed-form overlap
// that serves as an oracle for the numerical solver.

#pragma once

#include <optional>
#include <vector>

#include "qsl/bounds.hpp"
#include "qsl/dynamics.hpp"
#include "qsl/qcore.hpp"

namespace qsl {

/// (1/sqrt N) sum_n |n>^{(x)M} with local levels n * omega0.
struct EntangledChainSpec {
  std::size_t levels = 2;      // N
  std::size_t subsystems = 1;  // M
  double omega0 = 1.0;

  void validate() const;
};

struct EntangledChain {
  PureState state;
  Hamiltonian hamiltonian;
  double analytic_t_perp;
};

EntangledChain make_psi_ent(const EntangledChainSpec& spec,
                            std::size_t dim_cap = kDefaultDimCap);

/// Per-subsystem (E, dE) of the entangled chain state:
/// (omega0 (N-1)/2, omega0 sqrt(N^2-1) / (2 sqrt 3)).
EnergyStats psi_ent_local_stats(const EntangledChainSpec& spec);

/// 2 pi / (N M omega0).
double psi_ent_analytic_t_perp(const EntangledChainSpec& spec);

/// <psi|psi(t)> = (1/N) sum_n exp(-i n M omega0 t).
Complex psi_ent_survival_amplitude(const EntangledChainSpec& spec, double t);

/// M qubits under omega0 sum_k (1 - X_k) + omega (1 - X_1 ... X_M), starting
/// from the basis state |J_1 ... J_M>.
struct CollectiveSpec {
  std::size_t qubits = 1;  // M
  double omega0 = 1.0;
  double omega = 0.0;
  /// Initial bits; empty means all zeros.
  std::vector<int> initial_bits;

  void validate() const;
};

struct StateAndHamiltonian {
  PureState state;
  Hamiltonian hamiltonian;
};

StateAndHamiltonian make_collective(const CollectiveSpec& spec,
                                    std::size_t dim_cap = kDefaultDimCap);

/// (omega + M omega0, sqrt(omega^2 + M omega0^2)) for M >= 2. For M = 1 the
/// collective flip is the qubit's own X and dE = omega + omega0.
EnergyStats collective_stats(const CollectiveSpec& spec);

/// cos(wt) cos^M(w0 t) + i^{M+1} sin(wt) sin^M(w0 t), the initial-state
/// overlap with its global phase removed.
Complex collective_overlap_fn(const CollectiveSpec& spec, double t);

inline constexpr double kCollectiveAmplitudeTol = 1e-10;

/// First t > 0 with |collective_overlap_fn| <= amplitude_tol, using the same
/// scan-and-refine search as first_orthogonal_time. Default horizon is
/// 20 x qsl_time(collective_stats).
OrthogonalityResult collective_t_perp(const CollectiveSpec& spec,
                                      std::optional<double> horizon = std::nullopt,
                                      double amplitude_tol = kCollectiveAmplitudeTol);

/// G independent copies of the collective model on Q qubits each.
struct GroupedSpec {
  std::size_t groups = 1;           // G
  std::size_t qubits_per_group = 1; // Q
  double omega0 = 1.0;
  double omega = 0.0;

  std::size_t total_qubits() const { return groups * qubits_per_group; }
  void validate() const;
};

StateAndHamiltonian make_grouped(const GroupedSpec& spec,
                                 std::size_t dim_cap = kDefaultDimCap);

/// (M omega0 + G omega, sqrt(M omega0^2 + G omega^2)), plus the correlated
/// cross term when Q = 1.
EnergyStats grouped_stats(const GroupedSpec& spec);

/// Product of the per-group overlaps.
Complex grouped_overlap_fn(const GroupedSpec& spec, double t);

/// collective_t_perp for the product overlap. Default horizon is
/// 20 x qsl_time(grouped_stats).
OrthogonalityResult grouped_t_perp(const GroupedSpec& spec,
                                   std::optional<double> horizon = std::nullopt,
                                   double amplitude_tol = kCollectiveAmplitudeTol);

/// Two 3-level subsystems with H_k = diag(0, w, 2w); rho_b = |0><0|,
/// rho_a = projector on (|1> + |2>)/sqrt 2, and the mixture
/// (rho_a (x) rho_b + rho_b (x) rho_a) / 2.
struct MixtureDemo {
  SeparableEnsemble ensemble;
  std::vector<Hamiltonian> local_hamiltonians;
  DensityMatrix rho_a;
  DensityMatrix rho_b;
};

MixtureDemo make_mixture_demo(double omega);

/// Survival of the assembled mixture: cos^2(w t / 2) / 2.
double mixture_demo_survival(double omega, double t);

}  // namespace qsl
