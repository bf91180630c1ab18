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

// Lower bounds on the time a state needs to reach an orthogonal state:
// the quantum speed limit max(pi/2E, pi/2dE), its separable and mixed-state
// refinements, and the structural test for separable mixtures that reach it.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsl/qcore.hpp"

namespace qsl {

/// Which argument of max(pi/2E, pi/2dE) governs.
enum class BoundBranch { MargolusLevitin, TimeEnergyUncertainty, Equal };

std::string_view to_string(BoundBranch branch);

struct BoundResult {
  /// nullopt means Unbounded (E or dE is zero: the state never turns
  /// orthogonal).
  std::optional<double> time;
  BoundBranch branch = BoundBranch::Equal;

  bool unbounded() const { return !time.has_value(); }
};

/// Energies at or below this count as zero for the bound formulas.
inline constexpr double kZeroEnergy = 1e-12;

/// max(pi/(2E), pi/(2 dE)). Throws InvalidArgument on negative or
/// non-finite input.
BoundResult qsl_time(const EnergyStats& stats);

/// max(pi/(2 E_max), pi/(2 dE_max)) over per-subsystem stats of a product
/// pure state. Infinity if every subsystem is stationary.
double separable_pure_bound(std::span<const EnergyStats> per_subsystem);

/// Aggregate stats of a product state: E = sum E_k, dE = sqrt(sum dE_k^2).
EnergyStats aggregate_product_stats(std::span<const EnergyStats> per_subsystem);

/// Lower-bound multiplier on qsl_time for energy-homogeneous product pure
/// states of M subsystems with aggregate stats (E, dE); M* = (E/dE)^2.
/// dE >= E: M. E >= dE: sqrt(M) for M <= M*, M / sqrt(M*) otherwise.
double homogeneous_gap_factor(std::size_t m, const EnergyStats& aggregate);

/// Mixture energy and spread from per-term, per-subsystem stats, for
/// non-interacting local Hamiltonians (one per subsystem, ground-shifted).
EnergyStats mixture_stats(const SeparableEnsemble& ensemble,
                          std::span<const Hamiltonian> local_hamiltonians);

struct MixedStateBound {
  BoundResult bound;
  /// Minima over retained eigenvectors of rho.
  EnergyStats minima;
  std::vector<EnergyStats> per_eigenvector;
  /// Retained weights with gaps below 1e-9: the eigenbasis, and with it the
  /// minima, is not unique.
  bool degenerate_spectrum = false;
};

/// max(pi/(2 E_min), pi/(2 dE_min)) over the eigenvectors of rho.
MixedStateBound mixed_state_bound(const DensityMatrix& rho, const Hamiltonian& h);

enum class EnsembleVerdict { SaturatingStructure, Violation };

struct TermAnalysis {
  /// The one subsystem that is not stationary, if exactly one exists.
  std::optional<std::size_t> evolving_subsystem;
  std::vector<std::size_t> stationary_subsystems;
  std::vector<EnergyStats> local_stats;
  /// qsl_time of the evolving factor.
  std::optional<BoundResult> evolving_bound;
};

struct EnsembleAnalysis {
  EnergyStats stats;
  BoundResult bound;
  double global_survival = 1.0;
  std::size_t num_terms = 0;
  std::size_t num_subsystems = 0;
  /// chi_k^(n,m) = Tr[rho_k^(n)(T) rho_k^(m)] at the bound time T, stored as
  /// computed (complex) so the reality of each value can be inspected.
  std::vector<Complex> chi_values;
  std::vector<TermAnalysis> terms;
  EnsembleVerdict verdict = EnsembleVerdict::Violation;
  std::string reason;

  Complex chi(std::size_t n, std::size_t m, std::size_t k) const {
    return chi_values[(n * num_terms + m) * num_subsystems + k];
  }
};

/// Checks whether a separable mixture reaches orthogonality at its own
/// qsl_time and, if so, whether every term has exactly one evolving factor
/// saturating its own bound with all others stationary. `tol` is used both
/// for "orthogonal" (overlaps) and "stationary" (commutators).
EnsembleAnalysis analyze_ensemble_at_qsl(const SeparableEnsemble& ensemble,
                                         std::span<const Hamiltonian> local_hamiltonians,
                                         double tol = 1e-9);

}  // namespace qsl
