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

// Exact unitary evolution under a time-independent Hamiltonian and the
// first-orthogonality-time solver.

#pragma once

#include <functional>
#include <optional>

#include "qsl/qcore.hpp"

namespace qsl {

enum class OrthogonalityStatus { Found, NotFound };

struct OrthogonalityResult {
  OrthogonalityStatus status = OrthogonalityStatus::NotFound;
  double t_perp = 0.0;       // meaningful only when Found
  double min_overlap = 1.0;  // smallest survival value seen in (0, horizon]
  double t_at_min = 0.0;
  double horizon = 0.0;

  bool found() const { return status == OrthogonalityStatus::Found; }
};

struct SearchOptions {
  /// Search limit; when unset, 20 x qsl_time of the input state.
  std::optional<double> horizon;
  /// Threshold on the survival value Tr[rho(t) rho].
  double ortho_tol = 1e-9;
  /// Scan step as a fraction of pi / (spectral range).
  double scan_fraction = 0.25;

  /// Throws InvalidArgument on non-positive horizon or tolerance, or a scan
  /// fraction outside (0, 1].
  void validate() const;
};

inline constexpr double kDefaultHorizonMultiple = 20.0;

PureState evolve(const PureState& state, const Hamiltonian& h, double t);
DensityMatrix evolve(const DensityMatrix& rho, const Hamiltonian& h, double t);

/// Tr[rho(t) rho], in [0, 1].
double survival(const PureState& state, const Hamiltonian& h, double t);
double survival(const DensityMatrix& rho, const Hamiltonian& h, double t);

/// Smallest t in (0, horizon] with survival(t) <= ortho_tol. Requires a
/// ground-shifted Hamiltonian.
OrthogonalityResult first_orthogonal_time(const PureState& state,
                                          const Hamiltonian& h,
                                          const SearchOptions& opts = {});
OrthogonalityResult first_orthogonal_time(const DensityMatrix& rho,
                                          const Hamiltonian& h,
                                          const SearchOptions& opts = {});

/// Scan-and-refine search for the first zero of a nonnegative signal whose
/// Fourier content is bounded by `max_frequency` (angular). Samples every
/// scan_fraction * pi / max_frequency, refines each bracketed local minimum
/// by golden-section search and accepts the first refined value <= tol.
/// `horizon` must be set in `opts`.
OrthogonalityResult find_first_zero(const std::function<double(double)>& signal,
                                    double max_frequency,
                                    const SearchOptions& opts);

struct GoldenMinimum {
  double t;
  double value;
};

/// Golden-section minimisation of f on [lo, hi] until the bracket is
/// narrower than `abs_tol`.
GoldenMinimum golden_section_minimize(const std::function<double(double)>& f,
                                      double lo, double hi, double abs_tol = 1e-13);

}  // namespace qsl
