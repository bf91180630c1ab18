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

#include "qsl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qsl/dynamics.hpp"

namespace qsl {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kDegenerateGap = 1e-9;

void check_stats(const EnergyStats& s, const char* context) {
  if (!std::isfinite(s.energy) || !std::isfinite(s.spread) || s.energy < 0.0 ||
      s.spread < 0.0) {
    throw InvalidArgument(std::string(context) +
                          ": energy and spread must be finite and nonnegative");
  }
}

using LocalStatsTable = std::vector<std::vector<EnergyStats>>;

void check_locals(const SeparableEnsemble& ensemble, std::span<const Hamiltonian> locals,
                  const char* context) {
  const auto& dims = ensemble.layout().dims();
  if (locals.size() != dims.size()) {
    throw InvalidArgument(std::string(context) + ": expected " +
                          std::to_string(dims.size()) + " local Hamiltonians, got " +
                          std::to_string(locals.size()));
  }
  for (std::size_t k = 0; k < locals.size(); ++k) {
    if (locals[k].layout().num_subsystems() != 1) {
      throw InvalidArgument(std::string(context) +
                            ": local Hamiltonian " + std::to_string(k) +
                            " acts on several subsystems (interacting)");
    }
    if (locals[k].dim() != dims[k]) {
      throw InvalidArgument(std::string(context) + ": local Hamiltonian " +
                            std::to_string(k) + " has the wrong dimension");
    }
    locals[k].require_ground_shifted(context);
  }
}

// Factors may carry any single-block layout; evaluate against the local
// Hamiltonian's own layout.
DensityMatrix as_local(const DensityMatrix& factor, const Hamiltonian& h) {
  if (factor.layout() == h.layout()) return factor;
  return DensityMatrix(h.layout(), factor.matrix());
}

LocalStatsTable local_stats(const SeparableEnsemble& ensemble,
                            std::span<const Hamiltonian> locals) {
  LocalStatsTable table;
  table.reserve(ensemble.num_terms());
  for (const auto& term : ensemble.terms()) {
    std::vector<EnergyStats> row;
    row.reserve(term.size());
    for (std::size_t k = 0; k < term.size(); ++k) {
      row.push_back(energy_stats(as_local(term[k], locals[k]), locals[k]));
    }
    table.push_back(std::move(row));
  }
  return table;
}

EnergyStats combine(const SeparableEnsemble& ensemble, const LocalStatsTable& table) {
  const auto& p = ensemble.weights();
  std::vector<double> term_energy(table.size(), 0.0);
  std::vector<double> term_variance(table.size(), 0.0);
  double energy = 0.0;
  for (std::size_t n = 0; n < table.size(); ++n) {
    for (const auto& s : table[n]) {
      term_energy[n] += s.energy;
      term_variance[n] += s.spread * s.spread;
    }
    energy += p[n] * term_energy[n];
  }
  double variance = 0.0;
  for (std::size_t n = 0; n < table.size(); ++n) {
    const double shift = term_energy[n] - energy;
    variance += p[n] * (term_variance[n] + shift * shift);
  }
  return EnergyStats{energy, std::sqrt(std::max(variance, 0.0))};
}

bool close_times(const BoundResult& a, const BoundResult& b, double tol) {
  if (a.unbounded() || b.unbounded()) return a.unbounded() && b.unbounded();
  return std::abs(*a.time - *b.time) <= tol * std::max(1.0, *b.time);
}

}  // namespace

std::string_view to_string(BoundBranch branch) {
  switch (branch) {
    case BoundBranch::MargolusLevitin:
      return "MargolusLevitin";
    case BoundBranch::TimeEnergyUncertainty:
      return "TimeEnergyUncertainty";
    case BoundBranch::Equal:
      return "Equal";
  }
  return "?";
}

BoundResult qsl_time(const EnergyStats& stats) {
  check_stats(stats, "qsl_time");
  const bool no_energy = stats.energy <= kZeroEnergy;
  const bool no_spread = stats.spread <= kZeroEnergy;
  if (no_energy && no_spread) return {std::nullopt, BoundBranch::Equal};
  if (no_energy) return {std::nullopt, BoundBranch::MargolusLevitin};
  if (no_spread) return {std::nullopt, BoundBranch::TimeEnergyUncertainty};

  const double ml = kHalfPi / stats.energy;
  const double teu = kHalfPi / stats.spread;
  const double scale = std::max(stats.energy, stats.spread);
  BoundBranch branch = BoundBranch::Equal;
  if (std::abs(stats.energy - stats.spread) > kZeroEnergy * scale) {
    branch = stats.energy < stats.spread ? BoundBranch::MargolusLevitin
                                         : BoundBranch::TimeEnergyUncertainty;
  }
  return {std::max(ml, teu), branch};
}

EnergyStats aggregate_product_stats(std::span<const EnergyStats> per_subsystem) {
  EnergyStats total;
  double variance = 0.0;
  for (const auto& s : per_subsystem) {
    check_stats(s, "aggregate_product_stats");
    total.energy += s.energy;
    variance += s.spread * s.spread;
  }
  total.spread = std::sqrt(variance);
  return total;
}

double separable_pure_bound(std::span<const EnergyStats> per_subsystem) {
  if (per_subsystem.empty()) throw InvalidArgument("separable_pure_bound: empty list");
  EnergyStats maxima;
  for (const auto& s : per_subsystem) {
    check_stats(s, "separable_pure_bound");
    maxima.energy = std::max(maxima.energy, s.energy);
    maxima.spread = std::max(maxima.spread, s.spread);
  }
  const BoundResult b = qsl_time(maxima);
  return b.time.value_or(std::numeric_limits<double>::infinity());
}

double homogeneous_gap_factor(std::size_t m, const EnergyStats& aggregate) {
  check_stats(aggregate, "homogeneous_gap_factor");
  if (m == 0) throw InvalidArgument("homogeneous_gap_factor: M must be at least 1");
  if (aggregate.energy <= kZeroEnergy || aggregate.spread <= kZeroEnergy) {
    throw InvalidArgument("homogeneous_gap_factor: E and dE must be positive");
  }
  const double dm = static_cast<double>(m);
  if (aggregate.spread >= aggregate.energy) return dm;
  const double ratio = aggregate.energy / aggregate.spread;
  const double m_star = ratio * ratio;
  return dm <= m_star ? std::sqrt(dm) : dm / ratio;
}

EnergyStats mixture_stats(const SeparableEnsemble& ensemble,
                          std::span<const Hamiltonian> local_hamiltonians) {
  check_locals(ensemble, local_hamiltonians, "mixture_stats");
  return combine(ensemble, local_stats(ensemble, local_hamiltonians));
}

MixedStateBound mixed_state_bound(const DensityMatrix& rho, const Hamiltonian& h) {
  if (!(rho.layout() == h.layout())) {
    throw InvalidArgument("mixed_state_bound: layout mismatch");
  }
  h.require_ground_shifted("mixed_state_bound");
  const auto terms = spectral_decompose(rho);
  if (terms.empty()) throw NumericalFailure("density matrix has no retained eigenvalues");

  MixedStateBound out;
  out.minima = {std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity()};
  for (std::size_t n = 0; n < terms.size(); ++n) {
    CVector v = terms[n].vector;
    v /= v.norm();
    const EnergyStats s = energy_stats(PureState(rho.layout(), std::move(v)), h);
    out.per_eigenvector.push_back(s);
    out.minima.energy = std::min(out.minima.energy, s.energy);
    out.minima.spread = std::min(out.minima.spread, s.spread);
    if (n > 0 && terms[n - 1].weight - terms[n].weight < kDegenerateGap) {
      out.degenerate_spectrum = true;
    }
  }
  out.bound = qsl_time(out.minima);
  return out;
}

EnsembleAnalysis analyze_ensemble_at_qsl(const SeparableEnsemble& ensemble,
                                         std::span<const Hamiltonian> local_hamiltonians,
                                         double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("analyze_ensemble_at_qsl: tol must be positive");
  check_locals(ensemble, local_hamiltonians, "analyze_ensemble_at_qsl");

  const auto table = local_stats(ensemble, local_hamiltonians);
  EnsembleAnalysis out;
  out.stats = combine(ensemble, table);
  out.bound = qsl_time(out.stats);
  out.num_terms = ensemble.num_terms();
  out.num_subsystems = ensemble.num_subsystems();

  const auto& terms = ensemble.terms();
  const auto& p = ensemble.weights();
  const std::size_t nt = out.num_terms;
  const std::size_t nk = out.num_subsystems;

  for (std::size_t n = 0; n < nt; ++n) {
    TermAnalysis term;
    term.local_stats = table[n];
    std::vector<std::size_t> evolving;
    for (std::size_t k = 0; k < nk; ++k) {
      const CMatrix& h = local_hamiltonians[k].matrix();
      if (commutator_norm(h, terms[n][k].matrix()) <= tol) {
        term.stationary_subsystems.push_back(k);
      } else {
        evolving.push_back(k);
      }
    }
    if (evolving.size() == 1) {
      term.evolving_subsystem = evolving.front();
      term.evolving_bound = qsl_time(table[n][evolving.front()]);
    }
    out.terms.push_back(std::move(term));
  }

  if (out.bound.unbounded()) {
    out.reason = "not saturating: the mixture is stationary (unbounded qsl time)";
    return out;
  }
  const double t_bound = *out.bound.time;

  // Evolve every factor to the bound time once.
  std::vector<std::vector<DensityMatrix>> evolved;
  evolved.reserve(nt);
  for (std::size_t n = 0; n < nt; ++n) {
    std::vector<DensityMatrix> row;
    for (std::size_t k = 0; k < nk; ++k) {
      row.push_back(evolve(as_local(terms[n][k], local_hamiltonians[k]),
                           local_hamiltonians[k], t_bound));
    }
    evolved.push_back(std::move(row));
  }

  out.chi_values.resize(nt * nt * nk);
  double global = 0.0;
  for (std::size_t n = 0; n < nt; ++n) {
    for (std::size_t m = 0; m < nt; ++m) {
      double product = p[n] * p[m];
      for (std::size_t k = 0; k < nk; ++k) {
        const CMatrix& a = evolved[n][k].matrix();
        const CMatrix& b = terms[m][k].matrix();
        const Complex chi = (a.array() * b.transpose().array()).sum();
        out.chi_values[(n * nt + m) * nk + k] = chi;
        product *= chi.real();
      }
      global += product;
    }
  }
  out.global_survival = global;

  if (global > tol) {
    out.reason = "not saturating: survival " + std::to_string(global) +
                 " at the bound time";
    return out;
  }
  for (std::size_t n = 0; n < nt; ++n) {
    const TermAnalysis& term = out.terms[n];
    if (!term.evolving_subsystem) {
      const std::size_t count = nk - term.stationary_subsystems.size();
      out.reason = "term " + std::to_string(n) + " has " + std::to_string(count) +
                   " evolving subsystems";
      return out;
    }
    const std::size_t k = *term.evolving_subsystem;
    if (out.chi(n, n, k).real() > tol) {
      out.reason = "term " + std::to_string(n) +
                   ": evolving subsystem is not orthogonal at the bound time";
      return out;
    }
    if (!close_times(*term.evolving_bound, out.bound, tol)) {
      out.reason = "term " + std::to_string(n) +
                   ": evolving subsystem's own bound differs from the global bound";
      return out;
    }
  }
  out.verdict = EnsembleVerdict::SaturatingStructure;
  return out;
}

}  // namespace qsl
