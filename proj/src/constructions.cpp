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

#include "qsl/constructions.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;

// i^p evaluated exactly.
Complex i_power(std::size_t p) {
  switch (p % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

std::size_t checked_pow2(std::size_t m, std::size_t dim_cap) {
  if (m >= 63 || (std::size_t{1} << m) > dim_cap) {
    throw InvalidArgument("2^" + std::to_string(m) + " exceeds the dimension cap of " +
                          std::to_string(dim_cap));
  }
  return std::size_t{1} << m;
}

// omega0 sum_k (1 - X_k) + omega sum_g (1 - prod_{k in g} X_k) on
// groups * per_group qubits, qubit 0 the most significant bit.
CMatrix grouped_matrix(std::size_t groups, std::size_t per_group, double omega0,
                       double omega) {
  const std::size_t m = groups * per_group;
  const std::size_t dim = std::size_t{1} << m;
  const auto n = static_cast<Eigen::Index>(dim);
  CMatrix h = CMatrix::Zero(n, n);
  const double diag = omega0 * static_cast<double>(m) + omega * static_cast<double>(groups);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    h(row, row) += diag;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t j = i ^ (std::size_t{1} << (m - 1 - k));
      h(row, static_cast<Eigen::Index>(j)) -= omega0;
    }
    for (std::size_t g = 0; g < groups; ++g) {
      std::size_t mask = 0;
      for (std::size_t q = 0; q < per_group; ++q) {
        mask |= std::size_t{1} << (m - 1 - (g * per_group + q));
      }
      h(row, static_cast<Eigen::Index>(i ^ mask)) -= omega;
    }
  }
  return h;
}

PureState basis_state(const SubsystemLayout& layout, std::size_t index) {
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  amps(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(layout, std::move(amps));
}

void check_frequencies(double omega0, double omega, const char* what) {
  if (!std::isfinite(omega0) || !std::isfinite(omega) || omega0 < 0.0 || omega < 0.0) {
    throw InvalidArgument(std::string(what) + ": frequencies must be finite and >= 0");
  }
  if (omega0 == 0.0 && omega == 0.0) {
    throw InvalidArgument(std::string(what) + ": omega0 and omega cannot both be zero");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Entangled chain

void EntangledChainSpec::validate() const {
  if (levels < 2) throw InvalidArgument("entangled chain needs N >= 2 levels");
  if (subsystems < 1) throw InvalidArgument("entangled chain needs M >= 1 subsystems");
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw InvalidArgument("entangled chain needs omega0 > 0");
  }
}

EntangledChain make_psi_ent(const EntangledChainSpec& spec, std::size_t dim_cap) {
  spec.validate();
  const auto layout = SubsystemLayout::uniform(spec.levels, spec.subsystems, dim_cap);
  const auto d = static_cast<Eigen::Index>(spec.levels);

  CMatrix local = CMatrix::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) local(n, n) = static_cast<double>(n) * spec.omega0;
  const SubsystemLayout site({spec.levels});
  std::vector<Hamiltonian> locals(spec.subsystems, Hamiltonian(site, local));

  // |n n ... n> sits at n * (1 + N + ... + N^{M-1}).
  std::size_t stride = 0;
  for (std::size_t k = 0, p = 1; k < spec.subsystems; ++k, p *= spec.levels) stride += p;
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  const double a = 1.0 / std::sqrt(static_cast<double>(spec.levels));
  for (std::size_t n = 0; n < spec.levels; ++n) {
    amps(static_cast<Eigen::Index>(n * stride)) = a;
  }
  return EntangledChain{PureState(layout, std::move(amps)),
                        non_interacting_hamiltonian(locals),
                        psi_ent_analytic_t_perp(spec)};
}

EnergyStats psi_ent_local_stats(const EntangledChainSpec& spec) {
  spec.validate();
  const double n = static_cast<double>(spec.levels);
  return {spec.omega0 * (n - 1.0) / 2.0,
          spec.omega0 * std::sqrt(n * n - 1.0) / (2.0 * std::sqrt(3.0))};
}

double psi_ent_analytic_t_perp(const EntangledChainSpec& spec) {
  spec.validate();
  return 2.0 * kPi /
         (static_cast<double>(spec.levels) * static_cast<double>(spec.subsystems) *
          spec.omega0);
}

Complex psi_ent_survival_amplitude(const EntangledChainSpec& spec, double t) {
  spec.validate();
  const double rate = static_cast<double>(spec.subsystems) * spec.omega0 * t;
  Complex sum = 0.0;
  for (std::size_t n = 0; n < spec.levels; ++n) {
    sum += std::polar(1.0, -static_cast<double>(n) * rate);
  }
  return sum / static_cast<double>(spec.levels);
}

// ---------------------------------------------------------------------------
// Collective model

void CollectiveSpec::validate() const {
  if (qubits < 1) throw InvalidArgument("collective model needs M >= 1 qubits");
  check_frequencies(omega0, omega, "collective model");
  if (!initial_bits.empty()) {
    if (initial_bits.size() != qubits) {
      throw InvalidArgument("initial bit-vector must have one entry per qubit");
    }
    for (int b : initial_bits) {
      if (b != 0 && b != 1) throw InvalidArgument("initial bits must be 0 or 1");
    }
  }
}

StateAndHamiltonian make_collective(const CollectiveSpec& spec, std::size_t dim_cap) {
  spec.validate();
  checked_pow2(spec.qubits, dim_cap);
  const auto layout = SubsystemLayout::uniform(2, spec.qubits, dim_cap);
  std::size_t index = 0;
  for (std::size_t k = 0; k < spec.initial_bits.size(); ++k) {
    if (spec.initial_bits[k] == 1) index |= std::size_t{1} << (spec.qubits - 1 - k);
  }
  Hamiltonian h(layout, grouped_matrix(1, spec.qubits, spec.omega0, spec.omega));
  return {basis_state(layout, index), ground_shift(h)};
}

EnergyStats collective_stats(const CollectiveSpec& spec) {
  spec.validate();
  return grouped_stats(GroupedSpec{1, spec.qubits, spec.omega0, spec.omega});
}

Complex collective_overlap_fn(const CollectiveSpec& spec, double t) {
  spec.validate();
  const int m = static_cast<int>(spec.qubits);
  const double c = std::cos(spec.omega * t) * std::pow(std::cos(spec.omega0 * t), m);
  const double s = std::sin(spec.omega * t) * std::pow(std::sin(spec.omega0 * t), m);
  return Complex(c, 0.0) + i_power(spec.qubits + 1) * s;
}

namespace {

OrthogonalityResult overlap_zero(const std::function<Complex(double)>& overlap, double range,
                                 double default_horizon, std::optional<double> horizon,
                                 double amplitude_tol) {
  if (!(amplitude_tol > 0.0)) throw InvalidArgument("amplitude tolerance must be positive");
  SearchOptions opts;
  opts.ortho_tol = amplitude_tol * amplitude_tol;
  opts.horizon = horizon ? *horizon : default_horizon;
  return find_first_zero([&overlap](double t) { return std::norm(overlap(t)); }, range, opts);
}

}  // namespace

OrthogonalityResult collective_t_perp(const CollectiveSpec& spec,
                                      std::optional<double> horizon,
                                      double amplitude_tol) {
  spec.validate();
  // The spectrum spans [0, 2(M omega0 + omega)].
  const double range =
      2.0 * (static_cast<double>(spec.qubits) * spec.omega0 + spec.omega);
  return overlap_zero([&spec](double t) { return collective_overlap_fn(spec, t); }, range,
                      kDefaultHorizonMultiple * *qsl_time(collective_stats(spec)).time,
                      horizon, amplitude_tol);
}

// ---------------------------------------------------------------------------
// Grouped model

void GroupedSpec::validate() const {
  if (groups < 1 || qubits_per_group < 1) {
    throw InvalidArgument("grouped model needs G >= 1 and Q >= 1");
  }
  check_frequencies(omega0, omega, "grouped model");
}

StateAndHamiltonian make_grouped(const GroupedSpec& spec, std::size_t dim_cap) {
  spec.validate();
  checked_pow2(spec.total_qubits(), dim_cap);
  const auto layout = SubsystemLayout::uniform(2, spec.total_qubits(), dim_cap);
  Hamiltonian h(layout, grouped_matrix(spec.groups, spec.qubits_per_group, spec.omega0,
                                       spec.omega));
  return {basis_state(layout, 0), ground_shift(h)};
}

EnergyStats grouped_stats(const GroupedSpec& spec) {
  spec.validate();
  const double m = static_cast<double>(spec.total_qubits());
  const double g = static_cast<double>(spec.groups);
  double variance = m * spec.omega0 * spec.omega0 + g * spec.omega * spec.omega;
  // With one qubit per group the collective flip is that qubit's own X, so
  // the two terms are fully correlated.
  if (spec.qubits_per_group == 1) variance += 2.0 * g * spec.omega0 * spec.omega;
  return {m * spec.omega0 + g * spec.omega, std::sqrt(variance)};
}

Complex grouped_overlap_fn(const GroupedSpec& spec, double t) {
  spec.validate();
  const CollectiveSpec one{spec.qubits_per_group, spec.omega0, spec.omega, {}};
  Complex product = 1.0;
  for (std::size_t g = 0; g < spec.groups; ++g) product *= collective_overlap_fn(one, t);
  return product;
}

OrthogonalityResult grouped_t_perp(const GroupedSpec& spec, std::optional<double> horizon,
                                   double amplitude_tol) {
  spec.validate();
  const double range = 2.0 * (static_cast<double>(spec.total_qubits()) * spec.omega0 +
                              static_cast<double>(spec.groups) * spec.omega);
  return overlap_zero([&spec](double t) { return grouped_overlap_fn(spec, t); }, range,
                      kDefaultHorizonMultiple * *qsl_time(grouped_stats(spec)).time,
                      horizon, amplitude_tol);
}

// ---------------------------------------------------------------------------
// Mixture demo

MixtureDemo make_mixture_demo(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw InvalidArgument("mixture demo needs omega > 0");
  }
  const SubsystemLayout site({3});
  CMatrix local = CMatrix::Zero(3, 3);
  local(1, 1) = omega;
  local(2, 2) = 2.0 * omega;
  const Hamiltonian h(site, local);

  CVector ground = CVector::Zero(3);
  ground(0) = 1.0;
  CVector excited = CVector::Zero(3);
  excited(1) = excited(2) = 1.0 / std::sqrt(2.0);
  DensityMatrix rho_b = DensityMatrix::projector(PureState(site, ground));
  DensityMatrix rho_a = DensityMatrix::projector(PureState(site, excited));

  SeparableEnsemble ensemble({0.5, 0.5}, {{rho_a, rho_b}, {rho_b, rho_a}});
  return MixtureDemo{std::move(ensemble), {h, h}, std::move(rho_a), std::move(rho_b)};
}

double mixture_demo_survival(double omega, double t) {
  const double c = std::cos(omega * t / 2.0);
  return 0.5 * c * c;
}

}  // namespace qsl
