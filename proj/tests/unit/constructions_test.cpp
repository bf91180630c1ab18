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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "qsl/bounds.hpp"
#include "qsl/constructions.hpp"
#include "qsl/dynamics.hpp"
#include "../support/oracles.hpp"

namespace qsl {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(PsiEnt, SingleQubit) {
  const auto c = make_psi_ent({2, 1, 1.0});
  EXPECT_NEAR(std::abs(c.state.amplitudes()(0)), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(c.state.amplitudes()(1)), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(c.analytic_t_perp, kPi, 1e-15);
}

TEST(PsiEnt, Examples) {
  EXPECT_NEAR(make_psi_ent({2, 2, 1.0}).analytic_t_perp, kPi / 2, 1e-15);
  const auto s = psi_ent_local_stats({3, 2, 1.0});
  EXPECT_NEAR(s.energy, 1.0, 1e-15);
  EXPECT_NEAR(s.spread, std::sqrt(8.0) / (2 * std::sqrt(3.0)), 1e-15);
  EXPECT_THROW(make_psi_ent({2, 13, 1.0}), InvalidArgument);
  EXPECT_THROW(make_psi_ent({1, 2, 1.0}), InvalidArgument);
  EXPECT_THROW(make_psi_ent({2, 2, 0.0}), InvalidArgument);
}

TEST(PsiEnt, GlobalStatsScaleWithM) {
  for (std::size_t n : {2, 3, 4}) {
    for (std::size_t m : {1, 2, 3}) {
      const EntangledChainSpec spec{n, m, 0.7};
      const auto c = make_psi_ent(spec);
      const auto g = energy_stats(c.state, c.hamiltonian);
      const auto l = psi_ent_local_stats(spec);
      EXPECT_NEAR(g.energy, double(m) * l.energy, 1e-12);
      EXPECT_NEAR(g.spread, double(m) * l.spread, 1e-12);
    }
  }
}

TEST(PsiEnt, SurvivalAmplitude) {
  EXPECT_NEAR(std::abs(psi_ent_survival_amplitude({2, 2, 1.0}, 0.0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(psi_ent_survival_amplitude({2, 2, 1.0}, kPi / 2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(psi_ent_survival_amplitude({3, 1, 1.0}, 2 * kPi / 3)), 0.0, 1e-15);
}

TEST(PsiEnt, SpeedupOverSeparableBound) {
  for (std::size_t n : {2, 3}) {
    for (std::size_t m : {2, 3, 4}) {
      const EntangledChainSpec spec{n, m, 1.0};
      const std::vector<EnergyStats> per(m, psi_ent_local_stats(spec));
      EXPECT_LT(psi_ent_analytic_t_perp(spec), separable_pure_bound(per));
    }
  }
}

TEST(Collective, Stats) {
  const auto a = collective_stats({1, 1.0, 0.0, {}});
  EXPECT_NEAR(a.energy, 1.0, 1e-15);
  EXPECT_NEAR(a.spread, 1.0, 1e-15);
  const auto b = collective_stats({9, 1.0, 0.0, {}});
  EXPECT_NEAR(b.energy, 9.0, 1e-15);
  EXPECT_NEAR(b.spread, 3.0, 1e-15);
  EXPECT_NEAR(*qsl_time(b).time, kPi / 6, 1e-15);
  const auto c = collective_stats({2, 0.0, 1.0, {}});
  EXPECT_NEAR(c.energy, 1.0, 1e-15);
  EXPECT_NEAR(c.spread, 1.0, 1e-15);
}

TEST(Collective, StatsMatchMatrix) {
  for (std::size_t m = 1; m <= 6; ++m) {
    for (auto [w0, w] : {std::pair{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {0.3, 2.0}}) {
      const CollectiveSpec spec{m, w0, w, {}};
      const auto sys = make_collective(spec);
      const auto direct = energy_stats(sys.state, sys.hamiltonian);
      const auto closed = collective_stats(spec);
      EXPECT_NEAR(direct.energy, closed.energy, 1e-10) << m << " " << w0 << " " << w;
      EXPECT_NEAR(direct.spread, closed.spread, 1e-10) << m << " " << w0 << " " << w;
    }
  }
}

TEST(Collective, OnlyCouplesToComplementWhenFreeTermOff) {
  const auto sys = make_collective({2, 0.0, 1.0, {}});
  const PureState s = evolve(sys.state, sys.hamiltonian, 0.4);
  EXPECT_NEAR(std::abs(s.amplitudes()(1)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s.amplitudes()(2)), 0.0, 1e-14);
  EXPECT_NEAR(std::norm(s.amplitudes()(0)) + std::norm(s.amplitudes()(3)), 1.0, 1e-14);
}

TEST(Collective, InitialBitsDoNotChangeSurvival) {
  const CollectiveSpec a{3, 0.8, 1.1, {}};
  const CollectiveSpec b{3, 0.8, 1.1, {1, 0, 1}};
  const auto sa = make_collective(a);
  const auto sb = make_collective(b);
  for (double t : {0.1, 0.7, 2.3}) {
    EXPECT_NEAR(survival(sa.state, sa.hamiltonian, t), survival(sb.state, sb.hamiltonian, t),
                1e-12);
  }
  EXPECT_THROW(make_collective({3, 1.0, 1.0, {1, 0}}), InvalidArgument);
  EXPECT_THROW(make_collective({3, 1.0, 1.0, {1, 0, 2}}), InvalidArgument);
  EXPECT_THROW(make_collective({2, 0.0, 0.0, {}}), InvalidArgument);
  EXPECT_THROW(make_collective({13, 1.0, 0.0, {}}), InvalidArgument);
}

TEST(Collective, OverlapAtZeroIsOne) {
  EXPECT_NEAR(std::abs(collective_overlap_fn({5, 0.3, 0.9, {}}, 0.0) - 1.0), 0.0, 1e-15);
}

TEST(Collective, OverlapMatchesMatrixExponential) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> td(0.0, 8.0);
  for (std::size_t m = 1; m <= 5; ++m) {
    const CollectiveSpec spec{m, 0.9, 1.4, {}};
    const oracle::Mat h = oracle::grouped_hamiltonian(1, m, 0.9, 1.4);
    const oracle::Vec psi = oracle::basis(h.rows(), 0);
    for (int i = 0; i < 40; ++i) {
      const double t = td(rng);
      const Complex amp = psi.dot(oracle::propagator(h, t) * psi);
      // The closed form drops the global phase exp(-i (M w0 + w) t).
      const Complex phase = std::polar(1.0, -(double(m) * 0.9 + 1.4) * t);
      EXPECT_NEAR(std::abs(phase * collective_overlap_fn(spec, t) - amp), 0.0, 1e-10);
    }
  }
}

TEST(CollectiveTPerp, Examples) {
  const auto a = collective_t_perp({9, 1.0, 0.0, {}});
  ASSERT_TRUE(a.found());
  EXPECT_NEAR(a.t_perp, kPi / 2, 1e-9);
  EXPECT_NEAR(a.t_perp / *qsl_time(collective_stats({9, 1.0, 0.0, {}})).time, 3.0, 1e-9);
  const auto b = collective_t_perp({9, 0.0, 1.0, {}});
  ASSERT_TRUE(b.found());
  EXPECT_NEAR(b.t_perp, kPi / 2, 1e-9);
  EXPECT_NEAR(b.t_perp / *qsl_time(collective_stats({9, 0.0, 1.0, {}})).time, 1.0, 1e-9);
}

TEST(CollectiveTPerp, EvenMWithBothTermsNeverOrthogonal) {
  // M=2, w = w0: |overlap|^2 = cos^6 + sin^6 >= 1/4.
  const auto r = collective_t_perp({2, 1.0, 1.0, {}});
  EXPECT_FALSE(r.found());
  EXPECT_NEAR(r.min_overlap, 0.25, 1e-9);
  const auto sys = make_collective({2, 1.0, 1.0, {}});
  const auto full = first_orthogonal_time(sys.state, sys.hamiltonian);
  EXPECT_FALSE(full.found());
  EXPECT_NEAR(full.min_overlap, 0.25, 1e-9);
}

TEST(CollectiveTPerp, MatchesFullSolverForOddM) {
  for (std::size_t m : {1, 3, 5}) {
    for (double w : {0.5, 1.0, 2.5}) {
      const CollectiveSpec spec{m, 1.0, w, {}};
      const auto closed = collective_t_perp(spec);
      const auto sys = make_collective(spec);
      const auto full = first_orthogonal_time(sys.state, sys.hamiltonian);
      ASSERT_EQ(closed.found(), full.found()) << m << " " << w;
      if (closed.found()) EXPECT_NEAR(closed.t_perp, full.t_perp, 1e-6) << m << " " << w;
    }
  }
}

TEST(Grouped, SingleGroupIsCollective) {
  const auto g = make_grouped({1, 4, 0.6, 1.2});
  const auto c = make_collective({4, 0.6, 1.2, {}});
  EXPECT_LT((g.hamiltonian.matrix() - c.hamiltonian.matrix()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((g.state.amplitudes() - c.state.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Grouped, MatchesHandBuiltHamiltonianAndStats) {
  for (auto [g, q] : {std::pair{2, 2}, {3, 2}, {2, 3}, {3, 1}}) {
    for (auto [w0, w] : {std::pair{0.0, 1.0}, {1.0, 0.0}, {0.7, 1.3}}) {
      const GroupedSpec spec{std::size_t(g), std::size_t(q), w0, w};
      const auto sys = make_grouped(spec);
      const oracle::Mat h = oracle::grouped_hamiltonian(g, q, w0, w);
      EXPECT_LT((sys.hamiltonian.matrix() - h).cwiseAbs().maxCoeff(), 1e-12);
      const auto direct = energy_stats(sys.state, sys.hamiltonian);
      const auto closed = grouped_stats(spec);
      EXPECT_NEAR(direct.energy, closed.energy, 1e-10);
      EXPECT_NEAR(direct.spread, closed.spread, 1e-10);
      for (double t : {0.3, 1.1, 2.9}) {
        EXPECT_NEAR(std::norm(grouped_overlap_fn(spec, t)),
                    oracle::pure_survival(oracle::basis(h.rows(), 0), h, t), 1e-10);
      }
    }
  }
}

TEST(Grouped, RatioAtLeastSqrtGroups) {
  for (auto [g, q] : {std::pair{3, 3}, {2, 2}, {2, 1}, {3, 1}, {2, 3}}) {
    for (auto [w0, w] : {std::pair{0.0, 1.0}, {1.0, 0.0}, {0.5, 1.5}, {1.0, 3.0}}) {
      const GroupedSpec spec{std::size_t(g), std::size_t(q), w0, w};
      const auto r = grouped_t_perp(spec);
      if (!r.found()) continue;
      const double t_qsl = *qsl_time(grouped_stats(spec)).time;
      EXPECT_GE(r.t_perp, std::sqrt(double(g)) * t_qsl - 1e-9)
          << g << "x" << q << " w0=" << w0 << " w=" << w;
    }
  }
}

TEST(Grouped, Examples) {
  const GroupedSpec a{3, 3, 0.0, 1.0};
  const auto ra = grouped_t_perp(a);
  ASSERT_TRUE(ra.found());
  EXPECT_NEAR(ra.t_perp, kPi / 2, 1e-12);
  EXPECT_NEAR(*qsl_time(grouped_stats(a)).time, kPi / (2 * std::sqrt(3.0)), 1e-12);
  const GroupedSpec b{2, 1, 1.0, 0.0};
  const auto rb = grouped_t_perp(b);
  ASSERT_TRUE(rb.found());
  EXPECT_NEAR(rb.t_perp / *qsl_time(grouped_stats(b)).time, std::sqrt(2.0), 1e-8);
  EXPECT_THROW(make_grouped({0, 3, 1.0, 1.0}), InvalidArgument);
  EXPECT_THROW(make_grouped({4, 4, 1.0, 1.0}), InvalidArgument);
}

TEST(MixtureDemo, StatsSurvivalAndDisjointSupport) {
  for (double w : {0.5, 1.0, 2.0}) {
    const auto demo = make_mixture_demo(w);
    const auto rho = demo.ensemble.assemble();
    const Hamiltonian h = non_interacting_hamiltonian(demo.local_hamiltonians);
    const auto s = energy_stats(rho, h);
    EXPECT_NEAR(s.energy, 1.5 * w, 1e-12);
    EXPECT_NEAR(s.spread, 0.5 * w, 1e-12);
    EXPECT_NEAR(survival(rho, h, kPi / w), 0.0, 1e-12);
    for (double t : {0.0, 0.4, 1.9, 5.0}) {
      EXPECT_NEAR(survival(rho, h, t), mixture_demo_survival(w, t), 1e-12);
      EXPECT_NEAR(oracle::mixed_survival(rho.matrix(), h.matrix(), t),
                  mixture_demo_survival(w, t), 1e-10);
      const auto& hl = demo.local_hamiltonians[0];
      EXPECT_NEAR(state_overlap(evolve(demo.rho_a, hl, t), demo.rho_b), 0.0, 1e-14);
      EXPECT_NEAR(state_overlap(evolve(demo.rho_b, hl, t), demo.rho_a), 0.0, 1e-14);
    }
  }
  EXPECT_THROW(make_mixture_demo(0.0), InvalidArgument);
}

}  // namespace
}  // namespace qsl
