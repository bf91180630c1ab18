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

#include "qsl/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qsl/bounds.hpp"

namespace qsl {

namespace {

// Weights below this do not count towards the spectral range used for the
// scan step.
constexpr double kSupportWeight = 1e-14;
constexpr double kMaxScanSamples = 2e7;

void require_same_layout(const SubsystemLayout& a, const SubsystemLayout& b) {
  if (!(a == b)) throw InvalidArgument("evolve: state and Hamiltonian layouts differ");
}

CVector phases(const RVector& levels, double t) {
  CVector out(levels.size());
  for (Eigen::Index j = 0; j < levels.size(); ++j) {
    out(j) = std::polar(1.0, -levels(j) * t);
  }
  return out;
}

double spectral_range(const RVector& levels, const RVector& support_weight) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index j = 0; j < levels.size(); ++j) {
    if (support_weight(j) <= kSupportWeight) continue;
    lo = std::min(lo, levels(j));
    hi = std::max(hi, levels(j));
  }
  return hi > lo ? hi - lo : 0.0;
}

// Survival of a pure state as |sum_j w_j exp(-i l_j t)|^2.
class PureSignal {
 public:
  PureSignal(const PureState& state, const Hamiltonian& h)
      : levels_(h.eigensystem().values) {
    const CVector c = h.eigensystem().vectors.adjoint() * state.amplitudes();
    weights_ = c.cwiseAbs2();
  }

  Complex amplitude(double t) const {
    Complex sum = 0.0;
    for (Eigen::Index j = 0; j < levels_.size(); ++j) {
      sum += weights_(j) * std::polar(1.0, -levels_(j) * t);
    }
    return sum;
  }

  double operator()(double t) const { return std::min(std::norm(amplitude(t)), 1.0); }
  double range() const { return spectral_range(levels_, weights_); }

 private:
  RVector levels_;
  RVector weights_;
};

// Survival of a mixed state as sum_nm l_n l_m |<phi_n| U(t) |phi_m>|^2, a sum
// of squared moduli that stays accurate to ~1e-30 near a zero.
class MixedSignal {
 public:
  MixedSignal(const DensityMatrix& rho, const Hamiltonian& h)
      : levels_(h.eigensystem().values) {
    const auto terms = spectral_decompose(rho);
    const auto d = static_cast<Eigen::Index>(rho.dim());
    const auto r = static_cast<Eigen::Index>(terms.size());
    CMatrix phi(d, r);
    weights_.resize(r);
    for (Eigen::Index n = 0; n < r; ++n) {
      phi.col(n) = terms[static_cast<std::size_t>(n)].vector;
      weights_(n) = terms[static_cast<std::size_t>(n)].weight;
    }
    coords_ = h.eigensystem().vectors.adjoint() * phi;
    support_ = (coords_.cwiseAbs2() * weights_).eval();
  }

  double operator()(double t) const {
    const CVector ph = phases(levels_, t);
    const CMatrix overlaps = coords_.adjoint() * ph.asDiagonal() * coords_;
    double total = 0.0;
    for (Eigen::Index m = 0; m < overlaps.cols(); ++m) {
      for (Eigen::Index n = 0; n < overlaps.rows(); ++n) {
        total += weights_(n) * weights_(m) * std::norm(overlaps(n, m));
      }
    }
    return std::min(total, 1.0);
  }

  double range() const { return spectral_range(levels_, support_); }

 private:
  RVector levels_;
  RVector weights_;
  CMatrix coords_;
  RVector support_;
};

SearchOptions with_default_horizon(SearchOptions opts, const EnergyStats& stats) {
  if (opts.horizon) return opts;
  const BoundResult bound = qsl_time(stats);
  // Unbounded only for stationary states, which the solver rejects before
  // scanning; any positive placeholder works.
  opts.horizon = bound.time ? kDefaultHorizonMultiple * *bound.time : 1.0;
  return opts;
}

template <typename Signal>
OrthogonalityResult search(const Signal& signal, const SearchOptions& opts) {
  return find_first_zero([&signal](double t) { return signal(t); }, signal.range(), opts);
}

}  // namespace

void SearchOptions::validate() const {
  if (horizon && !(*horizon > 0.0 && std::isfinite(*horizon))) {
    throw InvalidArgument("horizon must be positive and finite");
  }
  if (!(ortho_tol > 0.0)) throw InvalidArgument("ortho_tol must be positive");
  if (!(scan_fraction > 0.0 && scan_fraction <= 1.0)) {
    throw InvalidArgument("scan_fraction must lie in (0, 1]");
  }
}

PureState evolve(const PureState& state, const Hamiltonian& h, double t) {
  require_same_layout(state.layout(), h.layout());
  if (!std::isfinite(t)) throw InvalidArgument("evolve: time must be finite");
  const Eigensystem& eig = h.eigensystem();
  CVector coeffs = eig.vectors.adjoint() * state.amplitudes();
  coeffs = coeffs.cwiseProduct(phases(eig.values, t));
  CVector out = eig.vectors * coeffs;
  out /= out.norm();
  return PureState(state.layout(), std::move(out));
}

DensityMatrix evolve(const DensityMatrix& rho, const Hamiltonian& h, double t) {
  require_same_layout(rho.layout(), h.layout());
  if (!std::isfinite(t)) throw InvalidArgument("evolve: time must be finite");
  const Eigensystem& eig = h.eigensystem();
  const CMatrix u = eig.vectors * phases(eig.values, t).asDiagonal() * eig.vectors.adjoint();
  CMatrix out = u * rho.matrix() * u.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  out /= out.trace().real();
  return DensityMatrix(rho.layout(), std::move(out));
}

double survival(const PureState& state, const Hamiltonian& h, double t) {
  require_same_layout(state.layout(), h.layout());
  return PureSignal(state, h)(t);
}

double survival(const DensityMatrix& rho, const Hamiltonian& h, double t) {
  require_same_layout(rho.layout(), h.layout());
  return MixedSignal(rho, h)(t);
}

OrthogonalityResult first_orthogonal_time(const PureState& state, const Hamiltonian& h,
                                          const SearchOptions& opts) {
  opts.validate();
  require_same_layout(state.layout(), h.layout());
  h.require_ground_shifted("first_orthogonal_time");
  return search(PureSignal(state, h), with_default_horizon(opts, energy_stats(state, h)));
}

OrthogonalityResult first_orthogonal_time(const DensityMatrix& rho, const Hamiltonian& h,
                                          const SearchOptions& opts) {
  opts.validate();
  require_same_layout(rho.layout(), h.layout());
  h.require_ground_shifted("first_orthogonal_time");
  return search(MixedSignal(rho, h), with_default_horizon(opts, energy_stats(rho, h)));
}

GoldenMinimum golden_section_minimize(const std::function<double(double)>& f, double lo,
                                      double hi, double abs_tol) {
  constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  GoldenMinimum best = fc <= fd ? GoldenMinimum{c, fc} : GoldenMinimum{d, fd};
  for (int iter = 0; iter < 400 && (b - a) > abs_tol * std::max(1.0, std::abs(best.t));
       ++iter) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      if (fc < best.value) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      if (fd < best.value) best = {d, fd};
    }
  }
  return best;
}

OrthogonalityResult find_first_zero(const std::function<double(double)>& signal,
                                    double max_frequency, const SearchOptions& opts) {
  opts.validate();
  if (!opts.horizon) throw InvalidArgument("find_first_zero needs an explicit horizon");
  const double horizon = *opts.horizon;

  OrthogonalityResult result;
  result.horizon = horizon;
  result.min_overlap = signal(0.0);
  result.t_at_min = 0.0;

  if (!(max_frequency > 0.0) || !std::isfinite(max_frequency)) {
    // Stationary: the signal is constant.
    return result;
  }

  const double nominal_step = opts.scan_fraction * std::numbers::pi / max_frequency;
  const double samples = std::ceil(horizon / nominal_step);
  if (samples > kMaxScanSamples) {
    throw NumericalFailure("orthogonality scan would need " + std::to_string(samples) +
                           " samples; shorten the horizon");
  }
  const auto n = static_cast<long long>(std::max(samples, 1.0));
  const double step = horizon / static_cast<double>(n);
  auto time_at = [&](long long i) { return i == n ? horizon : static_cast<double>(i) * step; };

  bool first_sample = true;
  auto note = [&](double t, double v) {
    if (first_sample || v < result.min_overlap) {
      result.min_overlap = v;
      result.t_at_min = t;
      first_sample = false;
    }
  };

  double f_prev = result.min_overlap;
  double f_cur = signal(time_at(1));
  for (long long i = 1; i <= n; ++i) {
    const double t_cur = time_at(i);
    note(t_cur, f_cur);
    const bool last = i == n;
    const double f_next = last ? 0.0 : signal(time_at(i + 1));
    const bool local_min = f_cur <= f_prev && (last || f_cur <= f_next);
    if (local_min) {
      const double lo = time_at(i - 1);
      const double hi = last ? t_cur : time_at(i + 1);
      const GoldenMinimum refined = golden_section_minimize(signal, lo, hi);
      const GoldenMinimum pick =
          refined.value <= f_cur ? refined : GoldenMinimum{t_cur, f_cur};
      note(pick.t, pick.value);
      if (pick.value <= opts.ortho_tol) {
        result.status = OrthogonalityStatus::Found;
        result.t_perp = pick.t;
        return result;
      }
    }
    f_prev = f_cur;
    f_cur = f_next;
  }
  return result;
}

}  // namespace qsl
