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

#include "qsl/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsl/cli/state_io.hpp"
#include "qsl/cli/svg_plot.hpp"

namespace qsl::cli {

using nlohmann::json;

namespace {

constexpr double kRatioFloorSlack = 1e-9;
constexpr double kEntVerifyTol = 1e-8;
constexpr double kMixtureTimeTol = 1e-8;

// Like format_g12 but keeps a decimal point on integral values, for text
// meant to be read by people.
std::string human(double v) {
  std::string s = format_g12(v);
  if (s.find_first_of(".einn") == std::string::npos) s += ".0";
  return s;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string bound_text(const BoundResult& b) {
  return b.time ? format_g12(*b.time) : std::string("unbounded");
}

json bound_json(const BoundResult& b) {
  json j;
  j["unbounded"] = b.unbounded();
  j["time"] = b.time ? json(*b.time) : json(nullptr);
  j["branch"] = std::string(to_string(b.branch));
  return j;
}

json ortho_json(const OrthogonalityResult& r) {
  json j;
  j["status"] = r.found() ? "Found" : "NotFound";
  j["t_perp"] = r.found() ? json(r.t_perp) : json(nullptr);
  j["min_overlap"] = r.min_overlap;
  j["t_at_min"] = r.t_at_min;
  j["horizon"] = r.horizon;
  return j;
}

void check_ratio_floor(double ratio, const std::string& where) {
  if (ratio < 1.0 - kRatioFloorSlack) {
    throw NumericalFailure(where + ": measured time falls below the speed limit (ratio " +
                           format_g12(ratio) + ")");
  }
}

SearchOptions search_options(const GlobalOptions& g) {
  SearchOptions opts;
  opts.horizon = g.horizon;
  if (g.tol) opts.ortho_tol = *g.tol;
  opts.validate();
  return opts;
}

void emit_envelope(std::ostream& out, const std::string& command, json result) {
  json env;
  env["command"] = command;
  env["status"] = "ok";
  env["result"] = std::move(result);
  out << env.dump(2) << '\n';
}

// --- command bodies -------------------------------------------------------

int do_bound(double energy, double spread, const GlobalOptions& g, std::ostream& out) {
  const BoundResult b = qsl_time(EnergyStats{energy, spread});
  if (g.json) {
    emit_envelope(out, "bound", bound_json(b));
  } else if (b.unbounded()) {
    out << "unbounded, branch=" << to_string(b.branch) << '\n';
  } else {
    out << format_g12(*b.time) << ", branch=" << to_string(b.branch) << '\n';
  }
  return kExitOk;
}

int do_tperp(const std::filesystem::path& file, bool shift, const GlobalOptions& g,
             std::ostream& out) {
  const StateFile input = load_state_file(file, shift);
  const SearchOptions opts = search_options(g);
  OrthogonalityResult r;
  EnergyStats stats;
  std::visit(
      [&](const auto& state) {
        r = first_orthogonal_time(state, input.hamiltonian, opts);
        stats = energy_stats(state, input.hamiltonian);
      },
      input.state);
  const BoundResult b = qsl_time(stats);
  std::optional<double> ratio;
  if (r.found() && b.time) {
    ratio = r.t_perp / *b.time;
    check_ratio_floor(*ratio, "tperp");
  }

  if (g.json) {
    json j = ortho_json(r);
    j["energy"] = stats.energy;
    j["spread"] = stats.spread;
    j["bound"] = bound_json(b);
    j["ratio"] = ratio ? json(*ratio) : json(nullptr);
    emit_envelope(out, "tperp", std::move(j));
    return kExitOk;
  }
  if (r.found()) {
    out << "Found t_perp=" << format_g12(r.t_perp) << " bound=" << bound_text(b);
    if (ratio) out << " ratio=" << fixed(*ratio, 3);
    out << '\n';
  } else {
    out << "NotFound min_overlap=" << human(r.min_overlap) << " t_at_min="
        << format_g12(r.t_at_min) << " horizon=" << format_g12(r.horizon)
        << " bound=" << bound_text(b) << '\n';
  }
  return kExitOk;
}

int do_fig1(const SweepConfig& config, const GlobalOptions& g, std::ostream& out) {
  const auto rows = fig1_rows(config, g.horizon, g.tol);
  const std::string csv = fig1_csv(rows);
  const std::string svg = g.svg ? fig1_svg(rows, config) : std::string();
  // Compute everything before touching the filesystem.
  if (g.out) write_file_atomically(*g.out, csv);
  if (g.svg) write_file_atomically(*g.svg, svg);

  if (g.json) {
    json j;
    j["rows"] = json::array();
    for (const auto& r : rows) {
      j["rows"].push_back({{"omega_ratio", std::isfinite(r.omega_ratio)
                                               ? json(r.omega_ratio)
                                               : json("inf")},
                           {"t_perp", r.t_perp ? json(*r.t_perp) : json(nullptr)},
                           {"t_qsl", r.t_qsl},
                           {"ratio", r.ratio ? json(*r.ratio) : json(nullptr)}});
    }
    if (g.out) j["csv"] = g.out->string();
    if (g.svg) j["svg"] = g.svg->string();
    emit_envelope(out, "fig1", std::move(j));
  } else if (!g.out) {
    out << csv;
  } else {
    out << "wrote " << rows.size() << " rows to " << g.out->string() << '\n';
  }
  return kExitOk;
}

int do_ent_scan(const std::vector<std::size_t>& ns, const std::vector<std::size_t>& ms,
                double omega0, std::size_t verify_cap, const GlobalOptions& g,
                std::ostream& out) {
  const auto rows = ent_scan_rows(ns, ms, omega0, verify_cap);
  const std::string csv = ent_scan_csv(rows);
  if (g.out) write_file_atomically(*g.out, csv);
  if (g.json) {
    json j;
    j["rows"] = json::array();
    for (const auto& r : rows) {
      j["rows"].push_back({{"N", r.n},
                           {"M", r.m},
                           {"t_perp_entangled", r.t_perp_entangled},
                           {"separable_bound", r.separable_bound},
                           {"qsl_time", r.qsl_time},
                           {"verified", r.verified}});
    }
    emit_envelope(out, "ent-scan", std::move(j));
  } else if (!g.out) {
    out << csv;
  } else {
    out << "wrote " << rows.size() << " rows to " << g.out->string() << '\n';
  }
  return kExitOk;
}

int do_mixture_demo(double omega, std::size_t samples, const GlobalOptions& g,
                    std::ostream& out) {
  const MixtureDemoReport rep = mixture_demo_report(omega, samples, search_options(g));
  if (!rep.measured.found() ||
      std::abs(rep.measured.t_perp - rep.bound_time) > kMixtureTimeTol * rep.bound_time) {
    throw NumericalFailure("mixture demo: measured t_perp does not match the bound " +
                           format_g12(rep.bound_time));
  }
  if (g.out) write_file_atomically(*g.out, survival_csv(rep.survival_curve));

  const auto& a = rep.analysis;
  const bool saturating = a.verdict == EnsembleVerdict::SaturatingStructure;
  if (g.json) {
    json j;
    j["verdict"] = saturating ? "SaturatingStructure" : "Violation";
    j["reason"] = a.reason;
    j["energy"] = a.stats.energy;
    j["spread"] = a.stats.spread;
    j["bound"] = bound_json(a.bound);
    j["global_survival"] = a.global_survival;
    j["t_perp"] = rep.measured.t_perp;
    j["terms"] = json::array();
    for (const auto& t : a.terms) {
      j["terms"].push_back(
          {{"evolving_subsystem",
            t.evolving_subsystem ? json(*t.evolving_subsystem + 1) : json(nullptr)},
           {"own_bound", t.evolving_bound && t.evolving_bound->time
                             ? json(*t.evolving_bound->time)
                             : json(nullptr)}});
    }
    emit_envelope(out, "mixture-demo", std::move(j));
    return kExitOk;
  }
  out << (saturating ? "SaturatingStructure" : "Violation(" + a.reason + ")")
      << ", t_perp=" << format_g12(rep.measured.t_perp) << "=bound\n";
  out << "E=" << format_g12(a.stats.energy) << " dE=" << format_g12(a.stats.spread)
      << " bound=" << bound_text(a.bound) << " survival_at_bound="
      << format_g12(a.global_survival) << '\n';
  for (std::size_t n = 0; n < a.terms.size(); ++n) {
    const auto& t = a.terms[n];
    out << "term " << n + 1 << ": ";
    if (t.evolving_subsystem) {
      out << "evolving k=" << *t.evolving_subsystem + 1
          << " own_bound=" << bound_text(*t.evolving_bound);
    } else {
      out << "no single evolving subsystem";
    }
    out << " stationary=[";
    for (std::size_t i = 0; i < t.stationary_subsystems.size(); ++i) {
      out << (i ? "," : "") << t.stationary_subsystems[i] + 1;
    }
    out << "]\n";
  }
  return kExitOk;
}

int do_groups(const GroupedSpec& spec, const GlobalOptions& g, std::ostream& out) {
  const GroupsReport rep = groups_report(spec, g.horizon, g.tol);
  if (rep.ratio) check_ratio_floor(*rep.ratio, "groups");
  if (g.json) {
    json j = ortho_json(rep.measured);
    j["energy"] = rep.stats.energy;
    j["spread"] = rep.stats.spread;
    j["bound"] = bound_json(rep.bound);
    j["ratio"] = rep.ratio ? json(*rep.ratio) : json(nullptr);
    j["sqrt_m_over_q"] = rep.sqrt_m_over_q;
    emit_envelope(out, "groups", std::move(j));
    return kExitOk;
  }
  if (rep.measured.found()) {
    out << "t_perp=" << format_g12(rep.measured.t_perp);
  } else {
    out << "t_perp=NotFound(min_overlap=" << human(rep.measured.min_overlap) << ")";
  }
  out << " t_qsl=" << bound_text(rep.bound) << " ratio="
      << (rep.ratio ? format_g12(*rep.ratio) : std::string("n/a"))
      << " sqrt(M/Q)=" << format_g12(rep.sqrt_m_over_q) << '\n';
  return kExitOk;
}

int report_error(std::ostream& out, std::ostream& err, bool as_json, int code,
                 const std::string& message) {
  if (as_json) {
    json env;
    env["status"] = "error";
    env["exit_code"] = code;
    env["message"] = message;
    out << env.dump(2) << '\n';
  }
  err << "error: " << message << '\n';
  return code;
}

}  // namespace

std::string format_g12(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_file_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".partial";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidArgument("cannot write " + path.string());
    f << content;
    if (!f.flush()) throw InvalidArgument("cannot write " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

// --- fig1 -----------------------------------------------------------------

void SweepConfig::validate() const {
  if (m < 1) throw InvalidArgument("fig1: m must be at least 1");
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw InvalidArgument("fig1: omega0 must be positive");
  }
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("fig1: step must be > 0");
  if (!std::isfinite(start) || !std::isfinite(stop) || start < 0.0) {
    throw InvalidArgument("fig1: start must be >= 0 and the range finite");
  }
  if (start > stop) throw InvalidArgument("fig1: start must not exceed stop");
  if ((stop - start) / step + 1.0 > static_cast<double>(kMaxSweepPoints)) {
    throw InvalidArgument("fig1: grid exceeds 100000 points");
  }
}

std::vector<double> SweepConfig::grid() const {
  validate();
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

std::vector<SweepRow> fig1_rows(const SweepConfig& config, std::optional<double> horizon,
                                std::optional<double> survival_tol) {
  const double amplitude_tol =
      survival_tol ? std::sqrt(*survival_tol) : kCollectiveAmplitudeTol;
  auto row_for = [&](double omega_ratio, double omega0, double omega) {
    const CollectiveSpec spec{config.m, omega0, omega, {}};
    const double t_qsl = *qsl_time(collective_stats(spec)).time;
    const OrthogonalityResult r = collective_t_perp(spec, horizon, amplitude_tol);
    SweepRow row{omega_ratio, std::nullopt, t_qsl, std::nullopt};
    if (r.found()) {
      row.t_perp = r.t_perp;
      row.ratio = r.t_perp / t_qsl;
      check_ratio_floor(*row.ratio, "fig1");
    }
    return row;
  };

  std::vector<SweepRow> rows;
  for (double x : config.grid()) rows.push_back(row_for(x, config.omega0, x * config.omega0));
  if (config.limit_row) {
    rows.push_back(row_for(std::numeric_limits<double>::infinity(), 0.0, config.omega0));
  }
  return rows;
}

std::string fig1_csv(const std::vector<SweepRow>& rows) {
  std::string out = "omega_ratio,t_perp,t_qsl,ratio\n";
  for (const auto& r : rows) {
    out += format_g12(r.omega_ratio);
    out += ',';
    if (r.t_perp) out += format_g12(*r.t_perp);
    out += ',';
    out += format_g12(r.t_qsl);
    out += ',';
    if (r.ratio) out += format_g12(*r.ratio);
    out += '\n';
  }
  return out;
}

std::string fig1_svg(const std::vector<SweepRow>& rows, const SweepConfig& config) {
  SvgPlot plot("First orthogonality time, M = " + std::to_string(config.m),
               "omega / omega0", "time");
  Series forbidden{"forbidden (t < T(E, dE))", SeriesStyle::ShadedBelow, {}};
  Series bound{"T(E, dE)", SeriesStyle::DashedLine, {}};
  Series measured{"T_perp", SeriesStyle::Asterisks, {}};
  for (const auto& r : rows) {
    if (!std::isfinite(r.omega_ratio)) continue;
    forbidden.points.push_back({r.omega_ratio, r.t_qsl});
    bound.points.push_back({r.omega_ratio, r.t_qsl});
    if (r.t_perp) measured.points.push_back({r.omega_ratio, *r.t_perp});
  }
  plot.add(std::move(forbidden));
  plot.add(std::move(bound));
  plot.add(std::move(measured));
  return plot.render();
}

// --- ent-scan -------------------------------------------------------------

std::vector<EntScanRow> ent_scan_rows(const std::vector<std::size_t>& ns,
                                      const std::vector<std::size_t>& ms, double omega0,
                                      std::size_t verify_cap) {
  if (ns.empty() || ms.empty()) throw InvalidArgument("ent-scan: empty N or M list");
  std::vector<EntScanRow> rows;
  for (std::size_t n : ns) {
    for (std::size_t m : ms) {
      const EntangledChainSpec spec{n, m, omega0};
      const EnergyStats local = psi_ent_local_stats(spec);
      const std::vector<EnergyStats> per(m, local);
      const double md = static_cast<double>(m);
      // Entangled: E = M E_k and dE = M dE_k.
      const BoundResult qsl = qsl_time({md * local.energy, md * local.spread});

      EntScanRow row{n, m, psi_ent_analytic_t_perp(spec), separable_pure_bound(per),
                     *qsl.time, false};

      double dim = 1.0;
      for (std::size_t k = 0; k < m; ++k) dim *= static_cast<double>(n);
      if (dim <= static_cast<double>(verify_cap)) {
        const EntangledChain chain = make_psi_ent(spec, verify_cap);
        const OrthogonalityResult r = first_orthogonal_time(chain.state, chain.hamiltonian);
        if (!r.found() ||
            std::abs(r.t_perp - row.t_perp_entangled) > kEntVerifyTol * row.t_perp_entangled) {
          throw NumericalFailure("ent-scan: full-matrix t_perp disagrees with 2pi/(NM w0) at N=" +
                                 std::to_string(n) + ", M=" + std::to_string(m));
        }
        row.verified = true;
      }
      check_ratio_floor(row.t_perp_entangled / row.qsl_time, "ent-scan");
      rows.push_back(row);
    }
  }
  return rows;
}

std::string ent_scan_csv(const std::vector<EntScanRow>& rows) {
  std::string out = "N,M,t_perp_entangled,separable_bound,qsl_time\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + std::to_string(r.m) + ',' +
           format_g12(r.t_perp_entangled) + ',' + format_g12(r.separable_bound) + ',' +
           format_g12(r.qsl_time) + '\n';
  }
  return out;
}

// --- mixture-demo ---------------------------------------------------------

MixtureDemoReport mixture_demo_report(double omega, std::size_t samples,
                                      const SearchOptions& opts) {
  if (samples < 2) throw InvalidArgument("mixture-demo: need at least 2 samples");
  const MixtureDemo demo = make_mixture_demo(omega);
  MixtureDemoReport rep{analyze_ensemble_at_qsl(demo.ensemble, demo.local_hamiltonians),
                        {}, 0.0, {}};
  if (rep.analysis.bound.unbounded()) {
    throw NumericalFailure("mixture-demo: bound is unexpectedly unbounded");
  }
  rep.bound_time = *rep.analysis.bound.time;

  const Hamiltonian h = non_interacting_hamiltonian(demo.local_hamiltonians);
  const DensityMatrix rho = demo.ensemble.assemble();
  rep.measured = first_orthogonal_time(rho, h, opts);

  const double t_end = 2.0 * std::numbers::pi / omega;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = t_end * static_cast<double>(i) / static_cast<double>(samples - 1);
    rep.survival_curve.emplace_back(t, survival(rho, h, t));
  }
  return rep;
}

std::string survival_csv(const std::vector<std::pair<double, double>>& curve) {
  std::string out = "t,survival\n";
  for (const auto& [t, s] : curve) out += format_g12(t) + ',' + format_g12(s) + '\n';
  return out;
}

// --- groups ---------------------------------------------------------------

GroupsReport groups_report(const GroupedSpec& spec, std::optional<double> horizon,
                           std::optional<double> survival_tol) {
  SearchOptions opts;
  opts.horizon = horizon;
  if (survival_tol) opts.ortho_tol = *survival_tol;
  opts.validate();
  const StateAndHamiltonian sys = make_grouped(spec);
  GroupsReport rep;
  rep.stats = energy_stats(sys.state, sys.hamiltonian);
  rep.bound = qsl_time(rep.stats);
  rep.measured = grouped_t_perp(
      spec, horizon, survival_tol ? std::sqrt(*survival_tol) : kCollectiveAmplitudeTol);
  rep.full_matrix = first_orthogonal_time(sys.state, sys.hamiltonian, opts);
  if (rep.measured.found() != rep.full_matrix.found() ||
      (rep.measured.found() &&
       std::abs(rep.measured.t_perp - rep.full_matrix.t_perp) >
           kGroupsCrossCheckTol * rep.measured.t_perp)) {
    throw NumericalFailure("groups: closed-form and full-matrix t_perp disagree");
  }
  if (rep.measured.found() && rep.bound.time) rep.ratio = rep.measured.t_perp / *rep.bound.time;
  rep.sqrt_m_over_q = std::sqrt(static_cast<double>(spec.groups));
  return rep;
}

// --- entry point ----------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum speed limit bounds and first-orthogonality times", "qsl"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions g;
  std::string out_path;
  std::string svg_path;
  double horizon = 0.0;
  double tol = 0.0;
  auto* out_opt = app.add_option("--out", out_path, "CSV output path (default: stdout)");
  auto* svg_opt = app.add_option("--svg", svg_path, "SVG plot output path (fig1)");
  auto* horizon_opt = app.add_option("--horizon", horizon, "search horizon")
                          ->check(CLI::PositiveNumber);
  auto* tol_opt = app.add_option("--tol", tol, "orthogonality threshold on the survival")
                      ->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json, "print a machine-readable result envelope");

  double energy = 0.0;
  double spread = 0.0;
  auto* bound_cmd = app.add_subcommand("bound", "quantum speed limit time for (E, dE)");
  bound_cmd->add_option("--energy", energy, "mean energy above the ground state")
      ->required()
      ->check(CLI::NonNegativeNumber);
  bound_cmd->add_option("--spread", spread, "energy spread")
      ->required()
      ->check(CLI::NonNegativeNumber);

  std::string state_file;
  bool shift = false;
  auto* tperp_cmd = app.add_subcommand("tperp", "first orthogonality time of a JSON state");
  tperp_cmd->add_option("state_file", state_file, "state + Hamiltonian JSON")->required();
  tperp_cmd->add_flag("--ground-shift", shift, "shift the Hamiltonian to zero ground energy");

  SweepConfig sweep;
  auto* fig1_cmd = app.add_subcommand("fig1", "T_perp vs omega/omega0 for the collective model");
  fig1_cmd->add_option("--m", sweep.m, "number of qubits")->check(CLI::PositiveNumber);
  fig1_cmd->add_option("--omega0", sweep.omega0, "free rotation frequency");
  fig1_cmd->add_option("--start", sweep.start, "first omega/omega0");
  fig1_cmd->add_option("--stop", sweep.stop, "last omega/omega0");
  fig1_cmd->add_option("--step", sweep.step, "grid step");
  fig1_cmd->add_flag("--limit-row", sweep.limit_row, "append the omega0 = 0 limit row");

  std::vector<std::size_t> ns{2, 3, 5};
  std::vector<std::size_t> ms{2, 3, 4};
  double ent_omega0 = 1.0;
  std::size_t verify_cap = 1024;
  auto* ent_cmd = app.add_subcommand("ent-scan", "entangled chain speedup table");
  ent_cmd->add_option("--n", ns, "levels per subsystem")->delimiter(',');
  ent_cmd->add_option("--m", ms, "subsystem counts")->delimiter(',');
  ent_cmd->add_option("--omega0", ent_omega0, "level spacing")->check(CLI::PositiveNumber);
  ent_cmd->add_option("--verify-cap", verify_cap, "largest N^M solved on the full matrix");

  double mix_omega = 1.0;
  std::size_t samples = 201;
  auto* mix_cmd = app.add_subcommand("mixture-demo", "saturating separable mixture");
  mix_cmd->add_option("--omega", mix_omega, "level spacing")->check(CLI::PositiveNumber);
  mix_cmd->add_option("--samples", samples, "survival samples on [0, 2 pi / omega]");

  GroupedSpec groups{3, 3, 0.0, 1.0};
  auto* groups_cmd = app.add_subcommand("groups", "G non-interacting collective groups");
  groups_cmd->add_option("--groups", groups.groups, "G")->check(CLI::PositiveNumber);
  groups_cmd->add_option("--per-group", groups.qubits_per_group, "Q")
      ->check(CLI::PositiveNumber);
  groups_cmd->add_option("--omega0", groups.omega0, "free rotation frequency")
      ->check(CLI::NonNegativeNumber);
  groups_cmd->add_option("--omega", groups.omega, "collective frequency")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return report_error(out, err, g.json, kExitUsage, e.what());
  }

  if (*out_opt) g.out = out_path;
  if (*svg_opt) g.svg = svg_path;
  if (*horizon_opt) g.horizon = horizon;
  if (*tol_opt) g.tol = tol;

  try {
    if (*bound_cmd) return do_bound(energy, spread, g, out);
    if (*tperp_cmd) return do_tperp(state_file, shift, g, out);
    if (*fig1_cmd) return do_fig1(sweep, g, out);
    if (*ent_cmd) return do_ent_scan(ns, ms, ent_omega0, verify_cap, g, out);
    if (*mix_cmd) return do_mixture_demo(mix_omega, samples, g, out);
    if (*groups_cmd) return do_groups(groups, g, out);
  } catch (const InvariantViolation& e) {
    return report_error(out, err, g.json, kExitInvariant, e.what());
  } catch (const NumericalFailure& e) {
    return report_error(out, err, g.json, kExitNumerical, e.what());
  } catch (const InvalidArgument& e) {
    return report_error(out, err, g.json, kExitUsage, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return report_error(out, err, g.json, kExitUsage, e.what());
  }
  return kExitUsage;
}

}  // namespace qsl::cli
