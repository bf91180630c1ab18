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

// Subcommands of the `qsl` tool. Each command has a pure compute step that
// returns rows or a summary, and a thin printing/writing layer; `run` wires
// them to the command line.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qsl/bounds.hpp"
#include "qsl/constructions.hpp"
#include "qsl/dynamics.hpp"

namespace qsl::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitInvariant = 3,
  kExitNumerical = 4,
};

struct GlobalOptions {
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> svg;
  std::optional<double> horizon;
  std::optional<double> tol;
  bool json = false;
};

/// printf("%.12g").
std::string format_g12(double v);

// --- fig1 -----------------------------------------------------------------

struct SweepConfig {
  std::size_t m = 9;
  double omega0 = 1.0;
  double start = 0.0;
  double stop = 10.0;
  double step = 0.25;
  /// Append the omega0 = 0 limit (omega_ratio = inf).
  bool limit_row = false;

  void validate() const;
  std::vector<double> grid() const;
};

inline constexpr std::size_t kMaxSweepPoints = 100000;

struct SweepRow {
  double omega_ratio;
  std::optional<double> t_perp;
  double t_qsl;
  std::optional<double> ratio;
};

std::vector<SweepRow> fig1_rows(const SweepConfig& config,
                                std::optional<double> horizon = std::nullopt,
                                std::optional<double> survival_tol = std::nullopt);
std::string fig1_csv(const std::vector<SweepRow>& rows);
std::string fig1_svg(const std::vector<SweepRow>& rows, const SweepConfig& config);

// --- ent-scan -------------------------------------------------------------

struct EntScanRow {
  std::size_t n;
  std::size_t m;
  double t_perp_entangled;
  double separable_bound;
  double qsl_time;
  bool verified = false;
};

/// Rows for every (N, M); states with N^M <= verify_cap are also solved on
/// the full matrix and must match 2 pi / (N M omega0) to 1e-8 relative
/// (NumericalFailure otherwise).
std::vector<EntScanRow> ent_scan_rows(const std::vector<std::size_t>& ns,
                                      const std::vector<std::size_t>& ms, double omega0,
                                      std::size_t verify_cap = 1024);
std::string ent_scan_csv(const std::vector<EntScanRow>& rows);

// --- mixture-demo ---------------------------------------------------------

struct MixtureDemoReport {
  EnsembleAnalysis analysis;
  OrthogonalityResult measured;
  double bound_time;
  std::vector<std::pair<double, double>> survival_curve;
};

MixtureDemoReport mixture_demo_report(double omega, std::size_t samples = 201,
                                      const SearchOptions& opts = {});
std::string survival_csv(const std::vector<std::pair<double, double>>& curve);

// --- groups ---------------------------------------------------------------

/// t_perp comes from the product-of-overlaps closed form; the full-matrix
/// search is kept as a cross-check. Zeros of order Q are only resolved to
/// about 1e-16^(1/Q) by the matrix solver, hence the loose agreement test.
struct GroupsReport {
  OrthogonalityResult measured;
  OrthogonalityResult full_matrix;
  EnergyStats stats;
  BoundResult bound;
  std::optional<double> ratio;
  double sqrt_m_over_q;
};

inline constexpr double kGroupsCrossCheckTol = 1e-4;

GroupsReport groups_report(const GroupedSpec& spec,
                           std::optional<double> horizon = std::nullopt,
                           std::optional<double> survival_tol = std::nullopt);

// --- entry point ----------------------------------------------------------

/// Parses argv, runs the subcommand, and maps failures to exit codes:
/// 2 usage/config, 3 data invariant, 4 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Writes `content` to `path` via a temporary file and rename, so a failed
/// run never leaves a partial file behind.
void write_file_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace qsl::cli
