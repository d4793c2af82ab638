// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NDG_EXPERIMENTS_HPP
#define NDG_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ndg/report.hpp"

namespace ndg {

inline constexpr const char* kVersion = "0.1.0";

struct DeviceProfile {
  std::string name;
  double watts = 0.0;
};

/// Parameters of one experiment invocation. `cells` is the per-axis cell
/// count of each run in the sweep (grids are square/cubic); for weak
/// scaling it is the per-worker grid instead.
struct ExperimentSpec {
  std::string experiment = "converge";  // converge|cost|fit|timing|scale|energy|simulate
  std::string equation = "advection";   // advection | euler
  int dim = 1;
  std::vector<int> orders{4};
  std::string rk = "rk6";
  std::vector<int> cells;
  int nk = 4;
  std::uint64_t seed = 0;
  std::vector<int> workers{1};
  double cfl = 0.4;
  double t_end = 1.0;
  long steps = 100;  // fixed-step timing loops
  std::vector<DeviceProfile> devices;
  bool compare_equations = false;  // timing: also run the other equation
  bool dim_compare = false;        // scale: matched-dof 2D vs 3D pair
  std::string dump_path;           // simulate: optional field dump
};

/// Canonical one-line serialization of a spec; its hash goes into the
/// report metadata so a report names the configuration that produced it.
std::string canonical_spec_string(const ExperimentSpec& spec);

/// L2-error convergence over (order, cells), plus one fitted-slope row per
/// order. Advection only.
BenchReport run_converge(const ExperimentSpec& spec);

/// Error-versus-computing-time sweep: the converge runs without slope rows,
/// read against wall_seconds.
BenchReport run_cost(const ExperimentSpec& spec);

/// Required dof to reach target errors {1e-2, 1e-3, 1e-4} per order,
/// interpolated on the measured curve, with the constant of
/// dof = c (1/error)^(1/order) in fit_c (reference value 200).
BenchReport run_fit(const ExperimentSpec& spec);

/// Fixed-step timing (default 100 steps) across the cell sweep; optionally
/// repeats with the other equation for the cost-per-dof comparison.
BenchReport run_timing(const ExperimentSpec& spec);

/// Strong scaling (fixed grid, worker sweep, speedup vs the serial solver)
/// and weak scaling (fixed cells per worker); optionally the matched-dof
/// 2D-vs-3D pair.
BenchReport run_scale(const ExperimentSpec& spec);

/// Energy estimates from configured device power ratings: 100-step runs and
/// whole simulations to t_end. energy = watts x measured wall seconds.
BenchReport run_energy(const ExperimentSpec& spec);

/// One run (first order / first cell count), reported as a single row;
/// optionally dumps the final field.
BenchReport run_simulate(const ExperimentSpec& spec);

/// Dispatch on spec.experiment.
BenchReport run_experiment(const ExperimentSpec& spec);

/// Matched-dof cost comparison between a 2D and a 3D Euler grid: two
/// dimcmp rows; validates that the dofs match exactly.
BenchReport run_dim_compare(int cells2d, int order2d, int cells3d, int order3d,
                            long steps, double cfl, const std::string& rk_name,
                            int workers);

/// The documented slope rule: ordinary least squares of ln(err) against
/// ln(n) over all points (returns NaN for fewer than two points). Reported
/// slopes are negative for decaying errors.
double loglog_slope(const std::vector<double>& n, const std::vector<double>& err);

/// Log-log interpolation of the dof needed for a target error on a
/// measured (dof ascending, error) curve; NaN when the target is outside
/// the measured range.
double interpolate_dof_for_error(
    const std::vector<std::pair<double, double>>& dof_and_error, double target);

}  // namespace ndg

#endif
