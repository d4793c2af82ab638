// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#include "ndg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ndg/errors.hpp"
#include "ndg/field_io.hpp"
#include "ndg/grid.hpp"
#include "ndg/partition.hpp"
#include "ndg/solver.hpp"

namespace ndg {

namespace {

EquationModel spec_model(const ExperimentSpec& spec, int dim) {
  if (spec.equation == "advection") {
    return EquationModel::advection(dim, {1.0, 0.0, 0.0});
  }
  if (spec.equation == "euler") {
    return EquationModel::isothermal_euler(dim, 1.0);
  }
  throw ConfigError("unknown equation '" + spec.equation + "' (advection or euler)");
}

Mesh spec_mesh(int dim, int cells_per_axis, int order) {
  return Mesh(dim, {cells_per_axis, cells_per_axis, cells_per_axis}, order);
}

StateField spec_initial(const ExperimentSpec& spec, const Mesh& mesh,
                        const EquationModel& model, const QuadratureRule& rule) {
  if (model.kind() == EquationKind::advection) {
    return init_multisine(mesh, model, rule, spec.nk, spec.seed);
  }
  return init_euler_subsonic(mesh, model, rule, spec.seed);
}

BenchReport new_report(const ExperimentSpec& spec) {
  BenchReport report;
  report.meta.version = kVersion;
  report.meta.config_digest = hex_digest64(canonical_spec_string(spec));
  report.meta.timestamp = iso_timestamp_utc();
  return report;
}

BenchRow base_row(const ExperimentSpec& spec, const Mesh& mesh,
                  const EquationModel& model, int workers) {
  BenchRow row;
  row.experiment = spec.experiment;
  row.equation = spec.equation;
  row.dim = mesh.dim;
  row.order = mesh.order;
  row.rk = spec.rk;
  row.nx = mesh.cells[0];
  row.ny = mesh.dim > 1 ? mesh.cells[1] : 0;
  row.nz = mesh.dim > 2 ? mesh.cells[2] : 0;
  row.nk = model.kind() == EquationKind::advection ? spec.nk : 0;
  row.seed = model.kind() == EquationKind::advection ? spec.seed : 0;
  row.cfl = spec.cfl;
  row.workers = workers;
  row.dof = mesh.dof(model);
  return row;
}

void fill_stats(BenchRow& row, const StepStats& stats) {
  row.steps = stats.steps;
  row.dt_min = stats.dt_min;
  row.dt_max = stats.dt_max;
  row.wall_seconds = stats.wall_seconds;
  row.time_per_dof = stats.wall_seconds / static_cast<double>(row.dof);
}

struct TimedRun {
  StateField state;
  StepStats stats;
};

TimedRun timed_run(const SolverConfig& config, const StateField& initial, StepPlan plan,
                   int workers) {
  if (workers <= 1) {
    AdvanceResult r = advance(config, initial, plan);
    return {std::move(r.state), r.stats};
  }
  PartitionedResult r = run_partitioned(config, initial, workers, plan);
  return {std::move(r.state), r.stats};
}

/// Convergence-style sweep shared by converge, cost and fit.
std::vector<BenchRow> converge_rows(const ExperimentSpec& spec, BenchReport& report) {
  if (spec.equation != "advection") {
    throw ConfigError(spec.experiment + " measures the advected profile and needs "
                      "--equation advection");
  }
  if (spec.cells.empty()) throw ConfigError("empty cell sweep");
  std::vector<BenchRow> rows;
  for (int order : spec.orders) {
    const QuadratureRule rule = gauss_lobatto(order);
    for (int c : spec.cells) {
      const Mesh mesh = spec_mesh(spec.dim, c, order);
      const EquationModel model = spec_model(spec, spec.dim);
      BenchRow row = base_row(spec, mesh, model, 1);
      row.t_end = spec.t_end;
      try {
        const StateField initial = spec_initial(spec, mesh, model, rule);
        SolverConfig config{mesh, model, rk_from_name(spec.rk), spec.cfl, spec.t_end};
        TimedRun run = timed_run(config, initial, StepPlan{-1, true}, 1);
        fill_stats(row, run.stats);
        row.l2_error = l2_error(mesh, rule, run.state, initial, 0);
      } catch (const InstabilityError& e) {
        row.status = "failed";
        row.note = e.what();
      }
      report.rows.push_back(row);
      rows.push_back(row);
    }
  }
  return rows;
}

BenchRow make_slope_row(const ExperimentSpec& spec, int order,
                        const std::vector<BenchRow>& rows) {
  BenchRow srow;
  srow.experiment = spec.experiment;
  srow.row_type = "slope";
  srow.equation = spec.equation;
  srow.dim = spec.dim;
  srow.order = order;
  srow.rk = spec.rk;
  srow.nk = spec.nk;
  srow.seed = spec.seed;
  srow.cfl = spec.cfl;
  srow.t_end = spec.t_end;
  std::vector<double> n, err;
  for (const auto& r : rows) {
    if (r.order == order && r.row_type == "run" && r.status == "ok" &&
        r.l2_error > 1e-11) {
      n.push_back(r.nx);
      err.push_back(r.l2_error);
    }
  }
  srow.slope = loglog_slope(n, err);
  if (std::isnan(srow.slope)) {
    srow.status = "skipped";
    srow.note = "fewer than two points above the 1e-11 error floor";
  }
  return srow;
}

}  // namespace

std::string canonical_spec_string(const ExperimentSpec& spec) {
  std::ostringstream s;
  s << "experiment=" << spec.experiment << ";equation=" << spec.equation
    << ";dim=" << spec.dim << ";orders=";
  for (std::size_t i = 0; i < spec.orders.size(); ++i) s << (i ? "," : "") << spec.orders[i];
  s << ";rk=" << spec.rk << ";cells=";
  for (std::size_t i = 0; i < spec.cells.size(); ++i) s << (i ? "," : "") << spec.cells[i];
  s << ";nk=" << spec.nk << ";seed=" << spec.seed << ";workers=";
  for (std::size_t i = 0; i < spec.workers.size(); ++i) s << (i ? "," : "") << spec.workers[i];
  s << ";cfl=" << spec.cfl << ";t_end=" << spec.t_end << ";steps=" << spec.steps
    << ";devices=";
  for (std::size_t i = 0; i < spec.devices.size(); ++i) {
    s << (i ? "," : "") << spec.devices[i].name << ":" << spec.devices[i].watts;
  }
  s << ";compare_equations=" << spec.compare_equations
    << ";dim_compare=" << spec.dim_compare;
  return s.str();
}

double loglog_slope(const std::vector<double>& n, const std::vector<double>& err) {
  if (n.size() != err.size() || n.size() < 2) return BenchRow::nan();
  const std::size_t m = n.size();
  double sx = 0.0, sy = 0.0;
  std::vector<double> x(m), y(m);
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = std::log(n[i]);
    y[i] = std::log(err[i]);
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / m;
  const double my = sy / m;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  if (den == 0.0) return BenchRow::nan();
  return num / den;
}

double interpolate_dof_for_error(
    const std::vector<std::pair<double, double>>& dof_and_error, double target) {
  for (std::size_t i = 0; i + 1 < dof_and_error.size(); ++i) {
    const auto [d0, e0] = dof_and_error[i];
    const auto [d1, e1] = dof_and_error[i + 1];
    if (e0 >= target && target > e1) {
      const double t = (std::log(target) - std::log(e0)) / (std::log(e1) - std::log(e0));
      return std::exp(std::log(d0) + t * (std::log(d1) - std::log(d0)));
    }
  }
  if (!dof_and_error.empty() && dof_and_error.front().second <= target) {
    return dof_and_error.front().first;  // already below target at the coarsest grid
  }
  return BenchRow::nan();
}

BenchReport run_converge(const ExperimentSpec& spec) {
  BenchReport report = new_report(spec);
  const std::vector<BenchRow> rows = converge_rows(spec, report);
  for (int order : spec.orders) {
    report.rows.push_back(make_slope_row(spec, order, rows));
  }
  return report;
}

BenchReport run_cost(const ExperimentSpec& spec) {
  BenchReport report = new_report(spec);
  converge_rows(spec, report);
  return report;
}

BenchReport run_fit(const ExperimentSpec& spec) {
  BenchReport report = new_report(spec);
  const std::vector<BenchRow> rows = converge_rows(spec, report);
  const std::vector<double> targets{1e-2, 1e-3, 1e-4};
  for (int order : spec.orders) {
    std::vector<std::pair<double, double>> curve;
    for (const auto& r : rows) {
      if (r.order == order && r.status == "ok") {
        curve.emplace_back(static_cast<double>(r.dof), r.l2_error);
      }
    }
    std::sort(curve.begin(), curve.end());
    for (double target : targets) {
      BenchRow frow;
      frow.experiment = spec.experiment;
      frow.row_type = "fit";
      frow.equation = spec.equation;
      frow.dim = spec.dim;
      frow.order = order;
      frow.rk = spec.rk;
      frow.nk = spec.nk;
      frow.seed = spec.seed;
      frow.cfl = spec.cfl;
      frow.t_end = spec.t_end;
      frow.target_error = target;
      frow.fit_c_ref = 200.0;
      const double dof_needed = interpolate_dof_for_error(curve, target);
      if (std::isnan(dof_needed)) {
        frow.status = "unreachable";
        frow.note = "target error outside the measured range";
      } else {
        frow.dof = static_cast<long long>(std::llround(dof_needed));
        frow.fit_c = dof_needed * std::pow(target, 1.0 / order);
        if (!curve.empty() && curve.front().second <= target) {
          frow.note = "coarsest grid already meets the target; dof is an upper bound";
        }
      }
      report.rows.push_back(frow);
    }
  }
  return report;
}

BenchReport run_timing(const ExperimentSpec& spec) {
  BenchReport report = new_report(spec);
  if (spec.cells.empty()) throw ConfigError("empty cell sweep");
  std::vector<std::string> equations{spec.equation};
  if (spec.compare_equations) {
    equations.push_back(spec.equation == "advection" ? "euler" : "advection");
  }
  const int workers = spec.workers.empty() ? 1 : spec.workers.front();
  for (const auto& eq : equations) {
    ExperimentSpec eq_spec = spec;
    eq_spec.equation = eq;
    for (int order : spec.orders) {
      const QuadratureRule rule = gauss_lobatto(order);
      for (int c : spec.cells) {
        const Mesh mesh = spec_mesh(spec.dim, c, order);
        const EquationModel model = spec_model(eq_spec, spec.dim);
        BenchRow row = base_row(eq_spec, mesh, model, workers);
        try {
          const StateField initial = spec_initial(eq_spec, mesh, model, rule);
          SolverConfig config{mesh, model, rk_from_name(spec.rk), spec.cfl, spec.t_end};
          TimedRun run = timed_run(config, initial, StepPlan{spec.steps, true}, workers);
          fill_stats(row, run.stats);
        } catch (const DecompositionError& e) {
          row.status = "skipped";
          row.note = e.what();
        } catch (const std::runtime_error& e) {
          row.status = "failed";
          row.note = e.what();
        }
        report.rows.push_back(row);
      }
    }
  }
  return report;
}

BenchReport run_scale(const ExperimentSpec& spec) {
  BenchReport report = new_report(spec);
  if (spec.cells.empty()) throw ConfigError("empty cell sweep");
  if (spec.dim < 2) throw ConfigError("scaling runs need dim >= 2");
  const int order = spec.orders.front();
  const QuadratureRule rule = gauss_lobatto(order);

  auto run_one = [&](const Mesh& mesh, int workers, const char* mode,
                     double baseline_wall, double baseline_tpd) {
    const EquationModel model = spec_model(spec, spec.dim);
    BenchRow row = base_row(spec, mesh, model, workers);
    row.note = mode;
    try {
      const StateField initial = spec_initial(spec, mesh, model, rule);
      SolverConfig config{mesh, model, rk_from_name(spec.rk), spec.cfl, spec.t_end};
      TimedRun run = timed_run(config, initial, StepPlan{spec.steps, true}, workers);
      fill_stats(row, run.stats);
      if (baseline_wall > 0.0) {
        row.speedup = baseline_wall / run.stats.wall_seconds;
        row.efficiency = row.speedup / workers;
      }
      if (baseline_tpd > 0.0) {
        row.efficiency = baseline_tpd / row.time_per_dof;
      }
    } catch (const DecompositionError& e) {
      row.status = "skipped";
      row.note = std::string(mode) + ": " + e.what();
    } catch (const std::runtime_error& e) {
      row.status = "failed";
      row.note = std::string(mode) + ": " + e.what();
    }
    report.rows.push_back(row);
    return row;
  };

  for (int c : spec.cells) {
    // Strong scaling: fixed global grid, serial baseline.
    const Mesh global = spec_mesh(spec.dim, c, order);
    const BenchRow serial = run_one(global, 1, "strong", 0.0, 0.0);
    for (int p : spec.workers) {
      if (p <= 1) continue;
      run_one(global, p, "strong",
              serial.status == "ok" ? serial.wall_seconds : 0.0, 0.0);
    }

    // Weak scaling: c cells per worker per axis; the global grid takes the
    // lowest-interface-area factorization of the worker count.
    double weak_baseline_tpd = 0.0;
    for (int p : spec.workers) {
      std::array<int, 3> best{1, 1, 1};
      long long best_cost = -1;
      for (int px = 1; px <= p; ++px) {
        if (p % px != 0) continue;
        const int rest = p / px;
        for (int py = 1; py <= rest; ++py) {
          if (rest % py != 0) continue;
          const int pz = rest / py;
          if (spec.dim < 3 && pz != 1) continue;
          if (spec.dim < 2 && py != 1) continue;
          const std::array<int, 3> grid{px, py, pz};
          long long cost = 0;
          for (int d = 0; d < spec.dim; ++d) {
            long long cross = 1;
            for (int e = 0; e < spec.dim; ++e) {
              if (e != d) cross *= static_cast<long long>(c) * grid[e];
            }
            cost += grid[d] * cross;
          }
          if (best_cost < 0 || cost < best_cost ||
              (cost == best_cost && grid < best)) {
            best = grid;
            best_cost = cost;
          }
        }
      }
      const Mesh weak_mesh(spec.dim, {c * best[0], c * best[1], c * best[2]}, order);
      const BenchRow row = run_one(weak_mesh, p, "weak", 0.0, weak_baseline_tpd);
      if (p == 1 && row.status == "ok") weak_baseline_tpd = row.time_per_dof;
    }
  }

  if (spec.dim_compare) {
    if (spec.equation != "euler") {
      throw ConfigError("--dim-compare pairs 2D and 3D Euler runs; use --equation euler");
    }
    BenchReport pair = run_dim_compare(96, 4, 12, 4, spec.steps, spec.cfl, spec.rk,
                                       spec.workers.empty() ? 1 : spec.workers.front());
    for (auto& row : pair.rows) {
      row.experiment = spec.experiment;
      report.rows.push_back(row);
    }
  }
  return report;
}

BenchReport run_dim_compare(int cells2d, int order2d, int cells3d, int order3d,
                            long steps, double cfl, const std::string& rk,
                            int workers) {
  ExperimentSpec spec;
  spec.experiment = "scale";
  spec.equation = "euler";
  spec.rk = rk;
  spec.cfl = cfl;
  spec.steps = steps;
  BenchReport report = new_report(spec);

  const Mesh mesh2(2, {cells2d, cells2d, 1}, order2d);
  const Mesh mesh3(3, {cells3d, cells3d, cells3d}, order3d);
  const EquationModel model2 = EquationModel::isothermal_euler(2, 1.0);
  const EquationModel model3 = EquationModel::isothermal_euler(3, 1.0);
  if (mesh2.dof(model2) != mesh3.dof(model3)) {
    throw ConfigError("dim-compare grids do not match in dof: " +
                      std::to_string(mesh2.dof(model2)) + " vs " +
                      std::to_string(mesh3.dof(model3)));
  }
  for (int which = 0; which < 2; ++which) {
    const Mesh& mesh = which == 0 ? mesh2 : mesh3;
    const EquationModel& model = which == 0 ? model2 : model3;
    ExperimentSpec row_spec = spec;
    row_spec.dim = mesh.dim;
    const QuadratureRule rule = gauss_lobatto(mesh.order);
    BenchRow row = base_row(row_spec, mesh, model, workers);
    row.row_type = "dimcmp";
    row.note = "matched-dof pair";
    const StateField initial = init_euler_subsonic(mesh, model, rule);
    SolverConfig config{mesh, model, rk_from_name(rk), cfl, 1.0};
    TimedRun run = timed_run(config, initial, StepPlan{steps, true}, workers);
    fill_stats(row, run.stats);
    report.rows.push_back(row);
  }
  return report;
}

BenchReport run_energy(const ExperimentSpec& spec) {
  BenchReport report = new_report(spec);
  if (spec.cells.empty()) throw ConfigError("empty cell sweep");
  const int workers = spec.workers.empty() ? 1 : spec.workers.front();
  if (spec.devices.empty()) {
    BenchRow warn;
    warn.experiment = spec.experiment;
    warn.row_type = "warning";
    warn.status = "skipped";
    warn.note = "no device power rating configured; energy columns omitted";
    report.rows.push_back(warn);
  }
  const int order = spec.orders.front();
  const QuadratureRule rule = gauss_lobatto(order);
  for (int c : spec.cells) {
    const Mesh mesh = spec_mesh(spec.dim, c, order);
    const EquationModel model = spec_model(spec, spec.dim);
    const StateField initial = spec_initial(spec, mesh, model, rule);
    SolverConfig config{mesh, model, rk_from_name(spec.rk), spec.cfl, spec.t_end};

    // One measured run of each kind; energy rows per device reuse the
    // measurement so the devices stay directly comparable.
    for (int kind = 0; kind < 2; ++kind) {
      const bool fixed = kind == 0;
      BenchRow row = base_row(spec, mesh, model, workers);
      row.note = fixed ? "100-step loop" : "full simulation";
      if (!fixed) row.t_end = spec.t_end;
      try {
        TimedRun run = timed_run(config, initial,
                                 fixed ? StepPlan{spec.steps, true} : StepPlan{-1, true},
                                 workers);
        fill_stats(row, run.stats);
        if (spec.devices.empty()) {
          report.rows.push_back(row);
        } else {
          for (const auto& dev : spec.devices) {
            BenchRow drow = row;
            drow.device = dev.name;
            drow.power_watts = dev.watts;
            drow.energy_joules = dev.watts * drow.wall_seconds;
            drow.energy_per_dof = drow.energy_joules / static_cast<double>(drow.dof);
            report.rows.push_back(drow);
          }
        }
      } catch (const std::runtime_error& e) {
        row.status = "failed";
        row.note = e.what();
        report.rows.push_back(row);
      }
    }
  }
  return report;
}

BenchReport run_simulate(const ExperimentSpec& spec) {
  BenchReport report = new_report(spec);
  if (spec.cells.empty()) throw ConfigError("simulate needs --cells");
  const int order = spec.orders.front();
  const int workers = spec.workers.empty() ? 1 : spec.workers.front();
  const QuadratureRule rule = gauss_lobatto(order);
  const Mesh mesh = spec_mesh(spec.dim, spec.cells.front(), order);
  const EquationModel model = spec_model(spec, spec.dim);
  BenchRow row = base_row(spec, mesh, model, workers);
  row.t_end = spec.t_end;
  const StateField initial = spec_initial(spec, mesh, model, rule);
  SolverConfig config{mesh, model, rk_from_name(spec.rk), spec.cfl, spec.t_end};
  try {
    TimedRun run = timed_run(config, initial, StepPlan{-1, false}, workers);
    fill_stats(row, run.stats);
    row.l2_error = l2_error(mesh, rule, run.state, initial, 0);
    if (!spec.dump_path.empty()) dump_field(spec.dump_path, mesh, run.state);
  } catch (const InstabilityError& e) {
    row.status = "failed";
    row.note = e.what();
  } catch (const RunError& e) {
    row.status = "failed";
    row.note = e.what();
  }
  report.rows.push_back(row);
  return report;
}

BenchReport run_experiment(const ExperimentSpec& spec) {
  if (spec.experiment == "converge") return run_converge(spec);
  if (spec.experiment == "cost") return run_cost(spec);
  if (spec.experiment == "fit") return run_fit(spec);
  if (spec.experiment == "timing") return run_timing(spec);
  if (spec.experiment == "scale") return run_scale(spec);
  if (spec.experiment == "energy") return run_energy(spec);
  if (spec.experiment == "simulate") return run_simulate(spec);
  throw ConfigError("unknown experiment '" + spec.experiment + "'");
}

}  // namespace ndg
