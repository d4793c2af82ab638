// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NDG_SOLVER_HPP
#define NDG_SOLVER_HPP

#include <array>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "ndg/basis.hpp"
#include "ndg/grid.hpp"
#include "ndg/models.hpp"

namespace ndg {

enum class RKMethod { rk3, rk4, rk6 };

RKMethod rk_from_name(std::string_view name);
std::string rk_name(RKMethod method);

/// Explicit Runge-Kutta coefficients in increment form:
///   k_i = dt F(u + sum_j a[i][j] k_j),  u' = u + sum_i b[i] k_i.
struct ButcherTableau {
  int stages = 0;
  int order = 0;  // classical order of accuracy
  std::array<std::array<double, 7>, 7> a{};
  std::array<double, 7> b{};
};

const ButcherTableau& rk_tableau(RKMethod method);

/// Steps a flat state vector with preallocated stage buffers; nothing is
/// allocated after construction, so the integrator can sit inside a timed
/// loop.
class RKIntegrator {
public:
  RKIntegrator(RKMethod method, std::size_t n)
      : tableau_(rk_tableau(method)), stage_(n) {
    for (int i = 0; i < tableau_.stages; ++i) k_[i].assign(n, 0.0);
  }

  const ButcherTableau& tableau() const { return tableau_; }

  /// rhs signature: void(const std::vector<double>& state, std::vector<double>& dudt).
  template <typename Rhs>
  void step(std::vector<double>& u, double dt, Rhs&& rhs) {
    const std::size_t n = u.size();
    for (int i = 0; i < tableau_.stages; ++i) {
      const std::vector<double>* arg = &u;
      if (i > 0) {
        stage_ = u;
        for (int j = 0; j < i; ++j) {
          const double aij = tableau_.a[i][j];
          if (aij == 0.0) continue;
          const double* kj = k_[j].data();
          double* s = stage_.data();
          for (std::size_t m = 0; m < n; ++m) s[m] += aij * kj[m];
        }
        arg = &stage_;
      }
      rhs(*arg, k_[i]);
      double* ki = k_[i].data();
      for (std::size_t m = 0; m < n; ++m) ki[m] *= dt;
    }
    for (int i = 0; i < tableau_.stages; ++i) {
      const double bi = tableau_.b[i];
      if (bi == 0.0) continue;
      const double* ki = k_[i].data();
      double* up = u.data();
      for (std::size_t m = 0; m < n; ++m) up[m] += bi * ki[m];
    }
  }

private:
  ButcherTableau tableau_;
  std::array<std::vector<double>, 7> k_;
  std::vector<double> stage_;
};

/// Exterior face traces for one block, one plane per face. Entry order per
/// plane: transverse cells (lexicographic), then the cell's face nodes
/// (lexicographic), then the variable index.
///   low[d]  = trace the low-side neighbor exposes to us (our U- at face 0)
///   high[d] = trace the high-side neighbor exposes (our U+ at the last face)
struct HaloSet {
  std::array<std::vector<double>, 3> low;
  std::array<std::vector<double>, 3> high;

  void allocate(const FieldShape& shape);
};

/// Number of doubles in one face plane: face cells x order^(dim-1) x n_var.
std::size_t face_trace_size(const FieldShape& shape, int axis);

/// Copy the boundary-node values (cell index `cell_d`, node index `node_d`
/// along `axis`) into `out` in plane order. The trace a block sends to its
/// low neighbor is (0, 0); to its high neighbor (cells-1, order-1).
void pack_face_trace(const FieldShape& shape, const std::vector<double>& u, int axis,
                     int cell_d, int node_d, std::vector<double>& out);

/// The semi-discrete NDG operator: volume term plus lifted Lax-Friedrichs
/// face fluxes, summed over axes. Geometry and quadrature are baked into
/// per-axis kernel matrices at construction; apply() is pure and reusable
/// for any block of the mesh (the block only changes the cell counts).
class DGOperator {
public:
  DGOperator(const Mesh& mesh, const NodalBasis& basis, const EquationModel& model);

  /// dudt = d/dt of the nodal unknowns for one block. `halos` supplies the
  /// exterior traces (periodic self-copies in serial). Model errors are
  /// rethrown with the offending local cell attached.
  void apply(const FieldShape& local, const std::vector<double>& u, const HaloSet& halos,
             std::vector<double>& dudt) const;

  const NodalBasis& basis() const { return basis_; }
  const EquationModel& model() const { return model_; }

private:
  NodalBasis basis_;
  EquationModel model_;
  int dim_;
  std::array<std::vector<double>, 3> kernel_;  // K[k*N+l] = 2 D[l][k] w_l / (dx_d w_k)
  std::array<double, 3> lift_{};               // 2 / (dx_d w_edge)
};

/// Largest wavespeed bound over all nodes and axes (the global alpha of the
/// CFL condition). Advection needs no field scan; Euler scans every node.
double max_wavespeed_bound(const FieldShape& shape, const EquationModel& model,
                           const std::vector<double>& u);

/// dt = cfl min_d(dx_d) / (alpha (2N - 1)); +inf when alpha is zero, in
/// which case the caller steps straight to the end time.
double dt_from_alpha(const Mesh& mesh, double alpha, double cfl);

double compute_dt(const Mesh& mesh, const EquationModel& model, const StateField& field,
                  double cfl);

struct SolverConfig {
  Mesh mesh;
  EquationModel model;
  RKMethod rk = RKMethod::rk4;
  double cfl = 0.4;
  double t_end = 1.0;
};

/// Throws ConfigError unless cfl in (0, 1], t_end > 0 and mesh/model agree.
void validate(const SolverConfig& config);

struct StepStats {
  long steps = 0;
  double dt_min = std::numeric_limits<double>::infinity();
  double dt_max = 0.0;
  double wall_seconds = 0.0;  // stepping loop only
};

struct AdvanceResult {
  StateField state;
  StepStats stats;
};

/// What to run: either advance to config.t_end (fixed_steps < 0, shortening
/// the final step to land exactly on it) or exactly `fixed_steps` CFL steps.
/// With warmup, one untimed step on a scratch copy precedes the timed loop.
struct StepPlan {
  long fixed_steps = -1;
  bool warmup = false;
};

/// Serial time integration with periodic boundaries. Throws
/// InstabilityError if a step produces non-finite values.
AdvanceResult advance(const SolverConfig& config, const StateField& initial,
                      StepPlan plan = {});

/// One serial rhs evaluation with periodic halos (test and diagnostic use).
StateField serial_rhs(const Mesh& mesh, const NodalBasis& basis,
                      const EquationModel& model, const StateField& field);

}  // namespace ndg

#endif
