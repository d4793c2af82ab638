// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#include "ndg/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ndg/errors.hpp"

namespace ndg {

namespace {

ButcherTableau make_rk3() {
  // Third-order scheme with stage points 0, 1/3, 2/3 and 1:0:3 output weights.
  ButcherTableau t;
  t.stages = 3;
  t.order = 3;
  t.a[1][0] = 1.0 / 3.0;
  t.a[2][1] = 2.0 / 3.0;
  t.b = {0.25, 0.0, 0.75, 0, 0, 0, 0};
  return t;
}

ButcherTableau make_rk4() {
  ButcherTableau t;
  t.stages = 4;
  t.order = 4;
  t.a[1][0] = 0.5;
  t.a[2][1] = 0.5;
  t.a[3][2] = 1.0;
  t.b = {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0, 0, 0, 0};
  return t;
}

ButcherTableau make_rk6() {
  // Seven-stage sixth-order scheme; q = sqrt(21) appears in stages 5-7.
  const double q = std::sqrt(21.0);
  ButcherTableau t;
  t.stages = 7;
  t.order = 6;
  t.a[1][0] = 1.0;
  t.a[2][0] = 3.0 / 8.0;
  t.a[2][1] = 1.0 / 8.0;
  t.a[3][0] = 8.0 / 27.0;
  t.a[3][1] = 2.0 / 27.0;
  t.a[3][2] = 8.0 / 27.0;
  t.a[4][0] = 3.0 * (3.0 * q - 7.0) / 392.0;
  t.a[4][1] = -8.0 * (7.0 - q) / 392.0;
  t.a[4][2] = 48.0 * (7.0 - q) / 392.0;
  t.a[4][3] = -3.0 * (21.0 - q) / 392.0;
  t.a[5][0] = -5.0 * (231.0 + 51.0 * q) / 1960.0;
  t.a[5][1] = -40.0 * (7.0 + q) / 1960.0;
  t.a[5][2] = -320.0 * q / 1960.0;
  t.a[5][3] = 3.0 * (21.0 + 121.0 * q) / 1960.0;
  t.a[5][4] = 392.0 * (6.0 + q) / 1960.0;
  t.a[6][0] = 15.0 * (22.0 + 7.0 * q) / 180.0;
  t.a[6][1] = 120.0 / 180.0;
  t.a[6][2] = 40.0 * (7.0 * q - 5.0) / 180.0;
  t.a[6][3] = -63.0 * (3.0 * q - 2.0) / 180.0;
  t.a[6][4] = -14.0 * (49.0 + 9.0 * q) / 180.0;
  t.a[6][5] = 70.0 * (7.0 - q) / 180.0;
  t.b = {9.0 / 180.0, 0.0, 64.0 / 180.0, 0.0, 49.0 / 180.0, 49.0 / 180.0, 9.0 / 180.0};
  return t;
}

struct Transverse {
  // Loop bounds for the axes other than the working one; absent axes are 1.
  int axes[2] = {-1, -1};
  int count = 0;
  int cells0 = 1, cells1 = 1;
  int nodes0 = 1, nodes1 = 1;
};

Transverse transverse_of(const FieldShape& s, int axis) {
  Transverse t;
  for (int a = 0; a < s.dim; ++a) {
    if (a != axis) t.axes[t.count++] = a;
  }
  if (t.count > 0) {
    t.cells0 = s.cells[t.axes[0]];
    t.nodes0 = s.order;
  }
  if (t.count > 1) {
    t.cells1 = s.cells[t.axes[1]];
    t.nodes1 = s.order;
  }
  return t;
}

struct Strides {
  std::array<std::size_t, 3> cell{};
  std::array<std::size_t, 3> node{};
};

Strides strides_of(const FieldShape& s) {
  Strides st;
  std::size_t acc = static_cast<std::size_t>(s.n_var);
  for (int a = s.dim - 1; a >= 0; --a) {
    st.node[a] = acc;
    acc *= static_cast<std::size_t>(s.order);
  }
  for (int a = s.dim - 1; a >= 0; --a) {
    st.cell[a] = acc;
    acc *= static_cast<std::size_t>(s.cells[a]);
  }
  return st;
}

std::string cell_name(int axis, int cd, const Transverse& t, int c0, int c1) {
  std::array<int, 3> cell{0, 0, 0};
  cell[axis] = cd;
  if (t.count > 0) cell[t.axes[0]] = c0;
  if (t.count > 1) cell[t.axes[1]] = c1;
  return "(" + std::to_string(cell[0]) + "," + std::to_string(cell[1]) + "," +
         std::to_string(cell[2]) + ")";
}

}  // namespace

RKMethod rk_from_name(std::string_view name) {
  if (name == "rk3") return RKMethod::rk3;
  if (name == "rk4") return RKMethod::rk4;
  if (name == "rk6") return RKMethod::rk6;
  throw ConfigError("unknown Runge-Kutta scheme '" + std::string(name) +
                    "' (expected rk3, rk4 or rk6)");
}

std::string rk_name(RKMethod method) {
  switch (method) {
    case RKMethod::rk3: return "rk3";
    case RKMethod::rk4: return "rk4";
    case RKMethod::rk6: return "rk6";
  }
  return "?";
}

const ButcherTableau& rk_tableau(RKMethod method) {
  static const ButcherTableau rk3 = make_rk3();
  static const ButcherTableau rk4 = make_rk4();
  static const ButcherTableau rk6 = make_rk6();
  switch (method) {
    case RKMethod::rk3: return rk3;
    case RKMethod::rk4: return rk4;
    case RKMethod::rk6: return rk6;
  }
  throw std::logic_error("unreachable");
}

std::size_t face_trace_size(const FieldShape& shape, int axis) {
  const Transverse t = transverse_of(shape, axis);
  return static_cast<std::size_t>(t.cells0) * t.cells1 * t.nodes0 * t.nodes1 *
         shape.n_var;
}

void HaloSet::allocate(const FieldShape& shape) {
  for (int d = 0; d < shape.dim; ++d) {
    low[d].assign(face_trace_size(shape, d), 0.0);
    high[d].assign(face_trace_size(shape, d), 0.0);
  }
}

void pack_face_trace(const FieldShape& shape, const std::vector<double>& u, int axis,
                     int cell_d, int node_d, std::vector<double>& out) {
  const Transverse t = transverse_of(shape, axis);
  const Strides st = strides_of(shape);
  out.resize(face_trace_size(shape, axis));
  const int nv = shape.n_var;
  std::size_t pos = 0;
  const std::size_t fixed = cell_d * st.cell[axis] + node_d * st.node[axis];
  for (int c0 = 0; c0 < t.cells0; ++c0)
    for (int c1 = 0; c1 < t.cells1; ++c1) {
      std::size_t cell_base = fixed;
      if (t.count > 0) cell_base += c0 * st.cell[t.axes[0]];
      if (t.count > 1) cell_base += c1 * st.cell[t.axes[1]];
      for (int a0 = 0; a0 < t.nodes0; ++a0)
        for (int a1 = 0; a1 < t.nodes1; ++a1) {
          std::size_t base = cell_base;
          if (t.count > 0) base += a0 * st.node[t.axes[0]];
          if (t.count > 1) base += a1 * st.node[t.axes[1]];
          for (int v = 0; v < nv; ++v) out[pos++] = u[base + v];
        }
    }
}

DGOperator::DGOperator(const Mesh& mesh, const NodalBasis& basis,
                       const EquationModel& model)
    : basis_(basis), model_(model), dim_(mesh.dim) {
  if (basis.rule.order != mesh.order) {
    throw ConfigError("basis order does not match mesh order");
  }
  if (model.spatial_dim() != mesh.dim) {
    throw ConfigError("model dimension does not match mesh dimension");
  }
  const int n = basis.rule.order;
  const auto& w = basis.rule.weights;
  for (int d = 0; d < dim_; ++d) {
    const double dx = mesh.cell_size(d);
    kernel_[d].assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        kernel_[d][static_cast<std::size_t>(k) * n + l] =
            2.0 * basis.d(l, k) * w[l] / (dx * w[k]);
      }
    lift_[d] = 2.0 / (dx * w[0]);  // w[0] == w[N-1] for Gauss-Lobatto
  }
}

void DGOperator::apply(const FieldShape& s, const std::vector<double>& u,
                       const HaloSet& halos, std::vector<double>& dudt) const {
  dudt.assign(u.size(), 0.0);
  const int N = s.order;
  const int nv = s.n_var;
  const Strides st = strides_of(s);

  double fline[16 * 4];
  double fhat[4];

  for (int d = 0; d < s.dim; ++d) {
    const double* K = kernel_[d].data();
    const double lift = lift_[d];
    const std::size_t sd = st.node[d];
    const Transverse t = transverse_of(s, d);
    const int md = s.cells[d];

    // Volume term: per line of nodes along d, quadrature of F against the
    // basis derivatives.
    for (int cd = 0; cd < md; ++cd)
      for (int c0 = 0; c0 < t.cells0; ++c0)
        for (int c1 = 0; c1 < t.cells1; ++c1) {
          std::size_t cell_base = cd * st.cell[d];
          if (t.count > 0) cell_base += c0 * st.cell[t.axes[0]];
          if (t.count > 1) cell_base += c1 * st.cell[t.axes[1]];
          try {
            for (int a0 = 0; a0 < t.nodes0; ++a0)
              for (int a1 = 0; a1 < t.nodes1; ++a1) {
                std::size_t base = cell_base;
                if (t.count > 0) base += a0 * st.node[t.axes[0]];
                if (t.count > 1) base += a1 * st.node[t.axes[1]];
                for (int l = 0; l < N; ++l) {
                  model_.physical_flux(&u[base + l * sd], d, &fline[l * nv]);
                }
                for (int k = 0; k < N; ++k) {
                  double* out = &dudt[base + k * sd];
                  const double* krow = &K[static_cast<std::size_t>(k) * N];
                  double acc[4] = {0.0, 0.0, 0.0, 0.0};
                  for (int l = 0; l < N; ++l) {
                    const double kl = krow[l];
                    const double* f = &fline[l * nv];
                    for (int v = 0; v < nv; ++v) acc[v] += kl * f[v];
                  }
                  for (int v = 0; v < nv; ++v) out[v] += acc[v];
                }
              }
          } catch (const PhysicsError& e) {
            throw PhysicsError(std::string(e.what()) + " at cell " +
                               cell_name(d, cd, t, c0, c1));
          }
        }

    // Face term: one Lax-Friedrichs flux per face node, lifted into the two
    // adjacent boundary nodes. Both ends of the block use halo traces; the
    // minus state is always the lower side along the axis so either owner of
    // a face reproduces the identical flux value.
    for (int f = 0; f <= md; ++f) {
      const bool has_left = f > 0;
      const bool has_right = f < md;
      std::size_t pos = 0;
      for (int c0 = 0; c0 < t.cells0; ++c0)
        for (int c1 = 0; c1 < t.cells1; ++c1) {
          std::size_t tcell = 0;
          if (t.count > 0) tcell += c0 * st.cell[t.axes[0]];
          if (t.count > 1) tcell += c1 * st.cell[t.axes[1]];
          const std::size_t left_base =
              has_left ? tcell + (f - 1) * st.cell[d] + (N - 1) * sd : 0;
          const std::size_t right_base = has_right ? tcell + f * st.cell[d] : 0;
          try {
            for (int a0 = 0; a0 < t.nodes0; ++a0)
              for (int a1 = 0; a1 < t.nodes1; ++a1) {
                std::size_t noff = 0;
                if (t.count > 0) noff += a0 * st.node[t.axes[0]];
                if (t.count > 1) noff += a1 * st.node[t.axes[1]];
                const double* um =
                    has_left ? &u[left_base + noff] : &halos.low[d][pos];
                const double* up =
                    has_right ? &u[right_base + noff] : &halos.high[d][pos];
                model_.lax_friedrichs(um, up, d, fhat);
                if (has_left) {
                  double* out = &dudt[left_base + noff];
                  for (int v = 0; v < nv; ++v) out[v] -= lift * fhat[v];
                }
                if (has_right) {
                  double* out = &dudt[right_base + noff];
                  for (int v = 0; v < nv; ++v) out[v] += lift * fhat[v];
                }
                pos += nv;
              }
          } catch (const PhysicsError& e) {
            throw PhysicsError(std::string(e.what()) + " at face " + std::to_string(f) +
                               " axis " + std::to_string(d));
          }
        }
    }
  }
}

double max_wavespeed_bound(const FieldShape& shape, const EquationModel& model,
                           const std::vector<double>& u) {
  if (model.kind() == EquationKind::advection) {
    double alpha = 0.0;
    for (int d = 0; d < model.spatial_dim(); ++d) {
      alpha = std::max(alpha, std::abs(model.velocity()[d]));
    }
    return alpha;
  }
  const int nv = shape.n_var;
  const int dim = model.spatial_dim();
  const double a = model.sound_speed();
  double alpha = 0.0;
  for (std::size_t i = 0; i < u.size(); i += nv) {
    const double rho = u[i];
    if (!(rho > 0.0)) {
      throw PhysicsError("nonpositive density " + std::to_string(rho) +
                         " in time-step estimate");
    }
    double m = 0.0;
    for (int d = 0; d < dim; ++d) m = std::max(m, std::abs(u[i + 1 + d]));
    alpha = std::max(alpha, m / rho + a);
  }
  return alpha;
}

double dt_from_alpha(const Mesh& mesh, double alpha, double cfl) {
  if (alpha <= 0.0) return std::numeric_limits<double>::infinity();
  double h = mesh.cell_size(0);
  for (int d = 1; d < mesh.dim; ++d) h = std::min(h, mesh.cell_size(d));
  return cfl * h / (alpha * (2 * mesh.order - 1));
}

double compute_dt(const Mesh& mesh, const EquationModel& model, const StateField& field,
                  double cfl) {
  return dt_from_alpha(mesh, max_wavespeed_bound(field.shape(), model, field.values()),
                       cfl);
}

void validate(const SolverConfig& config) {
  if (!(config.cfl > 0.0) || config.cfl > 1.0) {
    throw ConfigError("cfl must lie in (0, 1]");
  }
  if (!(config.t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (config.model.spatial_dim() != config.mesh.dim) {
    throw ConfigError("model dimension does not match mesh dimension");
  }
}

namespace {

void check_finite(const std::vector<double>& u, long step) {
  for (double v : u) {
    if (!std::isfinite(v)) {
      throw InstabilityError(
          "non-finite state after step " + std::to_string(step), step);
    }
  }
}

}  // namespace

AdvanceResult advance(const SolverConfig& config, const StateField& initial,
                      StepPlan plan) {
  validate(config);
  const Mesh& mesh = config.mesh;
  const NodalBasis basis = differentiation_matrix(gauss_lobatto(mesh.order));
  const DGOperator op(mesh, basis, config.model);

  AdvanceResult result;
  result.state = initial;
  const FieldShape& shape = result.state.shape();
  std::vector<double>& u = result.state.values();

  HaloSet halos;
  halos.allocate(shape);
  auto rhs = [&](const std::vector<double>& state, std::vector<double>& dudt) {
    for (int d = 0; d < shape.dim; ++d) {
      pack_face_trace(shape, state, d, shape.cells[d] - 1, shape.order - 1,
                      halos.low[d]);
      pack_face_trace(shape, state, d, 0, 0, halos.high[d]);
    }
    op.apply(shape, state, halos, dudt);
  };

  RKIntegrator integrator(config.rk, u.size());

  if (plan.warmup) {
    std::vector<double> scratch = u;
    double dt = dt_from_alpha(mesh, max_wavespeed_bound(shape, config.model, scratch),
                              config.cfl);
    if (!std::isfinite(dt)) dt = config.t_end;
    integrator.step(scratch, dt, rhs);
  }

  StepStats& stats = result.stats;
  const auto t0 = std::chrono::steady_clock::now();
  if (plan.fixed_steps >= 0) {
    for (long s = 0; s < plan.fixed_steps; ++s) {
      const double dt =
          dt_from_alpha(mesh, max_wavespeed_bound(shape, config.model, u), config.cfl);
      if (!std::isfinite(dt)) {
        throw ConfigError("fixed-step run requires a positive wavespeed");
      }
      integrator.step(u, dt, rhs);
      check_finite(u, s + 1);
      ++stats.steps;
      stats.dt_min = std::min(stats.dt_min, dt);
      stats.dt_max = std::max(stats.dt_max, dt);
    }
  } else {
    double t = 0.0;
    while (t < config.t_end) {
      const double stable =
          dt_from_alpha(mesh, max_wavespeed_bound(shape, config.model, u), config.cfl);
      const double remaining = config.t_end - t;
      const bool last = remaining <= stable;
      const double dt = last ? remaining : stable;
      integrator.step(u, dt, rhs);
      check_finite(u, stats.steps + 1);
      ++stats.steps;
      stats.dt_min = std::min(stats.dt_min, dt);
      stats.dt_max = std::max(stats.dt_max, dt);
      if (last) break;
      t += dt;
    }
  }
  stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

StateField serial_rhs(const Mesh& mesh, const NodalBasis& basis,
                      const EquationModel& model, const StateField& field) {
  const DGOperator op(mesh, basis, model);
  const FieldShape& shape = field.shape();
  HaloSet halos;
  halos.allocate(shape);
  for (int d = 0; d < shape.dim; ++d) {
    pack_face_trace(shape, field.values(), d, shape.cells[d] - 1, shape.order - 1,
                    halos.low[d]);
    pack_face_trace(shape, field.values(), d, 0, 0, halos.high[d]);
  }
  StateField out(shape);
  op.apply(shape, field.values(), halos, out.values());
  return out;
}

}  // namespace ndg
