// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#include "ndg/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ndg/errors.hpp"
#include "ndg/rng.hpp"

namespace ndg {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_model_mesh(const Mesh& mesh, const EquationModel& model) {
  if (model.spatial_dim() != mesh.dim) {
    throw ConfigError("model dimension " + std::to_string(model.spatial_dim()) +
                      " does not match mesh dimension " + std::to_string(mesh.dim));
  }
}

// Visit every (cell, node) pair with its quadrature weight scaled by the
// cell volume Jacobian, prod_d (w dx_d / 2).
template <typename Fn>
void for_each_node(const Mesh& mesh, const QuadratureRule& rule, Fn&& fn) {
  const int n = rule.order;
  std::array<int, 3> node_count{1, 1, 1};
  for (int a = 0; a < mesh.dim; ++a) node_count[a] = n;
  double jac = 1.0;
  for (int a = 0; a < mesh.dim; ++a) jac *= 0.5 * mesh.cell_size(a);

  std::array<int, 3> cell{0, 0, 0};
  std::array<int, 3> node{0, 0, 0};
  for (cell[0] = 0; cell[0] < mesh.cells[0]; ++cell[0])
    for (cell[1] = 0; cell[1] < mesh.cells[1]; ++cell[1])
      for (cell[2] = 0; cell[2] < mesh.cells[2]; ++cell[2])
        for (node[0] = 0; node[0] < node_count[0]; ++node[0])
          for (node[1] = 0; node[1] < node_count[1]; ++node[1])
            for (node[2] = 0; node[2] < node_count[2]; ++node[2]) {
              double w = jac;
              for (int a = 0; a < mesh.dim; ++a) w *= rule.weights[node[a]];
              fn(cell, node, w);
            }
}

}  // namespace

Mesh::Mesh(int dim_, std::array<int, 3> cells_, int order_, std::array<double, 3> length_)
    : dim(dim_), cells(cells_), length(length_), order(order_) {
  if (dim < 1 || dim > 3) throw ConfigError("mesh dimension must be 1..3");
  if (order < 2 || order > 16) throw ConfigError("mesh order must lie in 2..16");
  for (int a = 0; a < dim; ++a) {
    if (cells[a] < 1) throw ConfigError("cell count must be >= 1 on every axis");
    if (!(length[a] > 0.0)) throw ConfigError("domain length must be positive");
  }
  for (int a = dim; a < 3; ++a) {
    cells[a] = 1;
    length[a] = 1.0;
  }
}

std::int64_t Mesh::nodes_per_cell() const {
  std::int64_t n = 1;
  for (int a = 0; a < dim; ++a) n *= order;
  return n;
}

std::int64_t Mesh::dof(const EquationModel& model) const {
  return cell_count() * nodes_per_cell() * model.n_var();
}

int Mesh::wrap_cell(int axis, int cell, int offset) const {
  const int n = cells[axis];
  int c = (cell + offset) % n;
  if (c < 0) c += n;
  return c;
}

std::size_t FieldShape::size() const {
  std::size_t s = static_cast<std::size_t>(n_var);
  for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(cells[a]) * order;
  return s;
}

StateField::StateField(const Mesh& mesh, const EquationModel& model) {
  check_model_mesh(mesh, model);
  shape_.dim = mesh.dim;
  shape_.cells = mesh.cells;
  shape_.order = mesh.order;
  shape_.n_var = model.n_var();
  data_.assign(shape_.size(), 0.0);
}

StateField::StateField(const FieldShape& shape) : shape_(shape) {
  data_.assign(shape_.size(), 0.0);
}

bool StateField::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

std::array<double, 3> node_coordinates(const Mesh& mesh, const QuadratureRule& rule,
                                       const std::array<int, 3>& cell,
                                       const std::array<int, 3>& node) {
  if (rule.order != mesh.order) throw ConfigError("rule order does not match mesh order");
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int a = 0; a < mesh.dim; ++a) {
    if (cell[a] < 0 || cell[a] >= mesh.cells[a]) {
      throw std::out_of_range("cell index out of range on axis " + std::to_string(a));
    }
    if (node[a] < 0 || node[a] >= mesh.order) {
      throw std::out_of_range("node index out of range on axis " + std::to_string(a));
    }
    const double dx = mesh.cell_size(a);
    x[a] = cell[a] * dx + 0.5 * dx * (rule.nodes[node[a]] + 1.0);
  }
  return x;
}

std::vector<double> multisine_amplitudes(int n_modes, std::uint64_t seed) {
  if (n_modes < 1) throw ConfigError("multisine: need at least one mode");
  SplitMix64 rng(seed);
  std::vector<double> amps(n_modes);
  for (double& a : amps) a = rng.next_unit();
  return amps;
}

StateField init_multisine(const Mesh& mesh, const EquationModel& model,
                          const QuadratureRule& rule,
                          const std::vector<double>& amplitudes) {
  check_model_mesh(mesh, model);
  if (model.kind() != EquationKind::advection) {
    throw ConfigError("init_multisine applies to the advection scalar only");
  }
  if (amplitudes.empty()) throw ConfigError("multisine: need at least one mode");

  StateField field(mesh, model);
  for_each_node(mesh, rule, [&](const std::array<int, 3>& cell,
                                const std::array<int, 3>& node, double) {
    const double x = node_coordinates(mesh, rule, cell, node)[0];
    double u = 0.0;
    for (std::size_t k = 0; k < amplitudes.size(); ++k) {
      u += amplitudes[k] * std::sin(kTwoPi * static_cast<double>(k + 1) * x);
    }
    field.at(cell, node, 0) = u;
  });
  return field;
}

StateField init_multisine(const Mesh& mesh, const EquationModel& model,
                          const QuadratureRule& rule, int n_modes, std::uint64_t seed) {
  return init_multisine(mesh, model, rule, multisine_amplitudes(n_modes, seed));
}

StateField init_euler_subsonic(const Mesh& mesh, const EquationModel& model,
                               const QuadratureRule& rule, std::uint64_t) {
  check_model_mesh(mesh, model);
  if (model.kind() != EquationKind::euler_isothermal) {
    throw ConfigError("init_euler_subsonic requires an isothermal Euler model");
  }
  if (mesh.dim < 2) {
    throw ConfigError("init_euler_subsonic is defined for 2D/3D meshes");
  }
  const double a = model.sound_speed();
  StateField field(mesh, model);
  for_each_node(mesh, rule, [&](const std::array<int, 3>& cell,
                                const std::array<int, 3>& node, double) {
    const auto x = node_coordinates(mesh, rule, cell, node);
    const double sx = std::sin(kTwoPi * x[0]);
    const double sy = std::sin(kTwoPi * x[1]);
    double rho = 1.0 + 0.2 * sx * sy;
    if (mesh.dim == 3) rho = 1.0 + 0.2 * sx * sy * std::sin(kTwoPi * x[2]);
    const double ux = 0.5 * a * sy;
    const double uy = 0.5 * a * sx;
    field.at(cell, node, 0) = rho;
    field.at(cell, node, 1) = rho * ux;
    field.at(cell, node, 2) = rho * uy;
    if (mesh.dim == 3) field.at(cell, node, 3) = 0.0;
  });
  return field;
}

double l2_error(const Mesh& mesh, const QuadratureRule& rule, const StateField& a,
                const StateField& b, int var) {
  if (a.size() != b.size() || a.shape().n_var != b.shape().n_var) {
    throw ConfigError("l2_error: field shapes do not match");
  }
  if (var < 0 || var >= a.shape().n_var) throw std::out_of_range("l2_error: bad variable");
  double sum = 0.0;
  for_each_node(mesh, rule, [&](const std::array<int, 3>& cell,
                                const std::array<int, 3>& node, double w) {
    const double d = a.at(cell, node, var) - b.at(cell, node, var);
    sum += w * d * d;
  });
  return std::sqrt(sum);
}

std::vector<double> conserved_totals(const Mesh& mesh, const QuadratureRule& rule,
                                     const StateField& field) {
  std::vector<double> totals(field.shape().n_var, 0.0);
  for_each_node(mesh, rule, [&](const std::array<int, 3>& cell,
                                const std::array<int, 3>& node, double w) {
    for (int v = 0; v < field.shape().n_var; ++v) totals[v] += w * field.at(cell, node, v);
  });
  return totals;
}

double l1_norm(const Mesh& mesh, const QuadratureRule& rule, const StateField& field,
               int var) {
  double sum = 0.0;
  for_each_node(mesh, rule, [&](const std::array<int, 3>& cell,
                                const std::array<int, 3>& node, double w) {
    sum += w * std::abs(field.at(cell, node, var));
  });
  return sum;
}

}  // namespace ndg
