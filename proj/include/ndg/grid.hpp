// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NDG_GRID_HPP
#define NDG_GRID_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "ndg/basis.hpp"
#include "ndg/models.hpp"

namespace ndg {

/// Structured periodic box mesh. Axes beyond `dim` hold one cell of length 1
/// so per-axis loops can always run over three entries.
struct Mesh {
  Mesh(int dim, std::array<int, 3> cells, int order,
       std::array<double, 3> length = {1.0, 1.0, 1.0});

  int dim;
  std::array<int, 3> cells;
  std::array<double, 3> length;
  int order;  // nodes per cell per axis

  double cell_size(int axis) const { return length[axis] / cells[axis]; }
  std::int64_t cell_count() const {
    return std::int64_t(cells[0]) * cells[1] * cells[2];
  }
  std::int64_t nodes_per_cell() const;
  /// The size metric used in every report: cells * order^dim * n_var.
  std::int64_t dof(const EquationModel& model) const;

  /// Periodic cell neighbor along an axis; offset may be negative.
  int wrap_cell(int axis, int cell, int offset) const;
};

/// Index arithmetic for the dense nodal layout
///   [cell_x][cell_y][cell_z][node_i][node_j][node_k][var]
/// with degenerate axes dropped (their cell and node counts are 1).
/// Cell indices are outermost and the variable index is innermost.
struct FieldShape {
  int dim = 0;
  std::array<int, 3> cells{1, 1, 1};
  int order = 0;
  int n_var = 0;

  std::size_t size() const;
  std::size_t index(const std::array<int, 3>& cell, const std::array<int, 3>& node,
                    int var) const {
    std::size_t idx = 0;
    for (int a = 0; a < dim; ++a) idx = idx * cells[a] + cell[a];
    for (int a = 0; a < dim; ++a) idx = idx * order + node[a];
    return idx * n_var + var;
  }
};

/// Nodal unknowns for one mesh and one equation system.
class StateField {
public:
  StateField() = default;
  StateField(const Mesh& mesh, const EquationModel& model);
  explicit StateField(const FieldShape& shape);

  const FieldShape& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::vector<double>& values() { return data_; }
  const std::vector<double>& values() const { return data_; }

  double& at(const std::array<int, 3>& cell, const std::array<int, 3>& node, int var) {
    return data_[shape_.index(cell, node, var)];
  }
  double at(const std::array<int, 3>& cell, const std::array<int, 3>& node,
            int var) const {
    return data_[shape_.index(cell, node, var)];
  }

  bool all_finite() const;

private:
  FieldShape shape_;
  std::vector<double> data_;
};

/// Physical coordinate of one node: x = x_left + (dx/2)(xi + 1) per axis.
/// Throws std::out_of_range for indices outside the mesh.
std::array<double, 3> node_coordinates(const Mesh& mesh, const QuadratureRule& rule,
                                       const std::array<int, 3>& cell,
                                       const std::array<int, 3>& node);

/// Random sine-mode amplitudes A_k in [0, 1), k = 1..n_modes, drawn from
/// SplitMix64 so a seed pins the profile exactly.
std::vector<double> multisine_amplitudes(int n_modes, std::uint64_t seed);

/// Scalar profile U_0(x) = sum_k A_k sin(2 pi k x), sampled at the nodes
/// (collocation). Varies along x only, in any dimension. Advection only.
StateField init_multisine(const Mesh& mesh, const EquationModel& model,
                          const QuadratureRule& rule,
                          const std::vector<double>& amplitudes);
StateField init_multisine(const Mesh& mesh, const EquationModel& model,
                          const QuadratureRule& rule, int n_modes, std::uint64_t seed);

/// Smooth periodic subsonic state for isothermal Euler (2D/3D):
///   rho = 1 + 0.2 sin(2 pi x) sin(2 pi y) [sin(2 pi z)]
///   u_x = 0.5 a sin(2 pi y), u_y = 0.5 a sin(2 pi x), u_z = 0
/// so the peak component speed is half the sound speed. The seed is accepted
/// for interface uniformity; the profile itself is fixed.
StateField init_euler_subsonic(const Mesh& mesh, const EquationModel& model,
                               const QuadratureRule& rule, std::uint64_t seed = 0);

/// Gauss-Lobatto L2 norm of (a - b) for one variable:
///   sqrt( sum_cells sum_nodes prod_d (w dx_d / 2) (a - b)^2 ).
double l2_error(const Mesh& mesh, const QuadratureRule& rule, const StateField& a,
                const StateField& b, int var);

/// Quadrature integral of each variable over the whole box.
std::vector<double> conserved_totals(const Mesh& mesh, const QuadratureRule& rule,
                                     const StateField& field);

/// Quadrature integral of |u_var|; a scale for relative-drift checks on
/// variables whose signed total vanishes.
double l1_norm(const Mesh& mesh, const QuadratureRule& rule, const StateField& field,
               int var);

}  // namespace ndg

#endif
