// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#include "ndg/models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ndg/errors.hpp"

namespace ndg {

EquationModel EquationModel::advection(int spatial_dim, std::array<double, 3> velocity) {
  if (spatial_dim < 1 || spatial_dim > 3) {
    throw ConfigError("advection: spatial_dim must be 1..3");
  }
  EquationModel m(EquationKind::advection, spatial_dim);
  m.velocity_ = velocity;
  return m;
}

EquationModel EquationModel::isothermal_euler(int spatial_dim, double sound_speed) {
  if (spatial_dim < 2 || spatial_dim > 3) {
    throw ConfigError("isothermal_euler: spatial_dim must be 2 or 3");
  }
  if (!(sound_speed > 0.0)) {
    throw ConfigError("isothermal_euler: sound speed must be positive");
  }
  EquationModel m(EquationKind::euler_isothermal, spatial_dim);
  m.sound_speed_ = sound_speed;
  return m;
}

void EquationModel::check_axis(int axis) const {
  if (axis < 0 || axis >= dim_) {
    throw std::out_of_range("axis " + std::to_string(axis) + " outside spatial_dim " +
                            std::to_string(dim_));
  }
}

void EquationModel::physical_flux(const double* u, int axis, double* flux) const {
  check_axis(axis);
  if (kind_ == EquationKind::advection) {
    flux[0] = velocity_[static_cast<std::size_t>(axis)] * u[0];
    return;
  }
  const double rho = u[0];
  if (!(rho > 0.0)) {
    throw PhysicsError("nonpositive density " + std::to_string(rho) + " in flux evaluation");
  }
  const double ua = u[1 + axis] / rho;
  const int nv = n_var();
  flux[0] = u[1 + axis];
  for (int i = 1; i < nv; ++i) flux[i] = ua * u[i];
  flux[1 + axis] += rho * sound_speed_ * sound_speed_;
}

double EquationModel::wavespeed_bound(const double* u, int axis) const {
  check_axis(axis);
  if (kind_ == EquationKind::advection) {
    return std::abs(velocity_[static_cast<std::size_t>(axis)]);
  }
  const double rho = u[0];
  if (!(rho > 0.0)) {
    throw PhysicsError("nonpositive density " + std::to_string(rho) +
                       " in wavespeed evaluation");
  }
  return std::abs(u[1 + axis] / rho) + sound_speed_;
}

double EquationModel::max_wavespeed(const double* u_minus, const double* u_plus,
                                    int axis) const {
  return std::max(wavespeed_bound(u_minus, axis), wavespeed_bound(u_plus, axis));
}

void EquationModel::lax_friedrichs(const double* u_minus, const double* u_plus, int axis,
                                   double* flux) const {
  double fm[4];
  double fp[4];
  physical_flux(u_minus, axis, fm);
  physical_flux(u_plus, axis, fp);
  const double alpha = max_wavespeed(u_minus, u_plus, axis);
  const int nv = n_var();
  for (int i = 0; i < nv; ++i) {
    flux[i] = 0.5 * (fm[i] + fp[i] - alpha * (u_plus[i] - u_minus[i]));
  }
}

ConservedState EquationModel::physical_flux(const ConservedState& u, int axis) const {
  ConservedState f;
  f.n = n_var();
  physical_flux(u.v.data(), axis, f.v.data());
  return f;
}

double EquationModel::max_wavespeed(const ConservedState& u_minus,
                                    const ConservedState& u_plus, int axis) const {
  return max_wavespeed(u_minus.v.data(), u_plus.v.data(), axis);
}

ConservedState EquationModel::lax_friedrichs(const ConservedState& u_minus,
                                             const ConservedState& u_plus,
                                             int axis) const {
  ConservedState f;
  f.n = n_var();
  lax_friedrichs(u_minus.v.data(), u_plus.v.data(), axis, f.v.data());
  return f;
}

}  // namespace ndg
