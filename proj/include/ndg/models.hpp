// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NDG_MODELS_HPP
#define NDG_MODELS_HPP

#include <array>
#include <cstddef>

namespace ndg {

enum class EquationKind { advection, euler_isothermal };

/// A conserved-variable state at one point. At most four components:
/// advection carries one scalar, isothermal Euler carries
/// (rho, rho*u_x, rho*u_y[, rho*u_z]).
struct ConservedState {
  std::array<double, 4> v{};
  int n = 0;

  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
};

/// Flux functions, wavespeed bounds and the Lax-Friedrichs numerical flux
/// for the two supported systems. All evaluation routines are pure; the
/// raw-pointer overloads are the solver's hot path and the ConservedState
/// overloads wrap them.
class EquationModel {
public:
  /// Linear advection of one scalar with constant velocity a.
  static EquationModel advection(int spatial_dim, std::array<double, 3> velocity);

  /// Isothermal Euler (2D/3D) with constant sound speed a > 0
  /// (pressure rho a^2).
  static EquationModel isothermal_euler(int spatial_dim, double sound_speed);

  EquationKind kind() const { return kind_; }
  int spatial_dim() const { return dim_; }
  int n_var() const { return kind_ == EquationKind::advection ? 1 : dim_ + 1; }
  const std::array<double, 3>& velocity() const { return velocity_; }
  double sound_speed() const { return sound_speed_; }

  /// F_axis(u). Advection: a_axis * u. Euler: (rho u_a, rho u_a u_i + delta_ia rho a^2).
  /// Throws PhysicsError for Euler states with rho <= 0.
  void physical_flux(const double* u, int axis, double* flux) const;

  /// Largest |eigenvalue| of dF_axis/dU at one state: |a_axis| for advection,
  /// |u_axis| + a for Euler.
  double wavespeed_bound(const double* u, int axis) const;

  /// Local wavespeed at an interface: max of the two one-sided bounds.
  double max_wavespeed(const double* u_minus, const double* u_plus, int axis) const;

  /// Lax-Friedrichs flux 0.5 [F(u-) + F(u+) - alpha (u+ - u-)], alpha local.
  void lax_friedrichs(const double* u_minus, const double* u_plus, int axis,
                      double* flux) const;

  ConservedState physical_flux(const ConservedState& u, int axis) const;
  double max_wavespeed(const ConservedState& u_minus, const ConservedState& u_plus,
                       int axis) const;
  ConservedState lax_friedrichs(const ConservedState& u_minus,
                                const ConservedState& u_plus, int axis) const;

private:
  EquationModel(EquationKind kind, int dim) : kind_(kind), dim_(dim) {}
  void check_axis(int axis) const;

  EquationKind kind_;
  int dim_;
  std::array<double, 3> velocity_{};
  double sound_speed_ = 0.0;
};

}  // namespace ndg

#endif
