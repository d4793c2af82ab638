// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>

#include "ndg/errors.hpp"
#include "ndg/field_io.hpp"
#include "ndg/grid.hpp"
#include "ndg/rng.hpp"

using namespace ndg;

TEST_CASE("mesh validation") {
  CHECK_THROWS_AS(Mesh(0, {4, 1, 1}, 3), ConfigError);
  CHECK_THROWS_AS(Mesh(1, {0, 1, 1}, 3), ConfigError);
  CHECK_THROWS_AS(Mesh(1, {4, 1, 1}, 1), ConfigError);
  CHECK_THROWS_AS(Mesh(1, {4, 1, 1}, 17), ConfigError);
  CHECK_THROWS_AS(Mesh(1, {4, 1, 1}, 3, {0.0, 1, 1}), ConfigError);
  const Mesh mesh(2, {4, 8, 99}, 3);
  CHECK(mesh.cells[2] == 1);  // unused axis normalized
  CHECK(mesh.cell_size(0) == 0.25);
  CHECK(mesh.cell_size(1) == 0.125);
}

TEST_CASE("periodic cell wrap") {
  const Mesh mesh(1, {5, 1, 1}, 3);
  CHECK(mesh.wrap_cell(0, 0, -1) == 4);
  CHECK(mesh.wrap_cell(0, 4, 1) == 0);
  CHECK(mesh.wrap_cell(0, 2, -7) == 0);
}

TEST_CASE("dof is cells x order^dim x n_var") {
  const Mesh mesh(2, {400, 400, 1}, 8);
  const EquationModel adv = EquationModel::advection(2, {1, 0, 0});
  CHECK(mesh.dof(adv) == 400LL * 400 * 8 * 8 * 1);
  const Mesh mesh3(3, {10, 10, 10}, 4);
  const EquationModel euler = EquationModel::isothermal_euler(3, 1.0);
  CHECK(mesh3.dof(euler) == 1000LL * 64 * 4);
}

TEST_CASE("node coordinates follow the affine map") {
  const QuadratureRule rule = gauss_lobatto(3);
  {
    const Mesh mesh(1, {2, 1, 1}, 3);  // dx = 0.5
    CHECK(node_coordinates(mesh, rule, {0, 0, 0}, {0, 0, 0})[0] == 0.0);
    CHECK(node_coordinates(mesh, rule, {0, 0, 0}, {1, 0, 0})[0] == 0.25);
  }
  {
    const Mesh mesh(1, {4, 1, 1}, 3);  // dx = 0.25, cell 3 node 2 -> right edge
    CHECK(node_coordinates(mesh, rule, {3, 0, 0}, {2, 0, 0})[0] == 1.0);
    CHECK_THROWS_AS(node_coordinates(mesh, rule, {4, 0, 0}, {0, 0, 0}),
                    std::out_of_range);
    CHECK_THROWS_AS(node_coordinates(mesh, rule, {0, 0, 0}, {3, 0, 0}),
                    std::out_of_range);
  }
}

TEST_CASE("field layout: variables innermost, cells outermost") {
  FieldShape s;
  s.dim = 2;
  s.cells = {3, 2, 1};
  s.order = 4;
  s.n_var = 3;
  CHECK(s.size() == 3u * 2 * 4 * 4 * 3);
  CHECK(s.index({0, 0, 0}, {0, 0, 0}, 1) == 1);
  CHECK(s.index({0, 0, 0}, {0, 1, 0}, 0) == 3);
  CHECK(s.index({0, 0, 0}, {1, 0, 0}, 0) == 12);
  CHECK(s.index({0, 1, 0}, {0, 0, 0}, 0) == 48);
  CHECK(s.index({1, 0, 0}, {0, 0, 0}, 0) == 96);
}

TEST_CASE("splitmix64 reference sequence") {
  SplitMix64 rng(0);
  CHECK(rng.next_u64() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next_u64() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.next_u64() == 0x06C45D188009454FULL);
  // Unit doubles for the documented seed 42.
  const auto amps = multisine_amplitudes(3, 42);
  CHECK(amps[0] == 0.7415648787718233);
  CHECK(amps[1] == 0.1599103928769201);
  CHECK(amps[2] == 0.27860113025513866);
  for (double a : amps) {
    CHECK(a >= 0.0);
    CHECK(a < 1.0);
  }
}

TEST_CASE("multisine samples the profile at the nodes") {
  const QuadratureRule rule = gauss_lobatto(3);
  const Mesh mesh(1, {2, 1, 1}, 3);
  const EquationModel model = EquationModel::advection(1, {1, 0, 0});
  const StateField f = init_multisine(mesh, model, rule, {1.0});
  // cell 0 node 1 sits at x = 0.25 where sin(2 pi x) = 1.
  CHECK(std::abs(f.at({0, 0, 0}, {1, 0, 0}, 0) - 1.0) <= 1e-15);
  CHECK(std::abs(f.at({0, 0, 0}, {0, 0, 0}, 0)) <= 1e-15);
}

TEST_CASE("multisine is deterministic in the seed") {
  const QuadratureRule rule = gauss_lobatto(4);
  const Mesh mesh(1, {8, 1, 1}, 4);
  const EquationModel model = EquationModel::advection(1, {1, 0, 0});
  const StateField a = init_multisine(mesh, model, rule, 40, 1234);
  const StateField b = init_multisine(mesh, model, rule, 40, 1234);
  REQUIRE(a.size() == b.size());
  CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
  const StateField c = init_multisine(mesh, model, rule, 40, 1235);
  CHECK(std::memcmp(a.data(), c.data(), a.size() * sizeof(double)) != 0);
}

TEST_CASE("multisine varies along x only in 2D") {
  const QuadratureRule rule = gauss_lobatto(3);
  const Mesh mesh(2, {4, 3, 1}, 3);
  const EquationModel model = EquationModel::advection(2, {1, 0, 0});
  const StateField f = init_multisine(mesh, model, rule, 5, 99);
  for (int cx = 0; cx < 4; ++cx)
    for (int i = 0; i < 3; ++i) {
      const double ref = f.at({cx, 0, 0}, {i, 0, 0}, 0);
      for (int cy = 0; cy < 3; ++cy)
        for (int j = 0; j < 3; ++j) {
          CHECK(f.at({cx, cy, 0}, {i, j, 0}, 0) == ref);
        }
    }
}

TEST_CASE("multisine rejects non-advection models and empty mode lists") {
  const QuadratureRule rule = gauss_lobatto(3);
  const Mesh mesh(2, {4, 4, 1}, 3);
  const EquationModel euler = EquationModel::isothermal_euler(2, 1.0);
  CHECK_THROWS_AS(init_multisine(mesh, euler, rule, 4, 1), ConfigError);
  const EquationModel adv = EquationModel::advection(2, {1, 0, 0});
  CHECK_THROWS_AS(init_multisine(mesh, adv, rule, {}), ConfigError);
}

TEST_CASE("euler subsonic initial state") {
  const QuadratureRule rule = gauss_lobatto(4);
  const Mesh mesh(2, {8, 8, 1}, 4);
  const EquationModel model = EquationModel::isothermal_euler(2, 1.0);
  const StateField f = init_euler_subsonic(mesh, model, rule, 0);

  // Node at the origin: all sines vanish, state is (1, 0, 0).
  CHECK(f.at({0, 0, 0}, {0, 0, 0}, 0) == 1.0);
  CHECK(f.at({0, 0, 0}, {0, 0, 0}, 1) == 0.0);
  CHECK(f.at({0, 0, 0}, {0, 0, 0}, 2) == 0.0);

  // Positive density and componentwise velocity bound u_max/a = 0.5.
  double max_comp = 0.0;
  for (std::size_t i = 0; i < f.size(); i += 3) {
    const double rho = f.data()[i];
    CHECK(rho > 0.0);
    max_comp = std::max(max_comp, std::abs(f.data()[i + 1] / rho));
    max_comp = std::max(max_comp, std::abs(f.data()[i + 2] / rho));
  }
  CHECK(max_comp <= 0.5 + 1e-12);
  CHECK(max_comp > 0.49);  // the bound is attained on this grid

  // Mass total equals the domain volume: the perturbation integrates to 0.
  const auto totals = conserved_totals(mesh, rule, f);
  CHECK(std::abs(totals[0] - 1.0) <= 1e-12);

  CHECK_THROWS_AS(EquationModel::isothermal_euler(1, 1.0), ConfigError);
}

TEST_CASE("l2_error basics") {
  const QuadratureRule rule = gauss_lobatto(3);
  const Mesh mesh(1, {1, 1, 1}, 3);
  const EquationModel model = EquationModel::advection(1, {1, 0, 0});
  StateField a(mesh, model);
  StateField b(mesh, model);
  CHECK(l2_error(mesh, rule, a, b, 0) == 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) a.values()[i] = 1.0;
  CHECK(std::abs(l2_error(mesh, rule, a, b, 0) - 1.0) <= 1e-15);
  CHECK(l2_error(mesh, rule, a, b, 0) == l2_error(mesh, rule, b, a, 0));
  CHECK_THROWS_AS(l2_error(mesh, rule, a, b, 1), std::out_of_range);

  const Mesh other(1, {2, 1, 1}, 3);
  StateField c(other, model);
  CHECK_THROWS_AS(l2_error(mesh, rule, a, c, 0), ConfigError);
}

TEST_CASE("l2 norm of a sine is 1/sqrt(2)") {
  const QuadratureRule rule = gauss_lobatto(6);
  const Mesh mesh(1, {32, 1, 1}, 6);
  const EquationModel model = EquationModel::advection(1, {1, 0, 0});
  const StateField f = init_multisine(mesh, model, rule, {1.0});
  const StateField zero(mesh, model);
  CHECK(std::abs(l2_error(mesh, rule, f, zero, 0) - 0.7071067811865476) <= 1e-6);
}

TEST_CASE("conserved totals") {
  const QuadratureRule rule = gauss_lobatto(5);
  const Mesh mesh(2, {6, 6, 1}, 5);
  const EquationModel model = EquationModel::advection(2, {1, 0, 0});
  StateField f(mesh, model);
  for (std::size_t i = 0; i < f.size(); ++i) f.values()[i] = 2.5;
  CHECK(std::abs(conserved_totals(mesh, rule, f)[0] - 2.5) <= 1e-14);

  // Every sine mode integrates to zero.
  const Mesh fine(1, {32, 1, 1}, 6);
  const EquationModel adv1 = EquationModel::advection(1, {1, 0, 0});
  const StateField s = init_multisine(fine, adv1, gauss_lobatto(6), 4, 77);
  CHECK(std::abs(conserved_totals(fine, gauss_lobatto(6), s)[0]) <= 1e-10);
}

TEST_CASE("quadrature diagnostics are invariant under axis permutation") {
  const int order = 4;
  const QuadratureRule rule = gauss_lobatto(order);
  const Mesh mesh(2, {5, 3, 1}, order);
  const Mesh permuted(2, {3, 5, 1}, order);
  const EquationModel model = EquationModel::advection(2, {1, 0, 0});
  StateField f(mesh, model);
  StateField g(permuted, model);
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int cx = 0; cx < 5; ++cx)
    for (int cy = 0; cy < 3; ++cy)
      for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) {
          const double v = dist(gen);
          f.at({cx, cy, 0}, {i, j, 0}, 0) = v;
          g.at({cy, cx, 0}, {j, i, 0}, 0) = v;
        }
  const double tf = conserved_totals(mesh, rule, f)[0];
  const double tg = conserved_totals(permuted, rule, g)[0];
  CHECK(std::abs(tf - tg) <= 1e-13);
  StateField zf(mesh, model);
  StateField zg(permuted, model);
  CHECK(std::abs(l2_error(mesh, rule, f, zf, 0) - l2_error(permuted, rule, g, zg, 0)) <=
        1e-13);
}

TEST_CASE("field dump round-trips bit for bit") {
  const QuadratureRule rule = gauss_lobatto(3);
  const Mesh mesh(2, {3, 2, 1}, 3, {2.0, 1.0, 1.0});
  const EquationModel model = EquationModel::isothermal_euler(2, 1.0);
  const StateField f = init_euler_subsonic(mesh, model, rule, 0);
  const std::string path = "grid_dump_test.ndgf";
  dump_field(path, mesh, f);
  const LoadedField loaded = load_field(path);
  CHECK(loaded.shape.dim == 2);
  CHECK(loaded.shape.cells[0] == 3);
  CHECK(loaded.shape.cells[1] == 2);
  CHECK(loaded.shape.order == 3);
  CHECK(loaded.shape.n_var == 3);
  CHECK(loaded.length[0] == 2.0);
  REQUIRE(loaded.field.size() == f.size());
  CHECK(std::memcmp(loaded.field.data(), f.data(), f.size() * sizeof(double)) == 0);
  std::remove(path.c_str());

  CHECK_THROWS(load_field("does_not_exist.ndgf"));
}
