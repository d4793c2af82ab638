// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "ndg/basis.hpp"
#include "ndg/errors.hpp"

using namespace ndg;

namespace {

// Independent oracle: find a root of f by bisection on a bracketing interval.
template <typename Fn>
double bisect(Fn&& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo < 0) == (fm < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Independent oracle: solve a small linear system by Gaussian elimination
// with partial pivoting.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

double horner(const std::vector<double>& coeffs, double x) {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
  return v;
}

double horner_derivative(const std::vector<double>& coeffs, double x) {
  double v = 0.0;
  for (std::size_t m = coeffs.size(); m-- > 1;) {
    v = v * x + static_cast<double>(m) * coeffs[m];
  }
  return v;
}

}  // namespace

TEST_CASE("gauss_lobatto rejects orders outside 2..16") {
  CHECK_THROWS_AS(gauss_lobatto(1), ConfigError);
  CHECK_THROWS_AS(gauss_lobatto(0), ConfigError);
  CHECK_THROWS_AS(gauss_lobatto(-3), ConfigError);
  CHECK_THROWS_AS(gauss_lobatto(17), ConfigError);
}

TEST_CASE("rule structure invariants, orders 2..16") {
  for (int n = 2; n <= 16; ++n) {
    const QuadratureRule rule = gauss_lobatto(n);
    REQUIRE(rule.order == n);
    REQUIRE(static_cast<int>(rule.nodes.size()) == n);
    CHECK(rule.nodes[0] == -1.0);
    CHECK(rule.nodes[n - 1] == 1.0);
    for (int k = 1; k < n; ++k) CHECK(rule.nodes[k] > rule.nodes[k - 1]);
    for (int k = 0; k < n; ++k) {
      CHECK(rule.weights[k] > 0.0);
      CHECK(std::abs(rule.nodes[k] + rule.nodes[n - 1 - k]) <= 1e-14);
    }
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(std::abs(wsum - 2.0) <= 1e-14);
  }
}

TEST_CASE("monomial exactness up to degree 2N-3") {
  for (int n = 2; n <= 9; ++n) {
    const QuadratureRule rule = gauss_lobatto(n);
    for (int m = 0; m <= 2 * n - 3; ++m) {
      double quad = 0.0;
      for (int k = 0; k < n; ++k) quad += rule.weights[k] * std::pow(rule.nodes[k], m);
      const double exact = (m % 2 == 0) ? 2.0 / (m + 1) : 0.0;
      CHECK(std::abs(quad - exact) <= 1e-12);
    }
  }
}

TEST_CASE("three-node rule is -1, 0, 1 with weights 1/3, 4/3, 1/3") {
  const QuadratureRule rule = gauss_lobatto(3);
  CHECK(rule.nodes[0] == -1.0);
  CHECK(rule.nodes[1] == 0.0);
  CHECK(rule.nodes[2] == 1.0);

  // Oracle: weights from the 3x3 moment system sum_k w_k x_k^m = int x^m.
  std::vector<std::vector<double>> vandermonde(3, std::vector<double>(3));
  std::vector<double> moments(3);
  for (int m = 0; m < 3; ++m) {
    for (int k = 0; k < 3; ++k) vandermonde[m][k] = std::pow(rule.nodes[k], m);
    moments[m] = (m % 2 == 0) ? 2.0 / (m + 1) : 0.0;
  }
  const std::vector<double> w = solve_dense(vandermonde, moments);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(rule.weights[k] - w[k]) <= 1e-15);
  CHECK(std::abs(rule.weights[0] - 1.0 / 3.0) <= 1e-15);
  CHECK(std::abs(rule.weights[1] - 4.0 / 3.0) <= 1e-15);
  CHECK(std::abs(rule.weights[2] - 1.0 / 3.0) <= 1e-15);
}

TEST_CASE("two-node rule is the endpoints with unit weights") {
  const QuadratureRule rule = gauss_lobatto(2);
  CHECK(rule.nodes == std::vector<double>{-1.0, 1.0});
  CHECK(rule.weights[0] == 1.0);
  CHECK(rule.weights[1] == 1.0);
}

TEST_CASE("five-node rule interior nodes match a bisection oracle") {
  const QuadratureRule rule = gauss_lobatto(5);
  // Interior nodes solve (1-x^2) P_4'(x) = 0, i.e. x (35x^2 - 15)/2 = 0.
  auto p4prime = [](double x) { return 0.5 * x * (35.0 * x * x - 15.0); };
  const double root = bisect(p4prime, 0.2, 0.9);
  CHECK(std::abs(rule.nodes[3] - root) <= 1e-14);
  CHECK(std::abs(rule.nodes[3] - std::sqrt(3.0 / 7.0)) <= 1e-15);
  CHECK(std::abs(rule.nodes[1] + std::sqrt(3.0 / 7.0)) <= 1e-15);
  CHECK(rule.nodes[2] == 0.0);
}

TEST_CASE("cardinal property h_k(xi_l) = delta_kl") {
  for (int n = 2; n <= 9; ++n) {
    const NodalBasis basis = differentiation_matrix(gauss_lobatto(n));
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        const double expect = k == l ? 1.0 : 0.0;
        CHECK(std::abs(lagrange_eval(basis, k, basis.rule.nodes[l]) - expect) <= 1e-13);
      }
  }
}

TEST_CASE("basis functions sum to one away from the nodes") {
  std::mt19937 gen(1234);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int n = 2; n <= 9; ++n) {
    const NodalBasis basis = differentiation_matrix(gauss_lobatto(n));
    for (int trial = 0; trial < 50; ++trial) {
      const double xi = dist(gen);
      double sum = 0.0;
      for (int k = 0; k < n; ++k) sum += lagrange_eval(basis, k, xi);
      CHECK(std::abs(sum - 1.0) <= 5e-13);
    }
  }
}

TEST_CASE("linear basis: h_0 is (1-xi)/2") {
  const NodalBasis basis = differentiation_matrix(gauss_lobatto(2));
  CHECK(std::abs(lagrange_eval(basis, 0, 0.0) - 0.5) <= 1e-15);
  CHECK(std::abs(lagrange_eval(basis, 0, 0.5) - 0.25) <= 1e-14);
  CHECK(std::abs(lagrange_eval(basis, 1, 0.5) - 0.75) <= 1e-14);
}

TEST_CASE("lagrange_eval rejects out-of-range node indices") {
  const NodalBasis basis = differentiation_matrix(gauss_lobatto(4));
  CHECK_THROWS_AS(lagrange_eval(basis, -1, 0.0), std::out_of_range);
  CHECK_THROWS_AS(lagrange_eval(basis, 4, 0.0), std::out_of_range);
}

TEST_CASE("two-node differentiation matrix") {
  const NodalBasis basis = differentiation_matrix(gauss_lobatto(2));
  CHECK(std::abs(basis.d(0, 0) + 0.5) <= 1e-15);
  CHECK(std::abs(basis.d(0, 1) - 0.5) <= 1e-15);
  CHECK(std::abs(basis.d(1, 0) + 0.5) <= 1e-15);
  CHECK(std::abs(basis.d(1, 1) - 0.5) <= 1e-15);
}

TEST_CASE("differentiation matrix kills constants and differentiates x exactly") {
  for (int n = 2; n <= 16; ++n) {
    const NodalBasis basis = differentiation_matrix(gauss_lobatto(n));
    for (int l = 0; l < n; ++l) {
      double row = 0.0;
      double dx = 0.0;
      for (int k = 0; k < n; ++k) {
        row += basis.d(l, k);
        dx += basis.d(l, k) * basis.rule.nodes[k];
      }
      CHECK(std::abs(row) <= 1e-12);
      CHECK(std::abs(dx - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("spectral differentiation is exact on polynomials of degree N-1") {
  std::mt19937 gen(99);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int n = 2; n <= 9; ++n) {
    const NodalBasis basis = differentiation_matrix(gauss_lobatto(n));
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> coeffs(n);  // degree n-1
      for (double& c : coeffs) c = dist(gen);
      std::vector<double> values(n);
      for (int k = 0; k < n; ++k) values[k] = horner(coeffs, basis.rule.nodes[k]);
      for (int l = 0; l < n; ++l) {
        double dv = 0.0;
        for (int k = 0; k < n; ++k) dv += basis.d(l, k) * values[k];
        CHECK(std::abs(dv - horner_derivative(coeffs, basis.rule.nodes[l])) <= 1e-11);
      }
    }
  }
}
