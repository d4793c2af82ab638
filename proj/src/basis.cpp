// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#include "ndg/basis.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "ndg/errors.hpp"

namespace ndg {

std::pair<double, double> legendre(int n, double x) {
  if (n == 0) return {1.0, 0.0};
  double pm1 = 1.0;  // P_0
  double p = x;      // P_1
  double dpm1 = 0.0;
  double dp = 1.0;
  for (int m = 1; m < n; ++m) {
    const double pp1 = ((2 * m + 1) * x * p - m * pm1) / (m + 1);
    const double dpp1 = dpm1 + (2 * m + 1) * p;
    pm1 = p;
    p = pp1;
    dpm1 = dp;
    dp = dpp1;
  }
  return {p, dp};
}

QuadratureRule gauss_lobatto(int order) {
  if (order < 2) {
    throw ConfigError("gauss_lobatto: order must be >= 2, got " + std::to_string(order));
  }
  if (order > 16) {
    throw ConfigError("gauss_lobatto: order capped at 16, got " + std::to_string(order));
  }
  const int n = order;        // node count
  const int deg = order - 1;  // polynomial degree

  QuadratureRule rule;
  rule.order = n;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  rule.nodes[0] = -1.0;
  rule.nodes[n - 1] = 1.0;

  // Interior nodes: roots of P'_{deg}. Newton on f = (1-x^2) P'_{deg}(x),
  // whose derivative reduces to -deg(deg+1) P_{deg}(x) by the Legendre ODE.
  const double pi = std::acos(-1.0);
  for (int k = 1; k < n - 1; ++k) {
    double x = -std::cos(pi * k / deg);
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(deg, x);
      const double delta = (1.0 - x * x) * dp / (deg * (deg + 1) * p);
      x += delta;
      if (std::abs(delta) <= 1e-15) break;
    }
    rule.nodes[k] = x;
  }

  // Enforce exact symmetry; roundoff in the Newton iterates is one-sided.
  for (int k = 0; k < n / 2; ++k) {
    const double s = 0.5 * (rule.nodes[k] - rule.nodes[n - 1 - k]);
    rule.nodes[k] = s;
    rule.nodes[n - 1 - k] = -s;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;

  for (int k = 0; k < n; ++k) {
    const double p = legendre(deg, rule.nodes[k]).first;
    rule.weights[k] = 2.0 / (n * deg * p * p);
  }
  return rule;
}

double lagrange_eval(const NodalBasis& basis, int k, double xi) {
  const int n = basis.rule.order;
  if (k < 0 || k >= n) {
    throw std::out_of_range("lagrange_eval: node index " + std::to_string(k) +
                            " outside [0, " + std::to_string(n) + ")");
  }
  const auto& nodes = basis.rule.nodes;
  // At (or within 1e-12 of) a node the quotient below is 0/0; the cardinal
  // property gives the value directly.
  for (int l = 0; l < n; ++l) {
    if (std::abs(xi - nodes[l]) < 1e-12) return l == k ? 1.0 : 0.0;
  }
  const int deg = n - 1;
  const auto [p, dp] = legendre(deg, xi);
  const double pk = legendre(deg, nodes[k]).first;
  return (xi * xi - 1.0) * dp / (deg * (deg + 1) * pk * (xi - nodes[k]));
}

NodalBasis differentiation_matrix(const QuadratureRule& rule) {
  const int n = rule.order;
  const int deg = n - 1;
  NodalBasis basis;
  basis.rule = rule;
  basis.diff_matrix.assign(static_cast<std::size_t>(n) * n, 0.0);

  std::vector<double> p(n);
  for (int k = 0; k < n; ++k) p[k] = legendre(deg, rule.nodes[k]).first;

  for (int l = 0; l < n; ++l) {
    double rowsum = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == l) continue;
      const double v = p[l] / (p[k] * (rule.nodes[l] - rule.nodes[k]));
      basis.diff_matrix[static_cast<std::size_t>(l) * n + k] = v;
      rowsum += v;
    }
    // Diagonal by negated row sum: D applied to constants vanishes exactly.
    basis.diff_matrix[static_cast<std::size_t>(l) * n + l] = -rowsum;
  }
  return basis;
}

}  // namespace ndg
