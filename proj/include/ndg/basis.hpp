// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NDG_BASIS_HPP
#define NDG_BASIS_HPP

#include <utility>
#include <vector>

namespace ndg {

/// Gauss-Lobatto quadrature on [-1, 1]. `order` is the node count N; the
/// nodal polynomial degree is N - 1. Nodes include both endpoints exactly
/// and are symmetric about 0; weights sum to 2. Exact for polynomials up to
/// degree 2N - 3.
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;    // ascending, nodes[0] = -1, nodes[N-1] = +1
  std::vector<double> weights;  // positive
};

/// Lagrange nodal basis on a Gauss-Lobatto rule together with the
/// differentiation matrix D, stored row-major with
///   d(l, k) = h_k'(xi_l),
/// h_k being the cardinal polynomial that is 1 at node k and 0 at the others.
struct NodalBasis {
  QuadratureRule rule;
  std::vector<double> diff_matrix;  // order x order, row-major

  double d(int l, int k) const { return diff_matrix[static_cast<std::size_t>(l) * rule.order + k]; }
};

/// Legendre polynomial P_n and its derivative at x, by the three-term
/// recurrence. Stable for the orders used here (n <= 16).
std::pair<double, double> legendre(int n, double x);

/// Build the N-node Gauss-Lobatto rule: endpoints plus the roots of
/// P'_{N-1}, found by Newton iteration from Chebyshev-Lobatto seeds.
/// Weights use the closed form 2 / (N (N-1) P_{N-1}(xi_k)^2).
/// Throws ConfigError for order < 2.
QuadratureRule gauss_lobatto(int order);

/// Cardinal basis function h_k evaluated at xi in [-1, 1]. Coinciding with a
/// node (within 1e-12) returns the Kronecker value instead of evaluating the
/// 0/0 quotient. Throws std::out_of_range for k outside [0, N).
double lagrange_eval(const NodalBasis& basis, int k, double xi);

/// Differentiation matrix for the rule's cardinal basis. Off-diagonal
/// entries come from the closed form P(xi_l) / (P(xi_k) (xi_l - xi_k));
/// each diagonal entry is the negated row sum, so rows annihilate constants.
NodalBasis differentiation_matrix(const QuadratureRule& rule);

}  // namespace ndg

#endif
