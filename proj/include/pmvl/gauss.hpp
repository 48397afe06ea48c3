#pragma once

#include <Eigen/Dense>

namespace pmvl {

/// One-dimensional quadrature rule: nodes and positive weights.
struct Rule1d {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule on (-1, 1), computed by Golub-Welsch.
Rule1d gauss_legendre(int n);

/// n-point Gauss-Jacobi rule on (-1, 1) for the weight (1-x)^a (1+x)^b,
/// a, b > -1. gauss_jacobi(n, 0, 0) coincides with gauss_legendre(n).
Rule1d gauss_jacobi(int n, double a, double b);

/// Affine image of a rule on (lo, hi); weights scaled by (hi-lo)/2.
Rule1d map_to(const Rule1d& r, double lo, double hi);

/// Gauss rule for the weight x^b on (0, 1) (Jacobi with a = 0 mapped).
Rule1d gauss_power(int n, double b);

}  // namespace pmvl
