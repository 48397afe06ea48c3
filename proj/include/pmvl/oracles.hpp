#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pmvl/gamma.hpp"
#include "pmvl/rules.hpp"

namespace pmvl {

namespace detail {
template <typename Scalar>
constexpr Scalar pi_v = Scalar(3.14159265358979323846264338327950288);
}

/// Rayleigh quotient <A xi, xi>/|xi|^2.
template <typename DA, typename DX>
typename DA::Scalar rayleigh(const Eigen::MatrixBase<DA>& A, const Eigen::MatrixBase<DX>& xi) {
  using Scalar = typename DA::Scalar;
  const Scalar n2 = xi.squaredNorm();
  if (n2 == Scalar(0)) throw std::invalid_argument("rayleigh: zero gradient direction");
  return Scalar(xi.dot(A * xi)) / n2;
}

/// Ratio of |xi.y|^{p-2}-weighted quadratic-form averages over the unit
/// sphere: (tr A + (p-2) <A xi,xi>/|xi|^2) / (N + p - 2). Valid for 1 < p <
/// infinity; requests outside the open range raise.
template <typename DA, typename DX>
typename DA::Scalar sphere_ratio(const Eigen::MatrixBase<DA>& A, const Eigen::MatrixBase<DX>& xi,
                                 typename DA::Scalar p, int N) {
  using Scalar = typename DA::Scalar;
  if (!(p > Scalar(1)) || !std::isfinite(double(p)))
    throw std::invalid_argument("sphere_ratio: requires 1 < p < infinity");
  return (A.trace() + (p - Scalar(2)) * rayleigh(A, xi)) / (Scalar(N) + p - Scalar(2));
}

/// Same ratio over the unit ball: denominator N + p.
template <typename DA, typename DX>
typename DA::Scalar ball_ratio(const Eigen::MatrixBase<DA>& A, const Eigen::MatrixBase<DX>& xi,
                               typename DA::Scalar p, int N) {
  using Scalar = typename DA::Scalar;
  if (!(p > Scalar(1)) || !std::isfinite(double(p)))
    throw std::invalid_argument("ball_ratio: requires 1 < p < infinity");
  return (A.trace() + (p - Scalar(2)) * rayleigh(A, xi)) / (Scalar(N) + p);
}

/// Closed form of the heat-ball shell integral
///   int_{E*} r^{2 alpha - 1} sigma^{-beta} dr dsigma
///     = 2^{2 beta - alpha - 3} pi^{beta - alpha - 1} N^alpha Gamma(alpha+1)
///       / (alpha (alpha - beta + 1)^{alpha + 1}),
/// for alpha > 0, beta < alpha + 1 (the formula has a pole at beta = alpha+1).
template <typename Scalar>
Scalar heat_star(Scalar alpha, Scalar beta, int N) {
  if (!(alpha > Scalar(0))) throw std::invalid_argument("heat_star: requires alpha > 0");
  if (!(beta < alpha + Scalar(1)))
    throw std::invalid_argument("heat_star: requires beta < alpha + 1 (integral diverges)");
  const Scalar pi = detail::pi_v<Scalar>;
  return std::pow(Scalar(2), Scalar(2) * beta - alpha - Scalar(3)) *
         std::pow(pi, beta - alpha - Scalar(1)) * std::pow(Scalar(N), alpha) *
         lanczos_gamma(alpha + Scalar(1)) /
         (alpha * std::pow(alpha - beta + Scalar(1), alpha + Scalar(1)));
}

/// Caloric sigma-moment ratio over the unit heat ball:
///   int_E |xi.z|^{p-2} sigma dnu / int_E |xi.z|^{p-2} dnu
///     = (1/4pi) ((N+p-2)/(N+p))^{1 + (N+p)/2}.
template <typename Scalar>
Scalar heat_sigma_ratio(Scalar p, int N) {
  if (!(p > Scalar(1)) || !std::isfinite(double(p)))
    throw std::invalid_argument("heat_sigma_ratio: requires 1 < p < infinity");
  const Scalar pi = detail::pi_v<Scalar>;
  const Scalar q = (Scalar(N) + p - Scalar(2)) / (Scalar(N) + p);
  return std::pow(q, Scalar(1) + (Scalar(N) + p) / Scalar(2)) / (Scalar(4) * pi);
}

/// Caloric quadratic-form ratio over the unit heat ball:
///   int_E |xi.z|^{p-2} <A z, z> dnu / int_E |xi.z|^{p-2} dnu.
template <typename DA, typename DX>
typename DA::Scalar heat_quadratic_ratio(const Eigen::MatrixBase<DA>& A,
                                         const Eigen::MatrixBase<DX>& xi,
                                         typename DA::Scalar p, int N) {
  using Scalar = typename DA::Scalar;
  if (!(p > Scalar(1)) || !std::isfinite(double(p)))
    throw std::invalid_argument("heat_quadratic_ratio: requires 1 < p < infinity");
  const Scalar pi = detail::pi_v<Scalar>;
  const Scalar q = (Scalar(N) + p - Scalar(2)) / (Scalar(N) + p);
  return Scalar(N) / (Scalar(N) + p - Scalar(2)) *
         std::pow(q, Scalar(1) + (Scalar(N) + p) / Scalar(2)) / (Scalar(2) * pi) *
         (A.trace() + (p - Scalar(2)) * rayleigh(A, xi));
}

enum class FormulaId { Int1, Int2, CAlphaBeta, Int1Parabolic, Int2Parabolic };

std::string to_string(FormulaId id);

/// Parameters of a section-5 formula instance; fields beyond the formula's
/// needs are ignored.
struct OracleParams {
  int N = 2;
  double p = 2.0;
  double alpha = 1.0;
  double beta = 1.0;
  Eigen::MatrixXd A;
  Eigen::VectorXd xi;
};

/// Discrepancy between a rule's numerical value of the cited integral ratio
/// and the closed form.
struct OracleCheck {
  FormulaId formula;
  double quadrature = 0.0;
  double closed_form = 0.0;
  double abs_gap = 0.0;
  double rel_gap = 0.0;
};

/// Integrates the left side of the cited equation with the given rule and
/// reports the gap against the closed form. The rule kind must match the
/// formula's domain; rules with the singular factor absorbed are used as-is,
/// plain rules evaluate the factor pointwise.
OracleCheck quadrature_vs_oracle(const QuadratureRule& rule, FormulaId formula,
                                 const OracleParams& params);

}  // namespace pmvl
