#pragma once

#include <cmath>
#include <stdexcept>

namespace pmvl {

/// Gamma function via the Lanczos approximation (g = 7, 9 terms).
/// Accurate to ~1e-15 relative for arguments in [0.5, 30]; arguments
/// below 0.5 go through the reflection formula.
template <typename Scalar>
Scalar lanczos_gamma(Scalar x) {
  static const double coef[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,    12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7};
  const Scalar pi = Scalar(3.14159265358979323846264338327950288);
  if (std::isnan(static_cast<double>(x))) throw std::domain_error("gamma: NaN argument");
  if (x <= Scalar(0) && x == std::floor(x))
    throw std::domain_error("gamma: pole at non-positive integer");
  if (x < Scalar(0.5)) {
    Scalar s = std::sin(pi * x);
    return pi / (s * lanczos_gamma(Scalar(1) - x));
  }
  x -= Scalar(1);
  Scalar a = Scalar(coef[0]);
  Scalar t = x + Scalar(7.5);
  for (int i = 1; i < 9; ++i) a += Scalar(coef[i]) / (x + Scalar(i));
  return std::sqrt(Scalar(2) * pi) * std::pow(t, x + Scalar(0.5)) * std::exp(-t) * a;
}

/// log Gamma for positive arguments (used to form Beta ratios without overflow).
template <typename Scalar>
Scalar lanczos_log_gamma(Scalar x) {
  if (x <= Scalar(0)) throw std::domain_error("log_gamma: requires x > 0");
  if (x < Scalar(0.5)) {
    const Scalar pi = Scalar(3.14159265358979323846264338327950288);
    return std::log(pi / std::sin(pi * x)) - lanczos_log_gamma(Scalar(1) - x);
  }
  return std::log(lanczos_gamma(x));
}

}  // namespace pmvl
