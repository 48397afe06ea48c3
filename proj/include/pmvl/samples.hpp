#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "pmvl/exponent.hpp"

namespace pmvl {

/// A discretized measure space: sample values with positive weights.
struct WeightedSamples {
  Eigen::ArrayXd values;
  Eigen::ArrayXd weights;

  WeightedSamples() = default;
  WeightedSamples(Eigen::ArrayXd v, Eigen::ArrayXd w)
      : values(std::move(v)), weights(std::move(w)) {}

  /// Uniform weights.
  explicit WeightedSamples(Eigen::ArrayXd v)
      : values(std::move(v)), weights(Eigen::ArrayXd::Ones(values.size())) {}

  Eigen::Index size() const { return values.size(); }

  void validate() const {
    if (values.size() == 0) throw std::invalid_argument("WeightedSamples: empty");
    if (values.size() != weights.size())
      throw std::invalid_argument("WeightedSamples: size mismatch");
    if (!values.isFinite().all()) throw std::invalid_argument("WeightedSamples: non-finite value");
    if (!(weights > 0.0).all() || !weights.isFinite().all())
      throw std::invalid_argument("WeightedSamples: weights must be positive and finite");
  }
};

struct PMeanResult {
  double mean = 0.0;
  double residual = 0.0;      // characterization residual at the mean (finite p)
  int iterations = 0;
  double bracket_width = 0.0; // final bisection bracket, in sample units
};

namespace detail {

// sign(s)|s|^{p-1}; the integrand of the characterization equation.
// Continuous on all of R for p >= 1, zero at s = 0 (the tie convention for p < 2).
inline double char_kernel(double s, double p) {
  if (s == 0.0) return 0.0;
  if (p == 2.0) return s;
  if (p == 1.0) return s > 0.0 ? 1.0 : -1.0;
  const double a = std::abs(s);
  const double m = std::pow(a, p - 1.0);
  return s > 0.0 ? m : -m;
}

}  // namespace detail

/// Characterization residual g(lambda) = sum w_i |u_i-lambda|^{p-2} (u_i-lambda),
/// with zero integrand at ties for p < 2. Non-increasing in lambda; strictly
/// decreasing for p > 1. Requires a finite exponent.
template <typename D1, typename D2>
double char_residual(const Eigen::ArrayBase<D1>& values, const Eigen::ArrayBase<D2>& weights,
                     const Exponent& p, double lambda) {
  if (p.is_infinite())
    throw std::invalid_argument("char_residual: no residual form for p = infinity");
  const double pv = p.value();
  if (pv == 2.0) return (weights * (values - lambda)).sum();
  if (pv == 1.0) return (weights * (values - lambda).sign()).sum();
  const auto d = values - lambda;
  return (weights * d.sign() * d.abs().pow(pv - 1.0)).sum();
}

inline double char_residual(const WeightedSamples& s, const Exponent& p, double lambda) {
  s.validate();
  return char_residual(s.values, s.weights, p, lambda);
}

/// Weighted median: the value balancing weight above and below. When a whole
/// interval of values balances exactly, returns the interval midpoint.
template <typename D1, typename D2>
double weighted_median(const Eigen::ArrayBase<D1>& values, const Eigen::ArrayBase<D2>& weights) {
  const Eigen::Index n = values.size();
  if (n == 1) return values(0);
  std::vector<Eigen::Index> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), Eigen::Index(0));
  std::sort(idx.begin(), idx.end(),
            [&](Eigen::Index a, Eigen::Index b) { return values(a) < values(b); });
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) total += weights(i);
  const double half = 0.5 * total;
  const double tie_tol = 8.0 * std::numeric_limits<double>::epsilon() * total;
  double cum = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cum += weights(idx[static_cast<size_t>(k)]);
    if (cum >= half - tie_tol) {
      const double vk = values(idx[static_cast<size_t>(k)]);
      if (std::abs(cum - half) <= tie_tol && k + 1 < n)
        return 0.5 * (vk + values(idx[static_cast<size_t>(k + 1)]));
      return vk;
    }
  }
  return values(idx.back());  // unreachable for valid weights
}

inline double weighted_median(const WeightedSamples& s) {
  s.validate();
  return weighted_median(s.values, s.weights);
}

/// The variational p-mean of a weighted sample set: median for p = 1, weighted
/// average for p = 2, min-max midpoint for p = infinity, and for finite p > 1
/// the unique root of the characterization equation, found by bisection on
/// values normalized to [-1, 1]. Finite p > 64 is routed to the Infinity
/// branch, where |.|^{p-2} is beyond double range.
template <typename D1, typename D2>
PMeanResult p_mean(const Eigen::ArrayBase<D1>& values, const Eigen::ArrayBase<D2>& weights,
                   const Exponent& p) {
  PMeanResult out;
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  switch (p.kind()) {
    case Exponent::Kind::One:
      out.mean = weighted_median(values, weights);
      out.residual = char_residual(values, weights, p, out.mean);
      return out;
    case Exponent::Kind::Two:
      out.mean = (weights * values).sum() / weights.sum();
      out.mean = std::clamp(out.mean, lo, hi);
      out.residual = char_residual(values, weights, p, out.mean);
      return out;
    case Exponent::Kind::Infinity:
      out.mean = 0.5 * (lo + hi);
      return out;
    case Exponent::Kind::Finite:
      break;
  }
  const double pv = p.value();
  if (pv > 64.0) {  // documented overflow routing
    out.mean = 0.5 * (lo + hi);
    return out;
  }
  const double mid = 0.5 * (lo + hi);
  const double rad = 0.5 * (hi - lo);
  if (rad == 0.0) {
    out.mean = mid;
    return out;
  }
  // shift/scale to [-1, 1]; exact by the lift/homogeneity properties
  Eigen::ArrayXd v = ((values - mid) / rad).eval();
  const double wsum = weights.sum();
  const double g_tol = 1e-12 * wsum;
  double a = -1.0, b = 1.0;
  double c = 0.0, g = 0.0;
  int it = 0;
  for (; it < 200; ++it) {
    c = 0.5 * (a + b);
    const auto d = v - c;
    g = (weights * d.sign() * d.abs().pow(pv - 1.0)).sum();
    if (std::abs(g) <= g_tol) break;
    if (g > 0.0) a = c;
    else b = c;
    if (b - a <= 1e-14 * 2.0) { c = 0.5 * (a + b); break; }
  }
  out.mean = mid + rad * c;
  out.mean = std::clamp(out.mean, lo, hi);
  out.iterations = it + 1;
  out.bracket_width = (b - a) * rad;
  out.residual = char_residual(values, weights, p, out.mean);
  return out;
}

inline PMeanResult p_mean(const WeightedSamples& s, const Exponent& p) {
  s.validate();
  return p_mean(s.values, s.weights, p);
}

}  // namespace pmvl
