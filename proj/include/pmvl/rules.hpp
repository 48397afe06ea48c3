#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>

namespace pmvl {

enum class DomainKind { Ball, Sphere, HeatBall };

std::string to_string(DomainKind k);
DomainKind domain_kind_from_string(const std::string& s);

/// Volume of the unit ball in R^N.
double ball_volume(int N);
/// Surface measure of the unit sphere S^{N-1}.
double sphere_area(int N);

/// Records a singular factor |xi_dir . y|^{p-2} folded into the weights of a
/// rule built for the section-5 ratio integrands.
struct AbsorbedFactor {
  double p;
  Eigen::VectorXd xi_dir;  // unit vector
};

/// Nodes and positive weights discretizing the unit ball, the unit sphere, or
/// the unit heat ball with its caloric density. Heat-ball nodes carry the
/// extra time coordinate sigma. Rules live in unit coordinates; epsilon
/// scaling is applied by stencil().
struct QuadratureRule {
  int dimension = 0;
  DomainKind kind = DomainKind::Ball;
  int order = 0;
  Eigen::MatrixXd nodes;    // one row per node
  Eigen::VectorXd sigma;    // HeatBall only; empty otherwise
  Eigen::VectorXd weights;
  std::optional<AbsorbedFactor> absorbed;

  Eigen::Index size() const { return weights.size(); }
  double total_weight() const { return weights.sum(); }
  void validate() const;

  /// Integrates a function of the node row (and sigma for HeatBall).
  template <typename F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < size(); ++i) acc += weights(i) * f(nodes.row(i));
    return acc;
  }
};

/// Product Gauss rule on the unit ball, exact for polynomials of total degree
/// <= order (relative error 1e-12). N = 1 integrates over (-1, 1). For N > 6
/// deterministic rules are refused; use monte_carlo_ball_rule.
QuadratureRule unit_ball_rule(int N, int order);

/// Product rule on S^{N-1}, N >= 2: equispaced angles for N = 2, Gauss in
/// cos(theta) times equispaced azimuth for N = 3, recursive polar splitting
/// above. Same exactness contract as the ball rule.
QuadratureRule unit_sphere_rule(int N, int order);

/// Rule on the unit heat ball E with the caloric density |z|^2 sigma^{-2}
/// absorbed into the weights, built in the tau = -log(4 pi sigma) variable.
/// `order` controls the tau refinement (radial and angular counts follow);
/// total weight converges to 4. Requires N >= 2 and tau_max >= 30.
QuadratureRule heat_ball_rule(int N, int order, double tau_max = 40.0);

/// Seeded uniform sampling of the unit ball; weights are |B_1|/count.
/// Reproducible: identical (N, count, seed) give bit-identical rules.
QuadratureRule monte_carlo_ball_rule(int N, int count, std::uint64_t seed);

/// Rules with the singular ratio factor |xi.y|^{p-2} absorbed into the
/// weights (unit xi direction; requires finite p > 1). Gauss-Jacobi in the
/// aligned coordinate, so section-5 quadratic integrands are handled to near
/// machine accuracy.
QuadratureRule weighted_sphere_rule(int N, double p, const Eigen::VectorXd& xi, int order);
QuadratureRule weighted_ball_rule(int N, double p, const Eigen::VectorXd& xi, int order);
QuadratureRule weighted_heat_ball_rule(int N, double p, const Eigen::VectorXd& xi, int order,
                                       double tau_max = 40.0);

/// Affine evaluation stencil: points x + eps z (parabolic: (x + eps z,
/// t - eps^2 sigma)); weights are carried over unchanged from the rule.
struct EvaluationStencil {
  Eigen::VectorXd center;
  double t = 0.0;
  bool has_time = false;
  double epsilon = 1.0;
  DomainKind kind = DomainKind::Ball;
  Eigen::MatrixXd points;
  Eigen::VectorXd times;    // HeatBall only
  Eigen::VectorXd weights;
};

EvaluationStencil stencil(const QuadratureRule& rule, const Eigen::VectorXd& x, double eps,
                          std::optional<double> t = std::nullopt);

/// Orthonormal frame whose last column is the given unit direction.
Eigen::MatrixXd frame_with_axis(const Eigen::VectorXd& axis);

}  // namespace pmvl
