#include "pmvl/rules.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "pmvl/gamma.hpp"
#include "pmvl/gauss.hpp"

namespace pmvl {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

int even_count(int n) { return n % 2 == 0 ? n : n + 1; }

// Heat-ball geometry in the tau parametrization: sigma = e^{-tau}/(4 pi),
// shell radius R = sqrt(2 N sigma tau).
double heat_sigma(double tau) { return std::exp(-tau) / (4.0 * kPi); }
double heat_radius(int N, double tau) { return std::sqrt(2.0 * N * heat_sigma(tau) * tau); }

}  // namespace

std::string to_string(DomainKind k) {
  switch (k) {
    case DomainKind::Ball: return "ball";
    case DomainKind::Sphere: return "sphere";
    default: return "heat_ball";
  }
}

DomainKind domain_kind_from_string(const std::string& s) {
  if (s == "ball") return DomainKind::Ball;
  if (s == "sphere") return DomainKind::Sphere;
  if (s == "heat_ball") return DomainKind::HeatBall;
  throw std::invalid_argument("unknown domain kind: " + s);
}

double ball_volume(int N) {
  return std::pow(kPi, 0.5 * N) / lanczos_gamma(0.5 * N + 1.0);
}

double sphere_area(int N) { return N * ball_volume(N); }

void QuadratureRule::validate() const {
  if (weights.size() == 0) throw std::invalid_argument("QuadratureRule: empty");
  if (nodes.rows() != weights.size()) throw std::invalid_argument("QuadratureRule: size mismatch");
  if (!(weights.array() > 0.0).all())
    throw std::invalid_argument("QuadratureRule: non-positive weight");
  if (kind == DomainKind::HeatBall && sigma.size() != weights.size())
    throw std::invalid_argument("QuadratureRule: heat-ball rule missing sigma");
}

QuadratureRule unit_sphere_rule(int N, int order) {
  if (N < 2) throw std::invalid_argument("unit_sphere_rule: N must be >= 2 (S^0 is two points)");
  if (N > 6)
    throw std::invalid_argument("unit_sphere_rule: N > 6 unsupported; use monte_carlo_ball_rule");
  if (order < 1) throw std::invalid_argument("unit_sphere_rule: order must be >= 1");
  QuadratureRule rule;
  rule.dimension = N;
  rule.kind = DomainKind::Sphere;
  rule.order = order;
  if (N == 2) {
    const int m = std::max(even_count(order + 1), 8);
    rule.nodes.resize(m, 2);
    rule.weights = Eigen::VectorXd::Constant(m, 2.0 * kPi / m);
    for (int k = 0; k < m; ++k) {
      const double phi = 2.0 * kPi * k / m;
      rule.nodes(k, 0) = std::cos(phi);
      rule.nodes(k, 1) = std::sin(phi);
    }
    return rule;
  }
  // polar split: integral over S^{N-1} of f = int_{-1}^{1} (1-u^2)^{(N-3)/2}
  // int_{S^{N-2}} f(u, sqrt(1-u^2) w) dS(w) du
  const int nu = order / 2 + 1;
  Rule1d polar = gauss_jacobi(nu, 0.5 * (N - 3), 0.5 * (N - 3));
  QuadratureRule inner = unit_sphere_rule(N - 1, order);
  const Eigen::Index mi = inner.size();
  rule.nodes.resize(nu * mi, N);
  rule.weights.resize(nu * mi);
  Eigen::Index row = 0;
  for (int j = 0; j < nu; ++j) {
    const double u = polar.nodes(j);
    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    for (Eigen::Index k = 0; k < mi; ++k, ++row) {
      rule.nodes(row, 0) = u;
      rule.nodes.row(row).tail(N - 1) = s * inner.nodes.row(k);
      rule.weights(row) = polar.weights(j) * inner.weights(k);
    }
  }
  return rule;
}

QuadratureRule unit_ball_rule(int N, int order) {
  if (N < 1) throw std::invalid_argument("unit_ball_rule: N must be >= 1");
  if (N > 6)
    throw std::invalid_argument("unit_ball_rule: N > 6 unsupported; use monte_carlo_ball_rule");
  if (order < 1) throw std::invalid_argument("unit_ball_rule: order must be >= 1");
  QuadratureRule rule;
  rule.dimension = N;
  rule.kind = DomainKind::Ball;
  rule.order = order;
  if (N == 1) {
    Rule1d g = map_to(gauss_legendre(order / 2 + 1), -1.0, 1.0);
    rule.nodes = g.nodes;
    rule.weights = g.weights;
    return rule;
  }
  const int nr = order / 2 + 1;
  Rule1d radial = gauss_power(nr, double(N - 1));  // absorbs r^{N-1}
  QuadratureRule sph = unit_sphere_rule(N, order);
  const Eigen::Index ms = sph.size();
  rule.nodes.resize(nr * ms, N);
  rule.weights.resize(nr * ms);
  Eigen::Index row = 0;
  for (int i = 0; i < nr; ++i) {
    for (Eigen::Index k = 0; k < ms; ++k, ++row) {
      rule.nodes.row(row) = radial.nodes(i) * sph.nodes.row(k);
      rule.weights(row) = radial.weights(i) * sph.weights(k);
    }
  }
  return rule;
}

QuadratureRule heat_ball_rule(int N, int order, double tau_max) {
  if (N < 2) throw std::invalid_argument("heat_ball_rule: N must be >= 2");
  if (order < 4) throw std::invalid_argument("heat_ball_rule: order must be >= 4");
  if (tau_max < 30.0)
    throw std::invalid_argument(
        "heat_ball_rule: tau_max below 30 truncates the Gamma-integral tail beyond tolerance");
  const int ntau = order;
  const int nr = std::max(2 * order / 3, 8);
  const int ang_order = std::max(8 * order / 3, 8);
  // tau = s^2 concentrates nodes where the shell carries mass and turns the
  // half-integer powers of tau in the radial moments into polynomials in s
  Rule1d s_rule = map_to(gauss_legendre(ntau), 0.0, std::sqrt(tau_max));
  Rule1d rho_gl = map_to(gauss_legendre(nr), 0.0, 1.0);
  QuadratureRule sph = unit_sphere_rule(N, ang_order);
  const Eigen::Index ms = sph.size();

  QuadratureRule rule;
  rule.dimension = N;
  rule.kind = DomainKind::HeatBall;
  rule.order = order;
  rule.nodes.resize(ntau * nr * ms, N);
  rule.sigma.resize(ntau * nr * ms);
  rule.weights.resize(ntau * nr * ms);
  Eigen::Index row = 0;
  for (int it = 0; it < ntau; ++it) {
    const double s = s_rule.nodes(it);
    const double tau = s * s;
    const double sig = heat_sigma(tau);
    const double R = heat_radius(N, tau);
    // d sigma = -e^{-tau}/(4 pi) d tau = -sigma * 2 s ds; density sigma^{-2};
    // shell factor R^{N+2} from r = R rho
    const double slab = s_rule.weights(it) * 2.0 * s * std::pow(R, N + 2) / sig;
    for (int j = 0; j < nr; ++j) {
      const double rho = rho_gl.nodes(j);
      const double r = R * rho;
      // rho^{N+1} absorbed explicitly so inverse-power moment evaluations
      // recombine into polynomial effective integrands
      const double w_rj = slab * rho_gl.weights(j) * std::pow(rho, N + 1);
      for (Eigen::Index k = 0; k < ms; ++k, ++row) {
        rule.nodes.row(row) = r * sph.nodes.row(k);
        rule.sigma(row) = sig;
        rule.weights(row) = w_rj * sph.weights(k);
      }
    }
  }
  return rule;
}

QuadratureRule monte_carlo_ball_rule(int N, int count, std::uint64_t seed) {
  if (N < 1) throw std::invalid_argument("monte_carlo_ball_rule: N must be >= 1");
  if (count < 1000) throw std::invalid_argument("monte_carlo_ball_rule: count must be >= 1000");
  std::mt19937_64 eng(seed);
  auto next_uniform = [&]() { return double(eng() >> 11) * 0x1.0p-53; };
  QuadratureRule rule;
  rule.dimension = N;
  rule.kind = DomainKind::Ball;
  rule.order = 0;
  rule.nodes.resize(count, N);
  rule.weights = Eigen::VectorXd::Constant(count, ball_volume(N) / count);
  for (int i = 0; i < count; ++i) {
    // Gaussian direction (Box-Muller on raw bits, platform-stable) ...
    Eigen::VectorXd g(N);
    for (int d = 0; d < N; d += 2) {
      double u1 = next_uniform(), u2 = next_uniform();
      while (u1 <= 0.0) u1 = next_uniform();
      const double rad = std::sqrt(-2.0 * std::log(u1));
      g(d) = rad * std::cos(2.0 * kPi * u2);
      if (d + 1 < N) g(d + 1) = rad * std::sin(2.0 * kPi * u2);
    }
    double norm = g.norm();
    while (norm == 0.0) {  // essentially impossible; regenerate
      for (int d = 0; d < N; ++d) g(d) = next_uniform() - 0.5;
      norm = g.norm();
    }
    // ... times radius with density N r^{N-1}
    const double r = std::pow(next_uniform(), 1.0 / N);
    rule.nodes.row(i) = (r / norm) * g;
  }
  return rule;
}

Eigen::MatrixXd frame_with_axis(const Eigen::VectorXd& axis) {
  const int N = static_cast<int>(axis.size());
  Eigen::VectorXd q = axis.normalized();
  Eigen::MatrixXd F(N, N);
  // Gram-Schmidt against the coordinate basis, axis last
  F.col(N - 1) = q;
  int filled = 0;
  for (int c = 0; c < N && filled < N - 1; ++c) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(N, c);
    for (int k = N - 1; k >= N - 1 - filled; --k) v -= F.col(k).dot(v) * F.col(k);
    const double n = v.norm();
    if (n > 1e-8) {
      F.col(N - 2 - filled) = v / n;
      ++filled;
    }
  }
  return F;
}

namespace {

// 1D Gauss rules for the folded singular weights of the section-5 integrands.
// On the sphere, with u the cosine of the angle from xi and v = u^2:
//   int_{S^{N-1}} |xi.y|^{p-2} g dS
//     = c int_0^1 v^{(p-3)/2} (1-v)^{(N-3)/2} [azimuthal sums at u = +-sqrt(v)] dv
Rule1d folded_jacobi(int n, double alpha, double beta) {
  Rule1d j = gauss_jacobi(n, alpha, beta);
  Rule1d out;
  out.nodes = (0.5 * (j.nodes.array() + 1.0)).matrix();
  out.weights = j.weights * std::pow(2.0, -alpha - beta - 1.0);
  return out;
}

}  // namespace

QuadratureRule weighted_sphere_rule(int N, double p, const Eigen::VectorXd& xi, int order) {
  if (N < 2) throw std::invalid_argument("weighted_sphere_rule: N must be >= 2");
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("weighted_sphere_rule: requires finite p > 1");
  if (xi.size() != N || xi.norm() == 0.0)
    throw std::invalid_argument("weighted_sphere_rule: xi must be a nonzero N-vector");
  const int n = std::max(order / 2 + 1, 8);
  QuadratureRule rule;
  rule.dimension = N;
  rule.kind = DomainKind::Sphere;
  rule.order = order;
  rule.absorbed = AbsorbedFactor{p, xi.normalized()};
  const Eigen::MatrixXd F = frame_with_axis(xi);  // last column = xi direction
  if (N == 2) {
    // four symmetric images of arccos(sqrt(v)) around the xi angle
    Rule1d vq = folded_jacobi(n, -0.5, 0.5 * (p - 3.0));
    rule.nodes.resize(4 * n, 2);
    rule.weights.resize(4 * n);
    const double psi = std::atan2(xi(1), xi(0));
    Eigen::Index row = 0;
    for (int j = 0; j < n; ++j) {
      const double s = std::acos(std::sqrt(vq.nodes(j)));
      const double w = 0.5 * vq.weights(j);
      for (double ang : {psi + s, psi - s, psi + kPi - s, psi + kPi + s}) {
        rule.nodes(row, 0) = std::cos(ang);
        rule.nodes(row, 1) = std::sin(ang);
        rule.weights(row) = w;
        ++row;
      }
    }
    return rule;
  }
  // N >= 3: folded polar factor times an unweighted rule on S^{N-2}
  Rule1d vq = folded_jacobi(n, 0.5 * (N - 3.0), 0.5 * (p - 3.0));
  QuadratureRule inner = unit_sphere_rule(N - 1, std::max(order, 8));
  const Eigen::Index mi = inner.size();
  rule.nodes.resize(2 * n * mi, N);
  rule.weights.resize(2 * n * mi);
  Eigen::Index row = 0;
  for (int j = 0; j < n; ++j) {
    const double u = std::sqrt(vq.nodes(j));
    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    const double w = 0.5 * vq.weights(j);
    for (int sign = 0; sign < 2; ++sign) {
      const double uu = sign == 0 ? u : -u;
      for (Eigen::Index k = 0; k < mi; ++k, ++row) {
        Eigen::VectorXd local(N);
        local.head(N - 1) = s * inner.nodes.row(k).transpose();
        local(N - 1) = uu;
        rule.nodes.row(row) = (F * local).transpose();
        rule.weights(row) = w * inner.weights(k);
      }
    }
  }
  return rule;
}

QuadratureRule weighted_ball_rule(int N, double p, const Eigen::VectorXd& xi, int order) {
  QuadratureRule sph = weighted_sphere_rule(N, p, xi, order);
  const int nr = std::max(order / 2 + 1, 8);
  Rule1d radial = gauss_power(nr, N + p - 3.0);  // absorbs r^{N-1} r^{p-2}
  QuadratureRule rule;
  rule.dimension = N;
  rule.kind = DomainKind::Ball;
  rule.order = order;
  rule.absorbed = sph.absorbed;
  const Eigen::Index ms = sph.size();
  rule.nodes.resize(nr * ms, N);
  rule.weights.resize(nr * ms);
  Eigen::Index row = 0;
  for (int i = 0; i < nr; ++i)
    for (Eigen::Index k = 0; k < ms; ++k, ++row) {
      rule.nodes.row(row) = radial.nodes(i) * sph.nodes.row(k);
      rule.weights(row) = radial.weights(i) * sph.weights(k);
    }
  return rule;
}

QuadratureRule weighted_heat_ball_rule(int N, double p, const Eigen::VectorXd& xi, int order,
                                       double tau_max) {
  if (N < 2) throw std::invalid_argument("weighted_heat_ball_rule: N must be >= 2");
  if (tau_max < 30.0) throw std::invalid_argument("weighted_heat_ball_rule: tau_max too small");
  QuadratureRule sph = weighted_sphere_rule(N, p, xi, std::max(order, 8));
  const int ntau = std::max(2 * order, 32);
  const int nr = std::max(2 * order / 3, 8);
  // tau = s^2; the factor s^{N+p+1} of the slab integrand is absorbed into a
  // power-weighted Gauss rule so the remaining profile is entire in s
  const double S = std::sqrt(tau_max);
  Rule1d s_rule = gauss_power(ntau, N + p + 1.0);
  Rule1d rho_rule = gauss_power(nr, N + p - 1.0);  // absorbs rho^{N+1} rho^{p-2}
  QuadratureRule rule;
  rule.dimension = N;
  rule.kind = DomainKind::HeatBall;
  rule.order = order;
  rule.absorbed = sph.absorbed;
  const Eigen::Index ms = sph.size();
  rule.nodes.resize(ntau * nr * ms, N);
  rule.sigma.resize(ntau * nr * ms);
  rule.weights.resize(ntau * nr * ms);
  Eigen::Index row = 0;
  for (int it = 0; it < ntau; ++it) {
    const double s = S * s_rule.nodes(it);
    const double tau = s * s;
    const double sig = heat_sigma(tau);
    // R^{N+p} = (2 N sigma)^{(N+p)/2} s^{N+p}; the s-power lives in the rule
    const double R = heat_radius(N, tau);
    const double slab = s_rule.weights(it) * std::pow(S, N + p + 2.0) * 2.0 *
                        std::pow(2.0 * N * sig, 0.5 * (N + p)) / sig;
    for (int j = 0; j < nr; ++j) {
      const double r = R * rho_rule.nodes(j);
      const double w_rj = slab * rho_rule.weights(j);
      for (Eigen::Index k = 0; k < ms; ++k, ++row) {
        rule.nodes.row(row) = r * sph.nodes.row(k);
        rule.sigma(row) = sig;
        rule.weights(row) = w_rj * sph.weights(k);
      }
    }
  }
  return rule;
}

EvaluationStencil stencil(const QuadratureRule& rule, const Eigen::VectorXd& x, double eps,
                          std::optional<double> t) {
  if (!(eps > 0.0)) throw std::invalid_argument("stencil: epsilon must be positive");
  if (x.size() != rule.dimension) throw std::invalid_argument("stencil: center dimension mismatch");
  if (rule.kind == DomainKind::HeatBall && !t.has_value())
    throw std::invalid_argument("stencil: heat-ball stencil requires a time t");
  EvaluationStencil st;
  st.center = x;
  st.epsilon = eps;
  st.kind = rule.kind;
  st.weights = rule.weights;
  st.points = (eps * rule.nodes).rowwise() + x.transpose();
  if (rule.kind == DomainKind::HeatBall) {
    st.has_time = true;
    st.t = *t;
    st.times = -(eps * eps * rule.sigma.array()) + *t;
  }
  return st;
}

}  // namespace pmvl
