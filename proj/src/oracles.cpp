#include "pmvl/oracles.hpp"

namespace pmvl {

namespace {

// Σ w_i f_i with the |xi.y|^{p-2} factor supplied by the rule's absorbed
// weights when available, evaluated pointwise otherwise.
template <typename F>
double weighted_sum(const QuadratureRule& rule, double p, const Eigen::VectorXd& xi_dir, F&& f) {
  double acc = 0.0;
  const bool absorbed = rule.absorbed.has_value();
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    double w = rule.weights(i);
    if (!absorbed) {
      const double proj = std::abs(rule.nodes.row(i).dot(xi_dir));
      if (proj == 0.0 && p < 2.0) continue;  // measure-zero direction on a node
      w *= std::pow(proj, p - 2.0);
    }
    acc += w * f(i);
  }
  return acc;
}

}  // namespace

std::string to_string(FormulaId id) {
  switch (id) {
    case FormulaId::Int1: return "int1";
    case FormulaId::Int2: return "int2";
    case FormulaId::CAlphaBeta: return "C_alpha_beta";
    case FormulaId::Int1Parabolic: return "int1_parabolic";
    default: return "int2_parabolic";
  }
}

OracleCheck quadrature_vs_oracle(const QuadratureRule& rule, FormulaId formula,
                                 const OracleParams& params) {
  const int N = rule.dimension;
  OracleCheck out;
  out.formula = formula;

  auto expect_kind = [&](DomainKind k) {
    if (rule.kind != k)
      throw std::invalid_argument("quadrature_vs_oracle: rule kind does not match formula");
  };
  auto check_absorbed = [&](double p, const Eigen::VectorXd& xi_dir) {
    if (!rule.absorbed) return;
    if (rule.absorbed->p != p || (rule.absorbed->xi_dir - xi_dir).norm() > 1e-12)
      throw std::invalid_argument(
          "quadrature_vs_oracle: rule absorbed a different singular factor");
  };

  switch (formula) {
    case FormulaId::Int1:
    case FormulaId::Int2: {
      expect_kind(formula == FormulaId::Int1 ? DomainKind::Sphere : DomainKind::Ball);
      const Eigen::VectorXd xi_dir = params.xi.normalized();
      check_absorbed(params.p, xi_dir);
      const double den = weighted_sum(rule, params.p, xi_dir, [&](Eigen::Index) { return 1.0; });
      const double num = weighted_sum(rule, params.p, xi_dir, [&](Eigen::Index i) {
        return (rule.nodes.row(i) * params.A * rule.nodes.row(i).transpose()).value();
      });
      out.quadrature = num / den;
      out.closed_form = formula == FormulaId::Int1 ? sphere_ratio(params.A, params.xi, params.p, N)
                                                   : ball_ratio(params.A, params.xi, params.p, N);
      break;
    }
    case FormulaId::CAlphaBeta: {
      expect_kind(DomainKind::HeatBall);
      if (rule.absorbed)
        throw std::invalid_argument("quadrature_vs_oracle: C_alpha_beta needs a plain heat rule");
      // int_{E*} r^{2a-1} s^{-b} dr ds = (1/omega_{N-1}) int_E |z|^{2a-N-2} s^{2-b} dnu
      double acc = 0.0;
      for (Eigen::Index i = 0; i < rule.size(); ++i) {
        const double r = rule.nodes.row(i).norm();
        acc += rule.weights(i) * std::pow(r, 2.0 * params.alpha - N - 2.0) *
               std::pow(rule.sigma(i), 2.0 - params.beta);
      }
      out.quadrature = acc / sphere_area(N);
      out.closed_form = heat_star(params.alpha, params.beta, N);
      break;
    }
    case FormulaId::Int1Parabolic:
    case FormulaId::Int2Parabolic: {
      expect_kind(DomainKind::HeatBall);
      const Eigen::VectorXd xi_dir = params.xi.normalized();
      check_absorbed(params.p, xi_dir);
      const double den = weighted_sum(rule, params.p, xi_dir, [&](Eigen::Index) { return 1.0; });
      double num;
      if (formula == FormulaId::Int1Parabolic) {
        num = weighted_sum(rule, params.p, xi_dir, [&](Eigen::Index i) { return rule.sigma(i); });
        out.closed_form = heat_sigma_ratio(params.p, N);
      } else {
        num = weighted_sum(rule, params.p, xi_dir, [&](Eigen::Index i) {
          return (rule.nodes.row(i) * params.A * rule.nodes.row(i).transpose()).value();
        });
        out.closed_form = heat_quadratic_ratio(params.A, params.xi, params.p, N);
      }
      out.quadrature = num / den;
      break;
    }
  }
  out.abs_gap = std::abs(out.quadrature - out.closed_form);
  out.rel_gap = out.abs_gap / std::max(std::abs(out.closed_form), 1e-12);
  return out;
}

}  // namespace pmvl
