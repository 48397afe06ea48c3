#include <cmath>

#include "doctest.h"
#include "pmvl/oracles.hpp"
#include "pmvl/rules.hpp"
#include "test_rng.hpp"

using namespace pmvl;

namespace {
constexpr double kPi = 3.14159265358979323846;

Eigen::MatrixXd random_symmetric(int N, TestRng& rng) {
  Eigen::MatrixXd M(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) M(i, j) = rng.uniform(-1.5, 1.5);
  return 0.5 * (M + M.transpose()).eval();
}

Eigen::VectorXd random_direction(int N, TestRng& rng) {
  Eigen::VectorXd v(N);
  do {
    for (int i = 0; i < N; ++i) v(i) = rng.uniform(-1, 1);
  } while (v.norm() < 0.2);
  return v;
}
}  // namespace

TEST_CASE("sphere_ratio and ball_ratio closed forms") {
  Eigen::Matrix2d I2 = Eigen::Matrix2d::Identity();
  Eigen::Vector2d e1(1, 0);
  CHECK(sphere_ratio(I2, e1, 2.0, 2) == doctest::Approx(1.0));
  // p=2, general A: tr(A)/N
  Eigen::Matrix3d A3;
  A3 << 1, 0, 0, 0, 2, 0, 0, 0, 3;
  Eigen::Vector3d x3(1, 0, 0);
  CHECK(sphere_ratio(A3, x3, 2.0, 3) == doctest::Approx(2.0));
  // p=4, N=3, A=diag(1,2,3), xi=e1 -> (6 + 2*1)/5 = 8/5
  CHECK(sphere_ratio(A3, x3, 4.0, 3) == doctest::Approx(8.0 / 5.0));
  CHECK(ball_ratio(A3, x3, 2.0, 3) == doctest::Approx(6.0 / 5.0));
  Eigen::Matrix2d I = Eigen::Matrix2d::Identity();
  CHECK(ball_ratio(I, e1, 4.0, 2) == doctest::Approx(2.0 / 3.0));
  // xi-scale invariance
  CHECK(ball_ratio(I2, (3.0 * e1).eval(), 3.0, 2) == doctest::Approx(ball_ratio(I2, e1, 3.0, 2)));
  CHECK_THROWS_AS(sphere_ratio(I2, e1, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(ball_ratio(I2, e1, std::numeric_limits<double>::infinity(), 2),
                  std::invalid_argument);
}

TEST_CASE("heat_star closed form and named values") {
  CHECK(heat_star(1.0, 1.0, 2) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-14));
  // (alpha=1, beta=0, N=2): 2^{-4} pi^{-2} 2 Gamma(2) / (1 * 2^2)
  CHECK(heat_star(1.0, 0.0, 2) ==
        doctest::Approx(std::pow(2.0, -4.0) * std::pow(kPi, -2.0) * 2.0 / 4.0).epsilon(1e-14));
  CHECK_THROWS_AS(heat_star(1.0, 2.5, 2), std::invalid_argument);  // beta >= alpha+1 diverges
  CHECK_THROWS_AS(heat_star(-1.0, 0.0, 2), std::invalid_argument);
}

TEST_CASE("heat_star independently verified by 1d quadrature in tau") {
  // int_{E*} r^{2a-1} s^{-b} dr ds = int_0^inf R^{2a}/(2a) s^{-b} e^{-tau}/(4pi) dtau
  auto reference = [](double a, double b, int N) {
    const int n = 20000;
    const double tmax = 60.0;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {  // midpoint rule, fine grid
      const double tau = tmax * (i + 0.5) / n;
      const double sig = std::exp(-tau) / (4.0 * kPi);
      const double R2 = 2.0 * N * sig * tau;
      acc += std::pow(R2, a) / (2.0 * a) * std::pow(sig, -b) * sig * (tmax / n);
    }
    return acc;
  };
  for (auto [a, b, N] : {std::tuple{1.0, 1.0, 2}, {1.5, 2.0, 2}, {2.0, 2.0, 2},
                         {2.5, 2.0, 3}, {1.75, 2.0, 2}}) {
    CHECK(heat_star(a, b, N) == doctest::Approx(reference(a, b, N)).epsilon(1e-6));
  }
}

TEST_CASE("parabolic ratio identities") {
  // sigma ratio at p=2, N=2 is 1/(32 pi)
  CHECK(heat_sigma_ratio(2.0, 2) == doctest::Approx(1.0 / (32.0 * kPi)).epsilon(1e-14));
  // quadratic ratio with A=I, p=2, N=2 -> 1/(8 pi)
  Eigen::Matrix2d I = Eigen::Matrix2d::Identity();
  Eigen::Vector2d e1(1, 0);
  CHECK(heat_quadratic_ratio(I, e1, 2.0, 2) == doctest::Approx(1.0 / (8.0 * kPi)).epsilon(1e-14));
  // sigma ratio equals the C(alpha,beta) ratio with alpha=(N+p)/2, beta in {1,2}
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    for (int N : {2, 3}) {
      const double a = 0.5 * (N + p);
      CHECK(heat_sigma_ratio(p, N) ==
            doctest::Approx(heat_star(a, 1.0, N) / heat_star(a, 2.0, N)).epsilon(1e-13));
    }
  }
  // prefactor limit: (1 - 2/(N+p))^{1+(N+p)/2} -> e^{-1}; checked at p = 1e4
  CHECK(heat_sigma_ratio(1.0e4, 2) ==
        doctest::Approx(1.0 / (4.0 * kPi * std::exp(1.0))).epsilon(1e-3));
}

TEST_CASE("int1/int2 structural identity on random parameters") {
  TestRng rng(17);
  for (int rep = 0; rep < 25; ++rep) {
    const int N = rep % 2 == 0 ? 2 : 3;
    const double p = rng.uniform(1.1, 6.0);
    Eigen::MatrixXd A = random_symmetric(N, rng);
    Eigen::VectorXd xi = random_direction(N, rng);
    // int2 = int1 * (N+p-2)/(N+p)
    CHECK(ball_ratio(A, xi, p, N) ==
          doctest::Approx(sphere_ratio(A, xi, p, N) * (N + p - 2.0) / (N + p)).epsilon(1e-13));
    // rotation invariance through a random Givens rotation
    const double ang = rng.uniform(0, 2 * kPi);
    Eigen::MatrixXd R = Eigen::MatrixXd::Identity(N, N);
    R(0, 0) = std::cos(ang); R(0, 1) = -std::sin(ang);
    R(1, 0) = std::sin(ang); R(1, 1) = std::cos(ang);
    Eigen::MatrixXd RA = R.transpose() * A * R;
    Eigen::VectorXd Rxi = R.transpose() * xi;
    CHECK(sphere_ratio(RA, Rxi, p, N) == doctest::Approx(sphere_ratio(A, xi, p, N)).epsilon(1e-12));
    CHECK(heat_quadratic_ratio(RA, Rxi, p, N) ==
          doctest::Approx(heat_quadratic_ratio(A, xi, p, N)).epsilon(1e-12));
    // gradient-scale invariance
    CHECK(sphere_ratio(A, (rng.uniform(0.1, 3.0) * xi).eval(), p, N) ==
          doctest::Approx(sphere_ratio(A, xi, p, N)).epsilon(1e-12));
  }
}

TEST_CASE("weighted rules reproduce int1/int2 to 1e-10") {
  TestRng rng(23);
  for (int N : {2, 3}) {
    for (double p : {1.5, 2.0, 3.0, 4.0}) {
      for (int rep = 0; rep < 3; ++rep) {
        OracleParams prm;
        prm.N = N;
        prm.p = p;
        prm.A = random_symmetric(N, rng);
        prm.xi = random_direction(N, rng);
        QuadratureRule ws = weighted_sphere_rule(N, p, prm.xi, 16);
        ws.validate();
        OracleCheck c1 = quadrature_vs_oracle(ws, FormulaId::Int1, prm);
        CHECK(c1.rel_gap < 1e-10);
        QuadratureRule wb = weighted_ball_rule(N, p, prm.xi, 16);
        OracleCheck c2 = quadrature_vs_oracle(wb, FormulaId::Int2, prm);
        CHECK(c2.rel_gap < 1e-10);
      }
    }
  }
}

TEST_CASE("weighted sphere rule total weight matches the Beta moment") {
  // int_{S^1} |xi.y|^{p-2} dS = 2 B(1/2, (p-1)/2)
  TestRng rng(31);
  for (double p : {1.5, 2.5, 4.0}) {
    Eigen::VectorXd xi = random_direction(2, rng);
    QuadratureRule ws = weighted_sphere_rule(2, p, xi, 16);
    const double expected = 2.0 * std::exp(lanczos_log_gamma(0.5) + lanczos_log_gamma(0.5 * (p - 1.0)) -
                                           lanczos_log_gamma(0.5 * p));
    CHECK(ws.total_weight() == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("weighted heat rules reproduce the parabolic ratios") {
  TestRng rng(41);
  for (int N : {2, 3}) {
    for (double p : {1.5, 3.0, 4.0}) {
      OracleParams prm;
      prm.N = N;
      prm.p = p;
      prm.A = random_symmetric(N, rng);
      prm.xi = random_direction(N, rng);
      QuadratureRule wh = weighted_heat_ball_rule(N, p, prm.xi, 24);
      wh.validate();
      CHECK(quadrature_vs_oracle(wh, FormulaId::Int1Parabolic, prm).rel_gap < 1e-8);
      CHECK(quadrature_vs_oracle(wh, FormulaId::Int2Parabolic, prm).rel_gap < 1e-8);
    }
  }
}

TEST_CASE("plain heat rule reproduces C(alpha,beta) golden values") {
  for (int N : {2, 3}) {
    QuadratureRule h = heat_ball_rule(N, 24);
    for (auto [a, b] : {std::pair{1.0, 1.0}, {1.5, 2.0}, {2.0, 2.0},
                        {0.5 * (N + 1.5), 2.0}, {0.5 * (N + 3.0), 2.0}, {0.5 * (N + 4.0), 2.0}}) {
      OracleParams prm;
      prm.N = N;
      prm.alpha = a;
      prm.beta = b;
      OracleCheck c = quadrature_vs_oracle(h, FormulaId::CAlphaBeta, prm);
      CAPTURE(N); CAPTURE(a); CAPTURE(b);
      CHECK(c.rel_gap < 1e-6);
    }
  }
}

TEST_CASE("quadrature_vs_oracle rejects mismatched rules") {
  QuadratureRule ball = unit_ball_rule(2, 6);
  OracleParams prm;
  prm.A = Eigen::Matrix2d::Identity();
  prm.xi = Eigen::Vector2d(1, 0);
  prm.p = 2.0;
  CHECK_THROWS_AS(quadrature_vs_oracle(ball, FormulaId::Int1, prm), std::invalid_argument);
  // plain-rule path works for even-integer weights (polynomial integrand)
  OracleCheck c = quadrature_vs_oracle(ball, FormulaId::Int2, prm);
  CHECK(c.rel_gap < 1e-12);
}
