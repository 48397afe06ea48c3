#include "pmvl/gauss.hpp"

#include <cmath>
#include <stdexcept>

#include "pmvl/gamma.hpp"

namespace pmvl {

namespace {

// Nodes/weights from the symmetric tridiagonal Jacobi matrix (Golub-Welsch).
// diag/offdiag are the three-term recurrence coefficients; mu0 is the total
// weight integral, so w_i = mu0 * (first eigenvector component)^2.
Rule1d golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double mu0) {
  const int n = static_cast<int>(diag.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = diag(i);
    if (i + 1 < n) J(i, i + 1) = J(i + 1, i) = offdiag(i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Rule1d r;
  r.nodes = es.eigenvalues();
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v = es.eigenvectors()(0, i);
    r.weights(i) = mu0 * v * v;
  }
  return r;
}

}  // namespace

Rule1d gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: need n >= 1");
  if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("gauss_jacobi: need a, b > -1");
  Eigen::VectorXd diag(n), off(n > 1 ? n - 1 : 0);
  const double ab = a + b;
  diag(0) = (b - a) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double d = 2.0 * k + ab;
    diag(k) = (b * b - a * a) / (d * (d + 2.0));
  }
  if (n > 1) {
    off(0) = std::sqrt(4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0)));
    for (int k = 2; k < n; ++k) {
      const double d = 2.0 * k + ab;
      off(k - 1) = std::sqrt(4.0 * k * (k + a) * (k + b) * (k + ab) /
                             (d * d * (d + 1.0) * (d - 1.0)));
    }
  }
  // mu0 = 2^{a+b+1} B(a+1, b+1)
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + lanczos_log_gamma(a + 1.0) +
                              lanczos_log_gamma(b + 1.0) - lanczos_log_gamma(ab + 2.0));
  return golub_welsch(diag, off, mu0);
}

Rule1d gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

Rule1d map_to(const Rule1d& r, double lo, double hi) {
  Rule1d out;
  out.nodes = (0.5 * (hi - lo) * (r.nodes.array() + 1.0) + lo).matrix();
  out.weights = 0.5 * (hi - lo) * r.weights;
  return out;
}

Rule1d gauss_power(int n, double b) {
  // weight x^b on (0,1): Jacobi(0, b) on (-1,1) with x = (1+t)/2,
  // x^b dx = ((1+t)/2)^b dt/2
  Rule1d j = gauss_jacobi(n, 0.0, b);
  Rule1d out;
  out.nodes = (0.5 * (j.nodes.array() + 1.0)).matrix();
  out.weights = j.weights * std::pow(2.0, -b - 1.0);
  return out;
}

}  // namespace pmvl
