#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace thetakit::quad {

using VectorFn = std::function<Eigen::VectorXcd(double)>;

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
Rule gauss_legendre(int n);

/// Nodes cos((2j-1)pi/2n), j = 1..n, of the n-point Gauss-Chebyshev rule for
/// weight 1/sqrt(1-t^2); every weight equals pi/n.
std::vector<double> gauss_chebyshev_nodes(int n);

struct AdaptiveOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of a vector-valued
/// integrand over [a, b].  Throws QuadratureNotConverged when the interval
/// budget runs out.
Eigen::VectorXcd gauss_kronrod(const VectorFn& f, double a, double b, int dim,
                               const AdaptiveOptions& opts = {});

}  // namespace thetakit::quad
