#include "thetakit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "thetakit/errors.hpp"

namespace thetakit::quad {

Rule gauss_legendre(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

std::vector<double> gauss_chebyshev_nodes(int n) {
  std::vector<double> t(n);
  for (int j = 0; j < n; ++j) t[j] = std::cos((2.0 * j + 1.0) * std::numbers::pi / (2.0 * n));
  return t;
}

namespace {

// Kronrod 15-point abscissae (positive half, descending) and weights with the
// embedded 7-point Gauss weights (QUADPACK qk15).
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b;
  Eigen::VectorXcd value;
  double error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece eval_piece(const VectorFn& f, double a, double b, int dim) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Eigen::VectorXcd fc = f(c);
  Eigen::VectorXcd k = fc * kWgk[7];
  Eigen::VectorXcd g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    Eigen::VectorXcd s = f(c - dx) + f(c + dx);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  (void)dim;
  Piece p{a, b, k * h, 0.0};
  p.error = ((k - g) * h).cwiseAbs().maxCoeff();
  return p;
}

}  // namespace

Eigen::VectorXcd gauss_kronrod(const VectorFn& f, double a, double b, int dim,
                               const AdaptiveOptions& opts) {
  std::priority_queue<Piece> heap;
  Piece first = eval_piece(f, a, b, dim);
  Eigen::VectorXcd total = first.value;
  double err = first.error;
  heap.push(std::move(first));
  int count = 1;
  while (err > std::max(opts.abs_tol, opts.rel_tol * total.cwiseAbs().maxCoeff())) {
    if (count >= opts.max_intervals) {
      throw Error(ErrorCode::QuadratureNotConverged, "adaptive Gauss-Kronrod exceeded interval budget");
    }
    Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Piece left = eval_piece(f, worst.a, mid, dim);
    Piece right = eval_piece(f, mid, worst.b, dim);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(std::move(left));
    heap.push(std::move(right));
    ++count;
  }
  // Re-sum to remove accumulated update error; order is fixed by the heap.
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(total.size());
  std::vector<Piece> pieces;
  while (!heap.empty()) {
    pieces.push_back(heap.top());
    heap.pop();
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& l, const Piece& r) { return l.a < r.a; });
  for (const auto& p : pieces) sum += p.value;
  return sum;
}

}  // namespace thetakit::quad
