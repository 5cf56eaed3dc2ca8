#pragma once

// Reference values computed without the library.

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;  // for the weight e^{-x^2}
};

// Golub-Welsch: eigenvalues of the Jacobi matrix of the physicists' Hermite
// polynomials, off-diagonal sqrt(k/2).
inline Quadrature gauss_hermite(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) j(k, k - 1) = j(k - 1, k) = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  Quadrature q;
  for (int k = 0; k < n; ++k) {
    q.nodes.push_back(es.eigenvalues()(k));
    const double v = es.eigenvectors()(0, k);
    q.weights.push_back(std::sqrt(pi) * v * v);
  }
  return q;
}

// Orthonormal Hermite function from the explicit polynomial sum, long double.
inline double hermite_explicit(int n, double x) {
  long double sum = 0.0L;
  for (int m = 0; 2 * m <= n; ++m) {
    const long double term = std::pow(2.0L * x, n - 2 * m) /
                             (std::tgamma(static_cast<long double>(m + 1)) *
                              std::tgamma(static_cast<long double>(n - 2 * m + 1)));
    sum += (m % 2 ? -term : term);
  }
  const long double hn = std::tgamma(static_cast<long double>(n + 1)) * sum;
  const long double norm = std::sqrt(std::pow(2.0L, n) * std::tgamma(static_cast<long double>(n + 1)) *
                                     std::sqrt(static_cast<long double>(pi)));
  return static_cast<double>(hn / norm * std::exp(-0.5L * x * x));
}

// Brute-force ladder operator, built independently of the library.
inline Eigen::MatrixXcd lowering(int m) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, m);
  for (int k = 1; k < m; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

// Damped oscillator x'' + 2 a x' + w^2 x = 0 by RK4 with a tiny fixed step.
struct Point {
  double x;
  double y;
};

inline Point rk4(Point p, double t, double w, double a, int steps) {
  const double h = t / steps;
  auto f = [&](Point s) { return Point{s.y, -w * w * s.x - 2.0 * a * s.y}; };
  for (int i = 0; i < steps; ++i) {
    const Point k1 = f(p);
    const Point k2 = f({p.x + 0.5 * h * k1.x, p.y + 0.5 * h * k1.y});
    const Point k3 = f({p.x + 0.5 * h * k2.x, p.y + 0.5 * h * k2.y});
    const Point k4 = f({p.x + h * k3.x, p.y + h * k3.y});
    p.x += h / 6.0 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
    p.y += h / 6.0 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
  }
  return p;
}

}  // namespace oracle
