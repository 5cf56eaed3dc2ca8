#include <doctest.h>

#include <cmath>

#include "dho/dynamics.hpp"
#include "dho/operators.hpp"
#include "dho/states.hpp"
#include "oracles.hpp"

using namespace dho;

namespace {

const OscillatorParams ref = make_params(1.0, 0.6);

}  // namespace

TEST_CASE("stationary states") {
  const SpatialGrid g = auto_grid(ref, 50, 0.0);
  CHECK(stationary_state(0, ref, g)[g.center()].real() == doctest::Approx(std::pow(0.8 / oracle::pi, 0.25)));
  CHECK(std::abs(stationary_state(1, ref, g)[g.center()]) == 0.0);
  for (int n = 0; n <= 50; ++n) CHECK(std::abs(norm_squared(stationary_state(n, ref, g)) - 1.0) < 1e-10);
  CHECK_THROWS_AS(stationary_state(-1, ref, g), DomainError);
}

TEST_CASE("first-order eigenstates carry the S phase") {
  const SpatialGrid g = auto_grid(ref, 8, 0.0);
  const cplx origin = first_order_eigenstate(0, ref, g)[g.center()];
  CHECK(origin.real() == doctest::Approx(0.710372).epsilon(1e-6));
  CHECK(origin.imag() == 0.0);
  for (int n : {0, 3, 8}) {
    const auto psi = first_order_eigenstate(n, ref, g);
    const auto bare = stationary_state(n, ref, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(std::abs(psi[i]) == doctest::Approx(std::abs(bare[i])).epsilon(1e-14));
      const double q = g.point(i);
      CHECK(std::abs(psi[i] - std::polar(1.0, -0.3 * q * q) * bare[i]) < 1e-15);
    }
  }
}

TEST_CASE("pseudostationary states") {
  const SpatialGrid g = auto_grid(ref, 30, 1.0);
  for (int n : {0, 4, 11}) {
    const auto a = pseudostationary_state(n, 0.0, ref, g);
    const auto b = first_order_eigenstate(n, ref, g);
    CHECK(max_abs_difference(a, b) < 1e-12);
  }
  CHECK(std::abs(pseudostationary_state(0, 0.5, ref, g)[g.center()]) ==
        doctest::Approx(std::pow(0.8 / oracle::pi, 0.25) * std::exp(0.15)).epsilon(1e-14));

  for (int n = 0; n <= 30; ++n) {
    for (double t : {0.0, 0.5, 1.0}) {
      const auto psi = pseudostationary_state(n, t, ref, g);
      CHECK(psi.time() == t);
      CHECK(std::abs(norm_squared(psi) - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("coherent states") {
  const auto vac = coherent_state({cplx(0.0), 0.0}, ref, 8);
  CHECK(vac[0] == cplx(1.0));
  CHECK(vac.tail_weight(1) == 0.0);

  const auto c = coherent_state({cplx(1.0), 0.0}, ref, 30);
  CHECK(std::abs(c.norm_squared() - 1.0) < 1e-12);

  for (cplx z : {cplx(1.0), cplx(-0.5, 0.8), cplx(0.0, 2.0)}) {
    const int m = coherent_truncation(z) + 4;
    const auto v = coherent_state({z, 0.0}, ref, m);
    const Eigen::VectorXcd av = oracle::lowering(m) * v.coeffs();
    CHECK(std::abs(v.coeffs().dot(av) - z) < 1e-10);
    // Poisson weights.
    for (int n = 0; n < 6; ++n) {
      const double poisson = std::exp(-std::norm(z)) * std::pow(std::norm(z), n) / std::tgamma(n + 1.0);
      CHECK(std::norm(v[n]) == doctest::Approx(poisson).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(coherent_state({cplx(3.0), 0.0}, ref, 10), TruncationError);
  const int m = coherent_truncation(cplx(3.0));
  CHECK_NOTHROW(coherent_state({cplx(3.0), 0.0}, ref, m));
  CHECK_THROWS_AS(coherent_state({cplx(3.0), 0.0}, ref, m - 1), TruncationError);
}

TEST_CASE("squeezed state at xi = 0 is a rotated coherent state") {
  for (double t : {0.0, 0.4, 2.0}) {
    const cplx z(0.7, -0.2);
    const auto s = squeezed_state({z, 0.0}, t, ref, 40);
    const auto c = coherent_state({z * std::polar(1.0, -0.8 * t), 0.0}, ref, 40);
    for (int n = 0; n < 40; ++n) CHECK(std::abs(s[n]) == doctest::Approx(std::abs(c[n])).epsilon(1e-10));
  }

  const auto s = squeezed_state({cplx(1.0), 0.0}, 0.0, ref, 40);
  const auto m = fock_moments(s, 0.0, ref);
  CHECK(m.mean_x == doctest::Approx(std::sqrt(2.0 / 0.8)).epsilon(1e-10));
  CHECK(m.var_x == doctest::Approx(0.625).epsilon(1e-10));
}

TEST_CASE("squeezed state is an eigenvector of b(t)") {
  const int m = 128;
  const Eigen::MatrixXcd a = oracle::lowering(m);
  for (double xi : {0.3, 1.0}) {
    for (double t : {0.0, 0.9}) {
      const cplx z(-0.4, 0.6);
      const auto s = squeezed_state({z, xi}, t, ref, m);
      const Eigen::MatrixXcd b =
          std::cosh(xi) * std::polar(1.0, 0.8 * t) * a + std::sinh(xi) * std::polar(1.0, -0.8 * t) * a.adjoint();
      const Eigen::VectorXcd residual = (b * s.coeffs() - z * s.coeffs()).head(m - 40);
      CHECK(residual.cwiseAbs().maxCoeff() < 1e-10);
      CHECK(std::abs(s.norm_squared() - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("squeezed moments match the closed forms on a 3x3x3 lattice") {
  for (cplx z : {cplx(0.5), cplx(1.0), cplx(-0.5, 0.8)}) {
    for (double xi : {0.0, 0.5, 1.0}) {
      for (double t : {0.0, 0.7, 1.5}) {
        const auto m = fock_moments(squeezed_state({z, xi}, t, ref, 128), t, ref);
        const auto means = squeezed_means(z, xi, t, ref);
        CHECK(std::abs(m.mean_x - means.mean_x) < 1e-8);
        CHECK(std::abs(m.mean_y - means.mean_y) < 1e-8);
        CHECK(std::abs(m.var_x - squeezed_variance_x(xi, t, ref)) < 1e-8);
      }
    }
  }
}

TEST_CASE("squeezed truncation signal") {
  CHECK_THROWS_AS(squeezed_state({cplx(2.0), 2.0}, 0.3, ref, 16), TruncationError);
  CHECK_NOTHROW(squeezed_state({cplx(1.0), 0.5}, 0.3, ref, 64));
  CHECK_THROWS_AS(squeezed_state({cplx(1.0), 0.5}, 0.3, ref, 1), DomainError);
}

TEST_CASE("synthesize and project are inverse on resolved states") {
  const SpatialGrid g = auto_grid(ref, 40, 0.0, 2.0);
  const auto c = coherent_state({cplx(0.9, 0.4), 0.0}, ref, 40);
  const auto psi = synthesize(c, g);
  CHECK(std::abs(norm_squared(psi) - 1.0) < 1e-12);
  const auto back = project(psi, ref, 40);
  CHECK((back.coeffs() - c.coeffs()).cwiseAbs().maxCoeff() < 1e-12);

  const auto table = stationary_table(ref, g, 5);
  CHECK(table.rows() == static_cast<Eigen::Index>(g.size()));
  CHECK(table(static_cast<Eigen::Index>(g.center()), 0) == doctest::Approx(std::pow(0.8 / oracle::pi, 0.25)));
}
