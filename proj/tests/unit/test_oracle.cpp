#include <boost/math/special_functions/airy.hpp>
#include <cmath>

#include "doctest.h"
#include "pertpade/errors.hpp"
#include "pertpade/oracle.hpp"

using namespace pertpade;

namespace {

int sign_changes(const std::vector<double>& v) {
  // ignore the numerically zero tails
  double peak = 0.0;
  for (double c : v) peak = std::max(peak, std::fabs(c));
  int count = 0, last = 0;
  for (double c : v) {
    if (std::fabs(c) < 1e-8 * peak) continue;
    const int s = c > 0 ? 1 : -1;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("harmonic spectrum") {
  auto v = potentials::harmonic(1.0);
  auto sol = grid_eigensolve(v, GridSpec{-12.0, 12.0, 4000}, 3);
  REQUIRE(sol.energies.size() == 3);
  for (int n = 0; n < 3; ++n) CHECK(std::fabs(sol.energies[n] - (2 * n + 1)) < 1e-4);
  for (int n = 0; n < 3; ++n) CHECK(sign_changes(sol.vectors[n]) == n);
  CHECK(sol.warnings.empty());
}

TEST_CASE("vectors are unit norm with a positive largest component") {
  auto v = potentials::harmonic(1.0);
  auto sol = grid_eigensolve(v, GridSpec{-10.0, 10.0, 2000}, 4);
  const double h = (10.0 - -10.0) / 2001;
  for (int n = 0; n < 4; ++n) {
    double norm = 0.0, peak = 0.0;
    for (double c : sol.vectors[n]) {
      norm += c * c * h;
      if (std::fabs(c) > std::fabs(peak)) peak = c;
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(peak > 0.0);
    for (int m = 0; m < n; ++m) {
      double overlap = 0.0;
      for (std::size_t i = 0; i < sol.x.size(); ++i) overlap += sol.vectors[m][i] * sol.vectors[n][i] * h;
      CHECK(std::fabs(overlap) < 1e-9);
    }
  }
  // ground state against the Gaussian
  const double psi0 = std::pow(M_PI, -0.25);
  CHECK(sol.interpolate(0, 0.0) == doctest::Approx(psi0).epsilon(1e-4));
  CHECK(sol.interpolate(0, 50.0) == 0.0);
}

TEST_CASE("Poschl-Teller levels") {
  auto v = potentials::poschl_teller(20.0);
  auto r = richardson_refine(v, GridSpec{-12.0, 12.0, 4000}, 2);
  CHECK(std::fabs(r.energies[0] + 400.0) < 1e-2);
  CHECK(std::fabs(r.energies[1] + 361.0) < 1e-2);
}

TEST_CASE("Hulthen ground state") {
  auto v = potentials::hulthen(2.0, 3.0);
  auto r = richardson_refine(v, GridSpec{0.0, 60.0, 6000}, 2);
  CHECK(std::fabs(r.energies[0] + 289.0 / 36.0) < 1e-4);
  CHECK(std::fabs(r.energies[1] + 196.0 / 144.0) < 1e-4);
}

TEST_CASE("Coulomb ground state") {
  auto v = potentials::coulomb(6.0);
  auto r = richardson_refine(v, default_grid(v, 8000), 2);
  CHECK(std::fabs(r.energies[0] + 9.0) < 1e-3);
  CHECK(std::fabs(r.energies[1] + 2.25) < 1e-3);
}

TEST_CASE("linear potential against Airy zeros") {
  auto v = potentials::linear(1.0, 0.0);
  auto r = richardson_refine(v, GridSpec{0.0, 30.0, 4000}, 3);
  for (int n = 1; n <= 3; ++n) {
    CHECK(std::fabs(r.energies[n - 1] - std::fabs(boost::math::airy_ai_zero<double>(n))) < 1e-6);
  }
}

TEST_CASE("Richardson error estimates") {
  auto v = potentials::poschl_teller(4.0);
  const GridSpec coarse{-12.0, 12.0, 800};
  GridSpec fine = coarse;
  fine.npts = 2 * coarse.npts + 1;
  auto a = richardson_refine(v, coarse, 3);
  auto b = richardson_refine(v, fine, 3);
  for (int n = 0; n < 3; ++n) {
    // O(h^2): halving h cuts the coarse-fine difference by ~4
    const double ratio = a.errors[n] / b.errors[n];
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
    // the estimate bounds the actual change of the fine solve
    CHECK(std::fabs(b.fine.energies[n] - a.fine.energies[n]) < 4.0 * a.errors[n]);
    const double exact = -(4.0 - n) * (4.0 - n);
    CHECK(std::fabs(b.energies[n] - exact) < std::fabs(b.fine.energies[n] - exact));
  }
  for (int n = 1; n < 3; ++n) CHECK(a.energies[n] > a.energies[n - 1]);
}

TEST_CASE("domain clipping") {
  auto v = potentials::harmonic(1.0);
  try {
    grid_eigensolve(v, GridSpec{-2.0, 2.0, 1000}, 3);
    FAIL("expected DomainClip");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainClip);
  }
  // tight but tolerable: warnings only
  auto tight = grid_eigensolve(v, GridSpec{-3.0, 3.0, 1000}, 3);
  CHECK(tight.warnings.size() == 3);
  // generous box: no warnings
  auto ok = grid_eigensolve(v, GridSpec{-12.0, 12.0, 1000}, 3);
  CHECK(ok.warnings.empty());
}

TEST_CASE("argument checks") {
  auto v = potentials::harmonic(1.0);
  CHECK_THROWS_AS(grid_eigensolve(v, GridSpec{-5.0, 5.0, 32}, 2), Error);
  CHECK_THROWS_AS(grid_eigensolve(v, GridSpec{-5.0, 5.0, 400}, 100), Error);
  CHECK_THROWS_AS(grid_eigensolve(v, GridSpec{5.0, -5.0, 400}, 2), Error);
  auto c = potentials::coulomb(1.0);
  CHECK_THROWS_AS(grid_eigensolve(c, GridSpec{-1.0, 10.0, 400}, 2), Error);
}

TEST_CASE("default grids") {
  auto line = default_grid(potentials::harmonic(1.0));
  CHECK(line.lo == -12.0);
  CHECK(line.hi == 12.0);
  auto radial = default_grid(potentials::hulthen(2.0, 3.0));
  CHECK(radial.lo == 0.0);
  CHECK(radial.hi == doctest::Approx(120.0));
}

TEST_CASE("tridiagonal solver on a known matrix") {
  // tridiag(-1, 2, -1) of size n: 2 - 2 cos(k pi / (n + 1))
  const int n = 200;
  std::vector<double> d(n, 2.0), e(n - 1, -1.0), values;
  std::vector<std::vector<double>> vectors;
  tridiagonal_lowest(d, e, 5, values, vectors);
  for (int k = 1; k <= 5; ++k) {
    CHECK(values[k - 1] == doctest::Approx(2.0 - 2.0 * std::cos(k * M_PI / (n + 1))).epsilon(1e-12));
    // sin(k pi i / (n + 1)) up to normalization and sign
    double dot = 0.0, nv = 0.0, ns = 0.0;
    for (int i = 0; i < n; ++i) {
      const double s = std::sin(k * M_PI * (i + 1) / (n + 1));
      dot += s * vectors[k - 1][i];
      nv += vectors[k - 1][i] * vectors[k - 1][i];
      ns += s * s;
    }
    CHECK(std::fabs(std::fabs(dot) / std::sqrt(nv * ns) - 1.0) < 1e-10);
  }
}

}  // TEST_SUITE
