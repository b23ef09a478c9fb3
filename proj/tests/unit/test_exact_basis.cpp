#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "pertpade/errors.hpp"
#include "pertpade/exact_basis.hpp"

using namespace pertpade;

namespace {

std::vector<ExactBasis> sample_bases() {
  return {ExactBasis::oscillator(1.0), ExactBasis::oscillator(420.0, 0.3, -420.0),
          ExactBasis::coulomb(6.0), ExactBasis::coulomb(1.0, 0.5),
          ExactBasis::linear(0.331619, 1.10428), ExactBasis::linear(1.0, 0.0, AiryZeros::Asymptotic),
          ExactBasis::linear(0.2184, 2.54714, AiryZeros::Exact, 4.0)};
}

int quadrature_points(const ExactBasis& b) {
  switch (b.family()) {
    case BasisFamily::Oscillator: return 60;
    case BasisFamily::CoulombRadial: return 200;
    case BasisFamily::LinearRadial: return 600;
  }
  return 0;
}

}  // namespace

TEST_SUITE("exact-bases") {

TEST_CASE("eigenvalue examples") {
  CHECK(ExactBasis::oscillator(1.0).eigenvalue(0) == doctest::Approx(1.0));
  CHECK(ExactBasis::coulomb(6.0).eigenvalue(1) == doctest::Approx(-9.0));
  CHECK(ExactBasis::oscillator(4.0, 0.0, -2.0).eigenvalue(1) == doctest::Approx(4.0));
  CHECK_THROWS_AS(ExactBasis::coulomb(6.0).eigenvalue(0), Error);
  CHECK_THROWS_AS(ExactBasis::linear(1.0, 0.0).eigenvalue(0), Error);

  // linear levels: (D k^2)^{1/3} |a_n| + b
  const auto lin = ExactBasis::linear(2.0, 0.5, AiryZeros::Exact, 3.0);
  const double a3 = -boost::math::airy_ai_zero<double>(3);
  CHECK(lin.eigenvalue(3) == doctest::Approx(std::cbrt(3.0 * 4.0) * a3 + 0.5).epsilon(1e-13));
}

TEST_CASE("eigenfunction examples") {
  const auto osc = ExactBasis::oscillator(1.0);
  CHECK(osc.eigenfunction(0, 0.0) == doctest::Approx(std::pow(std::numbers::pi, -0.25)));
  CHECK(std::fabs(osc.eigenfunction(1, 0.0)) < 1e-15);

  // closed form with 1F1 from an independent implementation
  const auto cb = ExactBasis::coulomb(6.0);
  for (int n = 1; n <= 5; ++n) {
    for (double r : {0.0, 0.3, 1.0, 4.0}) {
      const double kappa = 3.0 / n;
      const double ref = 2.0 * std::pow(kappa, 1.5) * std::exp(-kappa * r) *
                         boost::math::hypergeometric_1F1(1.0 - n, 2.0, 2.0 * kappa * r) /
                         std::sqrt(4.0 * std::numbers::pi);
      CHECK(cb.eigenfunction(n, r) == doctest::Approx(ref).epsilon(1e-12).scale(1e-3));
    }
  }
  CHECK(cb.eigenfunction(1, 1.0) == doctest::Approx(0.14595652).epsilon(1e-8));
  CHECK_THROWS_AS(cb.eigenfunction(1, -0.1), Error);
  CHECK_THROWS_AS(ExactBasis::linear(1, 0).eigenfunction(1, -1.0), Error);
}

TEST_CASE("quadrature decay scales") {
  CHECK(ExactBasis::coulomb(6.0).decay_scale(1, 2) == doctest::Approx(1.5));
  // Ai(xi) at xi = 8 past the turning point is below 1e-12 of its scale
  const auto lin = ExactBasis::linear(0.33, 0.0);
  const double s = std::cbrt(0.33);
  for (int n : {1, 5, 12}) {
    CHECK(lin.support_extent(n) * s + 1e-12 >= boost::math::airy_ai_zero<double>(n) * -1.0 + 8.0);
  }
  CHECK(boost::math::airy_ai(8.0) < 1e-7);
}

TEST_CASE("orthonormality for m, n <= 12") {
  for (const auto& basis : sample_bases()) {
    CAPTURE(basis.describe());
    const int o = basis.index_origin();
    double worst = 0.0;
    for (int m = o; m <= o + 12; ++m) {
      for (int n = m; n <= o + 12; ++n) {
        const auto rule = quadrature_rule(basis, m, n, quadrature_points(basis));
        double s = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
          s += rule.weights[i] * basis.reduced(m, rule.nodes[i]) * basis.reduced(n, rule.nodes[i]);
        }
        worst = std::max(worst, std::fabs(s - (m == n ? 1.0 : 0.0)));
      }
    }
    // the asymptotic Airy levels are not eigenfunctions of one operator, so
    // they are not mutually orthogonal; only their norms are exact
    if (basis.family() == BasisFamily::LinearRadial && basis.airy_zeros() == AiryZeros::Asymptotic) {
      CHECK(worst < 5e-2);
    } else {
      CHECK(worst < 1e-8);
    }
  }
}

TEST_CASE("node count") {
  for (const auto& basis : sample_bases()) {
    CAPTURE(basis.describe());
    const int o = basis.index_origin();
    for (int n = o; n <= o + 8; ++n) {
      const double extent = basis.support_extent(n);
      const double lo = basis.domain() == DomainKind::Line ? basis.center() - extent : 0.0;
      const double hi = basis.domain() == DomainKind::Line ? basis.center() + extent : extent;
      const int samples = 20000;
      double peak = 0.0;
      std::vector<double> vals(samples);
      for (int i = 0; i < samples; ++i) {
        vals[i] = basis.reduced(n, lo + (hi - lo) * (i + 0.5) / samples);
        peak = std::max(peak, std::fabs(vals[i]));
      }
      int changes = 0;
      double last = 0.0;
      for (double v : vals) {
        if (std::fabs(v) < 1e-9 * peak) continue;  // ignore the far tails
        if (last != 0.0 && (v > 0) != (last > 0)) ++changes;
        last = v;
      }
      CHECK(changes == n - o);
    }
  }
}

TEST_CASE("oscillator spacing is 2 sqrt(c D)") {
  const auto osc = ExactBasis::oscillator(3.0, 1.0, 0.5, 2.0);
  for (int n = 0; n < 20; ++n) {
    CHECK(osc.eigenvalue(n + 1) - osc.eigenvalue(n) == doctest::Approx(2.0 * std::sqrt(6.0)).epsilon(1e-14));
  }
}

TEST_CASE("finite-difference residual of H0") {
  for (const auto& basis : sample_bases()) {
    if (basis.family() == BasisFamily::LinearRadial && basis.airy_zeros() == AiryZeros::Asymptotic) continue;
    CAPTURE(basis.describe());
    const int o = basis.index_origin();
    const double d = basis.kinetic_scale();
    for (int n = o; n <= o + 6; ++n) {
      const double extent = basis.support_extent(n);
      const double lo = basis.domain() == DomainKind::Line ? basis.center() - 0.6 * extent : 0.05 * extent;
      const double hi = basis.domain() == DomainKind::Line ? basis.center() + 0.6 * extent : 0.6 * extent;
      const double h = 1e-3 * extent;
      double worst = 0.0, scale = 0.0;
      for (int i = 0; i <= 400; ++i) {
        const double x = lo + (hi - lo) * i / 400.0;
        auto u = [&](double y) { return basis.reduced(n, y); };
        const double upp = (-u(x + 2 * h) + 16 * u(x + h) - 30 * u(x) + 16 * u(x - h) - u(x - 2 * h)) / (12 * h * h);
        const double lhs = -d * upp + basis.potential(x) * u(x);
        const double rhs = basis.eigenvalue(n) * u(x);
        worst = std::max(worst, std::fabs(lhs - rhs));
        scale = std::max(scale, std::fabs(rhs));
      }
      CHECK(worst <= 1e-4 * scale);
    }
  }
}

}
