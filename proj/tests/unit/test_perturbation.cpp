#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "pertpade/errors.hpp"
#include "pertpade/perturbation.hpp"

using namespace pertpade;

namespace {

// Coefficients of E_0(lambda) for -d^2 + x^2 + lambda x^4 from dense
// diagonalization at small lambda and a polynomial fit.
std::vector<double> quartic_dense_series() {
  const int big = 90, dim = 60;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(big, big);
  for (int n = 0; n + 1 < big; ++n) x(n, n + 1) = x(n + 1, n) = std::sqrt((n + 1) / 2.0);
  const Eigen::MatrixXd x2 = x * x;
  const Eigen::MatrixXd x4 = (x2 * x2).topLeftCorner(dim, dim);
  Eigen::MatrixXd h0 = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) h0(n, n) = 2 * n + 1;

  const int samples = 13, degree = 6;
  const double step = 1e-3;
  Eigen::MatrixXd design(samples, degree + 1);
  Eigen::VectorXd energy(samples);
  for (int i = 0; i < samples; ++i) {
    // lambda < 0 is unbounded below and the truncated matrix shows it
    const double lam = i * step;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h0 + lam * x4, Eigen::EigenvaluesOnly);
    energy(i) = es.eigenvalues()(0);
    for (int k = 0; k <= degree; ++k) design(i, k) = std::pow(lam / step, k);
  }
  Eigen::VectorXd c = design.colPivHouseholderQr().solve(energy);
  std::vector<double> out(degree + 1);
  for (int k = 0; k <= degree; ++k) out[k] = c(k) / std::pow(step, k);
  return out;
}

double binom_half(int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b *= (0.5 - i) / (i + 1);
  return b;
}

}  // namespace

TEST_SUITE("perturbation") {

TEST_CASE("identity split") {
  auto split = identity_split(ExactBasis::oscillator(3.0, 0.0, 1.0));
  auto m = build_delta_matrix(split, 12);
  for (int n = 0; n < 4; ++n) {
    auto s = rs_expand(m, n, 8);
    CHECK(s.energy_coeffs[0] == split.basis.eigenvalue(n));
    for (int k = 1; k <= 8; ++k) CHECK(s.energy_coeffs[k] == 0.0);
    CHECK(series_eval(s, 1.0) == s.energy_coeffs[0]);
    CHECK(state_series_eval(s, 0.7, 0.3) == doctest::Approx(split.basis.eigenfunction(n, 0.3)).epsilon(1e-14));
  }
}

TEST_CASE("quartic anharmonic oscillator") {
  Potential v;
  v.name = "quartic";
  v.domain = DomainKind::Line;
  v.value = [](double x) { return x * x + x * x * x * x; };
  v.even = true;
  auto split = explicit_auxiliary(v, ExactBasis::oscillator(1.0));
  auto m = build_delta_matrix(split, 60, 1e-12);
  auto s = rs_expand(m, 0, 4);
  CHECK(s.energy_coeffs[1] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(s.energy_coeffs[2] == doctest::Approx(-21.0 / 16).epsilon(1e-10));

  const auto dense = quartic_dense_series();
  CHECK(dense[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::fabs(s.energy_coeffs[1] / dense[1] - 1) < 1e-6);
  CHECK(std::fabs(s.energy_coeffs[2] / dense[2] - 1) < 1e-6);
}

TEST_CASE("two-level closed form through order 6") {
  // levels 0 and 1 coupled by d, two spectators far away keep dim > n + 2
  const double g = 1.7, d = 0.4;
  const int dim = 4;
  std::vector<double> delta(dim * dim, 0.0);
  delta[0 * dim + 1] = delta[1 * dim + 0] = d;
  std::vector<double> e{0.0, g, 50.0, 90.0};
  auto s = rs_expand(delta, e, 0, 6);
  for (int k = 0; k <= 6; ++k) {
    double exact = 0.0;
    if (k == 0) exact = 0.0;
    if (k % 2 == 0 && k > 0) exact = -(g / 2) * binom_half(k / 2) * std::pow(2 * d / g, k);
    CHECK(std::fabs(s.energy_coeffs[k] - exact) <= 1e-10);
  }
  CHECK(s.energy_coeffs[2] == doctest::Approx(-d * d / g).epsilon(1e-14));
  // first-order state: c_1 = Delta_10 / (E_0 - E_1)
  CHECK(s.state_coeffs[1][1] == doctest::Approx(-d / g).epsilon(1e-14));
  CHECK(s.state_coeffs[1][0] == 0.0);
}

TEST_CASE("state synthesis of the first order") {
  const double g = 2.0, d = 0.3;
  const int dim = 4;
  std::vector<double> delta(dim * dim, 0.0);
  delta[1] = delta[dim] = d;
  auto basis = ExactBasis::oscillator(1.0);
  std::vector<double> e{basis.eigenvalue(0), basis.eigenvalue(0) + g, 40, 60};
  auto s = rs_expand(delta, e, 0, 1);
  s.basis = basis;
  const double lam = 0.1, x = 0.4;
  CHECK(state_series_eval(s, lam, x) ==
        doctest::Approx(basis.eigenfunction(0, x) - lam * d / g * basis.eigenfunction(1, x)).epsilon(1e-14));
  CHECK(state_series_eval(s, 0.0, x) == doctest::Approx(basis.eigenfunction(0, x)));
}

TEST_CASE("series_eval") {
  std::vector<double> c{1, 0.5, -0.125, 1.0 / 16, -5.0 / 128};
  CHECK(series_eval(c, 1.0) == 1.3984375);
  CHECK(series_eval(c, 0.0) == 1.0);
}

TEST_CASE("second order lowers the ground state") {
  const auto pt = potentials::poschl_teller(20);
  std::vector<AuxiliarySplit> splits{
      taylor_auxiliary(pt, pt(0.0)), taylor_auxiliary(pt, pt(0.3)), taylor_auxiliary(pt, pt(0.55)),
      laurent_auxiliary(potentials::hulthen(2, 3)),
      fit_auxiliary(potentials::power_law(), FitFamily::Linear, 0, 20),
      explicit_auxiliary(potentials::flat_bottom(1), ExactBasis::oscillator(1.0))};
  for (const auto& sp : splits) {
    auto m = build_delta_matrix(sp, 20);
    auto s = rs_expand(m, sp.basis.index_origin(), 2);
    CHECK(s.energy_coeffs[2] <= 0.0);
  }
}

TEST_CASE("errors") {
  std::vector<double> delta(16, 0.1);
  std::vector<double> e{0, 1, 1 + 1e-12, 3};
  CHECK_THROWS_AS(rs_expand(delta, e, 1, 2), Error);
  try {
    rs_expand(delta, e, 1, 2);
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::Degeneracy);
  }
  std::vector<double> ok{0, 1, 2, 3};
  try {
    rs_expand(delta, ok, 2, 2);
    FAIL("expected truncation error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::TruncationTooSmall);
  }
}

TEST_CASE("truncation stability") {
  const auto pt = potentials::poschl_teller(20);
  auto split = taylor_auxiliary(pt, pt(0.0));
  std::vector<int> levels{0, 1, 2, 3};
  auto report = truncation_stability(split, 48, levels, 8);
  CHECK(report.enlarged_dim == 60);
  for (const auto& e : report.entries) {
    CAPTURE(e.level);
    CAPTURE(e.order);
    CHECK(e.rel_change < 1e-6);
  }
  CHECK(report.stable());
}

}
