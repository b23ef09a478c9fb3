#include "pertpade/perturbation.hpp"

#include <algorithm>
#include <cmath>

#include "pertpade/errors.hpp"

namespace pertpade {

namespace {

// Neumaier summation, also tracking the largest partial sum
struct Accumulator {
  double sum = 0.0;
  double carry = 0.0;
  double peak = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
    peak = std::max(peak, std::fabs(sum + carry));
  }
  double value() const { return sum + carry; }
};

}  // namespace

double PerturbationSeries::max_condition() const {
  double c = 1.0;
  for (double v : condition) c = std::max(c, v);
  return c;
}

std::vector<double> PerturbationSeries::coefficient_series(int m) const {
  std::vector<double> out(state_coeffs.size());
  for (std::size_t k = 0; k < state_coeffs.size(); ++k) out[k] = state_coeffs[k][m];
  return out;
}

PerturbationSeries rs_expand(std::span<const double> delta, std::span<const double> energies,
                             int position, int order) {
  const int dim = static_cast<int>(energies.size());
  if (delta.size() != static_cast<std::size_t>(dim) * dim) {
    throw Error(ErrorKind::Domain, "matrix and energy list sizes disagree");
  }
  if (order < 1) throw Error(ErrorKind::Domain, "order must be >= 1");
  if (position < 0) throw Error(ErrorKind::Domain, "negative level position");
  if (position >= dim - 2) {
    throw Error(ErrorKind::TruncationTooSmall, "level position " + std::to_string(position) +
                                                   " needs dim > " + std::to_string(position + 2) +
                                                   ", have " + std::to_string(dim));
  }
  const double e0 = energies[position];
  std::vector<double> inv_gap(dim, 0.0);
  for (int m = 0; m < dim; ++m) {
    if (m == position) continue;
    const double gap = e0 - energies[m];
    if (std::fabs(gap) < 1e-10) {
      throw Error(ErrorKind::Degeneracy, "levels at positions " + std::to_string(position) + " and " +
                                             std::to_string(m) + " are degenerate");
    }
    inv_gap[m] = 1.0 / gap;
  }
  auto d = [&](int i, int j) { return delta[static_cast<std::size_t>(i) * dim + j]; };

  PerturbationSeries s;
  s.position = position;
  s.order = order;
  s.energy_coeffs.assign(order + 1, 0.0);
  s.state_coeffs.assign(order + 1, std::vector<double>(dim, 0.0));
  s.condition.assign(order + 1, 1.0);
  s.energy_coeffs[0] = e0;
  s.state_coeffs[0][position] = 1.0;

  std::vector<double> applied(dim);
  for (int k = 1; k <= order; ++k) {
    const auto& prev = s.state_coeffs[k - 1];
    Accumulator energy;
    for (int m = 0; m < dim; ++m) {
      if (prev[m] != 0.0) energy.add(d(position, m) * prev[m]);
    }
    s.energy_coeffs[k] = energy.value();
    if (energy.value() != 0.0) s.condition[k] = std::max(1.0, energy.peak / std::fabs(energy.value()));

    // (Delta c^(k-1))_m
    for (int m = 0; m < dim; ++m) {
      Accumulator acc;
      for (int j = 0; j < dim; ++j) {
        if (prev[j] != 0.0) acc.add(d(m, j) * prev[j]);
      }
      applied[m] = acc.value();
    }
    auto& cur = s.state_coeffs[k];
    for (int m = 0; m < dim; ++m) {
      if (m == position) continue;
      Accumulator acc;
      acc.add(applied[m]);
      for (int i = 1; i < k; ++i) acc.add(-s.energy_coeffs[i] * s.state_coeffs[k - i][m]);
      cur[m] = acc.value() * inv_gap[m];
    }
  }
  return s;
}

PerturbationSeries rs_expand(const DeltaMatrix& matrix, int n, int order) {
  const int position = n - matrix.basis.index_origin();
  if (position < 0) {
    throw Error(ErrorKind::Domain, "level " + std::to_string(n) + " below the basis index origin");
  }
  std::vector<double> energies(matrix.dim);
  for (int i = 0; i < matrix.dim; ++i) energies[i] = matrix.level_energy(i);
  PerturbationSeries s = rs_expand(matrix.entries, energies, position, order);
  s.level = n;
  s.basis = matrix.basis;
  return s;
}

double series_eval(std::span<const double> coeffs, double lambda) {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * lambda + *it;
  return v;
}

double series_eval(const PerturbationSeries& series, double lambda) {
  return series_eval(series.energy_coeffs, lambda);
}

double synthesize_state(const ExactBasis& basis, std::span<const double> coeffs, double x, bool reduced) {
  std::vector<double> u(coeffs.size());
  basis.reduced_all(x, u);
  double v = 0.0;
  for (std::size_t m = 0; m < coeffs.size(); ++m) v += coeffs[m] * u[m];
  if (reduced || basis.domain() == DomainKind::Line) return v;
  if (x == 0.0) {
    double total = 0.0;
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
      if (coeffs[m] != 0.0) total += coeffs[m] * basis.eigenfunction(basis.index_origin() + static_cast<int>(m), 0.0);
    }
    return total;
  }
  return v / (x * std::sqrt(4.0 * std::acos(-1.0)));
}

double state_series_eval(const PerturbationSeries& series, double lambda, double x) {
  const int dim = series.state_coeffs.empty() ? 0 : static_cast<int>(series.state_coeffs[0].size());
  std::vector<double> c(dim, 0.0);
  double power = 1.0;
  for (const auto& ck : series.state_coeffs) {
    for (int m = 0; m < dim; ++m) c[m] += power * ck[m];
    power *= lambda;
  }
  return synthesize_state(series.basis, c, x);
}

bool ConvergenceReport::stable() const {
  return std::all_of(entries.begin(), entries.end(), [](const StabilityEntry& e) { return e.ok; });
}

ConvergenceReport truncation_stability(const AuxiliarySplit& split, int dim, std::span<const int> levels,
                                       int order, double accuracy, double tolerance) {
  ConvergenceReport report;
  report.dim = dim;
  report.enlarged_dim = static_cast<int>(std::ceil(1.25 * dim));
  report.tolerance = tolerance;
  const DeltaMatrix base = build_delta_matrix(split, dim, accuracy);
  const DeltaMatrix big = build_delta_matrix(split, report.enlarged_dim, accuracy);
  for (int n : levels) {
    const auto a = rs_expand(base, n, order);
    const auto b = rs_expand(big, n, order);
    // coefficients that vanish by symmetry are compared on the scale of E^(0)
    const double floor = 1e-13 * std::max(1.0, std::fabs(a.energy_coeffs[0]));
    for (int k = 0; k <= order; ++k) {
      const double x = a.energy_coeffs[k], y = b.energy_coeffs[k];
      const double scale = std::max({std::fabs(x), std::fabs(y), floor});
      const double rel = std::fabs(x - y) / scale;
      report.entries.push_back({n, k, x, y, rel, rel < tolerance});
    }
  }
  return report;
}

}  // namespace pertpade
