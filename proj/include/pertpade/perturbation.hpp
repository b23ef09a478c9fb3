#pragma once

#include <span>
#include <vector>

#include "pertpade/matrix_elements.hpp"

namespace pertpade {

// Rayleigh-Schroedinger coefficients of one level, intermediate normalization:
// E(lambda) = sum_k energy_coeffs[k] lambda^k and
// psi(lambda) = sum_k lambda^k sum_m state_coeffs[k][m] psi_m.
struct PerturbationSeries {
  int level = 0;
  int position = 0;
  int order = 0;
  std::vector<double> energy_coeffs;
  std::vector<std::vector<double>> state_coeffs;
  ExactBasis basis = ExactBasis::oscillator(1.0);
  // max |partial sum| / |final| in each energy accumulation
  std::vector<double> condition;

  double max_condition() const;
  // series of basis coefficient m in lambda
  std::vector<double> coefficient_series(int m) const;
};

// Core recursion on a bare symmetric matrix (row-major dim x dim) and the
// unperturbed energies of its basis.
PerturbationSeries rs_expand(std::span<const double> delta, std::span<const double> energies,
                             int position, int order);

// Level n (counted from the basis index origin) of the split behind `matrix`.
PerturbationSeries rs_expand(const DeltaMatrix& matrix, int n, int order);

double series_eval(std::span<const double> coeffs, double lambda);
double series_eval(const PerturbationSeries& series, double lambda);

// sum_m coeffs[m] psi_m(x); radial bases give psi(r), or u(r) with `reduced`.
double synthesize_state(const ExactBasis& basis, std::span<const double> coeffs, double x,
                        bool reduced = false);

double state_series_eval(const PerturbationSeries& series, double lambda, double x);

struct StabilityEntry {
  int level;
  int order;
  double base;
  double enlarged;
  double rel_change;
  bool ok;
};

struct ConvergenceReport {
  int dim = 0;
  int enlarged_dim = 0;
  double tolerance = 0.0;
  std::vector<StabilityEntry> entries;

  bool stable() const;
};

// Rebuilds the matrix with dim grown by 25% and compares every E_n^(k).
ConvergenceReport truncation_stability(const AuxiliarySplit& split, int dim,
                                       std::span<const int> levels, int order,
                                       double accuracy = 1e-10, double tolerance = 1e-6);

}  // namespace pertpade
