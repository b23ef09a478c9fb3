#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pertpade/perturbation.hpp"

namespace pertpade {

// P(lambda) / Q(lambda) with den[0] = 1. L and M are the degrees actually
// built; they differ from the requested pair when a fallback was taken.
struct PadeApproximant {
  int L = 0;
  int M = 0;
  int requested_L = 0;
  int requested_M = 0;
  std::vector<double> num;
  std::vector<double> den;
  bool residual_ok = true;
  std::string fallback;  // empty, "[L-1/M]" or "[L/M-1]"
  double condition = 1.0;
};

// Padé from the first L + M + 1 Taylor coefficients. The lambda axis is
// rescaled to balance coefficient growth before the Hankel solve; a condition
// number above 1e12 triggers the [L-1/M] then [L/M-1] fallbacks, and
// Error(PadeDegenerate) when both are singular.
PadeApproximant pade_from_series(std::span<const double> coeffs, int L, int M);

// Error(PoleEvaluation) when |Q(lambda)| <= 1e-12 sum_j |q_j lambda^j|.
double pade_eval(const PadeApproximant& p, double lambda);

// Taylor coefficients 0..count-1 of P/Q.
std::vector<double> pade_taylor(const PadeApproximant& p, int count);

struct Pole {
  std::complex<double> location;
  std::complex<double> residue;
};

// Roots of Q from the companion matrix, Newton polished, with residues P/Q'.
std::vector<Pole> poles(const PadeApproximant& p);

struct LadderRung {
  int L = 0;
  int M = 0;
  bool ok = false;
  double value = 0.0;
  std::string note;
};

struct ContinuationResult {
  double value_at_one = 0.0;
  int L = 0;
  int M = 0;
  std::vector<LadderRung> ladder;
  double spread = 0.0;
  std::vector<Pole> pole_warnings;
  PadeApproximant approximant;
  std::string note;
};

struct ContinuationOptions {
  // defaults to the top near-diagonal rung
  std::optional<std::pair<int, int>> requested;
  double lambda = 1.0;
  double pole_radius = 1.25;
};

// Near-diagonal ladder [ceil(k/2)/floor(k/2)], k = 2..N, evaluated at lambda.
ContinuationResult continue_to_one(std::span<const double> coeffs, const ContinuationOptions& options = {});

struct Target {
  // the energy series, or basis coefficient `coefficient` (a position)
  std::optional<int> coefficient;
};

ContinuationResult continue_to_one(const PerturbationSeries& series, Target target = {},
                                   const ContinuationOptions& options = {});

struct StateContinuation {
  std::vector<double> coeffs;  // unit norm
  double normalizer = 1.0;     // norm before renormalizing
  std::vector<int> polynomial_fallbacks;
};

// [L/M] applied to every basis coefficient series separately.
StateContinuation continue_state(const PerturbationSeries& series, int L, int M, double lambda = 1.0);

}  // namespace pertpade
