#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pertpade/exact_basis.hpp"

namespace pertpade {

using RealFunction = std::function<double(double)>;

/// A real potential on the line or on the radial half-line (l = 0).
///
/// Built-ins carry extra metadata where they have it in closed form: the
/// second derivative, the Coulomb strength of the r -> 0 leading term and the
/// regular remainder V(r) + alpha / r, kinks (breakpoints), evenness about 0,
/// and the location of the minimum.
struct Potential {
  std::string name;
  DomainKind domain = DomainKind::Line;
  RealFunction value;
  std::map<std::string, double> params;

  std::optional<RealFunction> second_derivative;
  std::optional<double> coulomb_strength;
  std::optional<RealFunction> coulomb_remainder;
  std::vector<double> breakpoints;
  bool even = false;
  std::optional<double> minimum;
  // Characteristic length for default grid domains.
  double length_scale = 1.0;

  double operator()(double x) const { return value(x); }
  std::string describe() const;
};

namespace potentials {

/// V(x) = -beta (beta + 1) sech^2 x
Potential poschl_teller(double beta);
/// V(r) = -V0 exp(-r/r0) / (1 - exp(-r/r0))
Potential hulthen(double depth, double range);
/// V(r) = coefficient * r^exponent (the r^{2/3} example by default)
Potential power_law(double exponent = 2.0 / 3.0, double coefficient = 1.0);
/// (x - L)^2 for x > L, 0 for |x| < L, (x + L)^2 for x < -L
Potential flat_bottom(double half_width);
/// V(x) = c x^2
Potential harmonic(double curvature);
/// V(r) = -alpha / r
Potential coulomb(double alpha);
/// V(r) = k r + b
Potential linear(double slope, double intercept);

/// Lookup by identifier: "poschl-teller" (beta), "hulthen" (V0, r0),
/// "power" (exponent, coefficient), "flat-bottom" (L), "harmonic" (c),
/// "coulomb" (alpha), "linear" (k, b). Missing params take defaults of the
/// worked examples. Throws Error(Config) for unknown names or parameters.
Potential by_name(const std::string& name, const std::map<std::string, double>& params);

std::vector<std::string> builtin_names();

}  // namespace potentials

/// H(lambda) = (T + U) + lambda (V - U): the exactly solvable basis defining
/// H0 and the perturbation Delta = V - U.
struct AuxiliarySplit {
  struct Provenance {
    std::string scheme;  // taylor / laurent / fit / explicit / identity
    std::optional<double> expansion_point;
    std::optional<double> energy;
    std::optional<std::pair<double, double>> fit_range;
    std::map<std::string, double> parameters;
  };

  Potential target;
  ExactBasis basis;
  RealFunction delta;
  Provenance provenance;

  double auxiliary(double x) const { return basis.potential(x); }
  /// Parity selection applies: both V and U even about the basis center 0.
  bool parity_even() const;
};

enum class Side { Positive, Negative };

enum class VertexPlacement {
  Origin,     // U(x) = 1/2 V''(x_E) x^2 + const
  Expansion,  // vertex kept at x_E - V'(x_E) / V''(x_E)
};

struct TaylorOptions {
  std::optional<double> constant;  // defaults to V(x_E)
  VertexPlacement vertex = VertexPlacement::Origin;
  double kinetic_scale = 1.0;
  // Outward scan limit for the root search, in units of length_scale.
  double search_extent = 50.0;
};

/// Second-order expansion at the point x_E where V(x_E) = E on the requested
/// side of the minimum, giving an oscillator auxiliary.
AuxiliarySplit taylor_auxiliary(const Potential& v, double energy, Side side = Side::Positive,
                                const TaylorOptions& options = {});

/// Coulomb auxiliary U = -alpha / r from the leading Laurent term at r = 0.
AuxiliarySplit laurent_auxiliary(const Potential& v, double kinetic_scale = 1.0);

enum class FitFamily { Linear, Quadratic };

struct FitOptions {
  int npts = 2001;
  double kinetic_scale = 1.0;
  AiryZeros zeros = AiryZeros::Exact;
};

/// Least-squares fit of a linear (k r + b) or quadratic (c (x - x0)^2 + d)
/// auxiliary to V on `npts` uniform samples of [lo, hi].
AuxiliarySplit fit_auxiliary(const Potential& v, FitFamily family, double lo, double hi,
                             const FitOptions& options = {});

/// Uses `basis` as given.
AuxiliarySplit explicit_auxiliary(const Potential& v, const ExactBasis& basis);

/// The basis potential taken as the target: Delta is identically zero.
AuxiliarySplit identity_split(const ExactBasis& basis);

/// V''(x): closed form when the potential has one, otherwise a 5-point
/// central difference with h = max(1e-4, 1e-4 |x|) (one-sided next to r = 0).
double second_derivative(const Potential& v, double x);

}  // namespace pertpade
