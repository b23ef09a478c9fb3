#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pertpade/special_functions.hpp"

namespace pertpade {

enum class DomainKind { Line, RadialHalfLine };

enum class BasisFamily { Oscillator, CoulombRadial, LinearRadial };

std::string to_string(BasisFamily family);

// Linear-potential levels: exact Ai zeros, or the leading asymptotic formula.
enum class AiryZeros { Exact, Asymptotic };

/// An exactly solvable auxiliary Hamiltonian H0 = -D d^2 + U with
/// D = hbar^2 / 2mu (the kinetic scale, 1 by default).
///
///   Oscillator     U(x) = c (x - x0)^2 + V_off     levels n = 0, 1, ...
///   CoulombRadial  U(r) = -alpha / r               levels n = 1, 2, ...
///   LinearRadial   U(r) = k r + b                  levels n = 1, 2, ...
///
/// Radial families are l = 0 and are handled through the reduced function
/// u(r) = r psi(r), normalized as int_0^inf u^2 dr = 1. eigenfunction()
/// returns the full psi(r) = u(r) / (sqrt(4 pi) r).
class ExactBasis {
 public:
  static ExactBasis oscillator(double curvature, double center = 0.0, double offset = 0.0,
                               double kinetic_scale = 1.0);
  static ExactBasis coulomb(double alpha, double kinetic_scale = 1.0);
  static ExactBasis linear(double slope, double intercept, AiryZeros zeros = AiryZeros::Exact,
                           double kinetic_scale = 1.0);

  BasisFamily family() const { return family_; }
  DomainKind domain() const;
  int index_origin() const { return family_ == BasisFamily::Oscillator ? 0 : 1; }

  double curvature() const { return curvature_; }
  double center() const { return center_; }
  double offset() const { return offset_; }
  double alpha() const { return alpha_; }
  double slope() const { return slope_; }
  double intercept() const { return intercept_; }
  double kinetic_scale() const { return kinetic_scale_; }
  AiryZeros airy_zeros() const { return zeros_; }

  /// Oscillator length scale inverse, epsilon = (c / D)^{1/4}.
  double epsilon() const;

  /// The auxiliary potential U implied by this basis.
  double potential(double x) const;

  double eigenvalue(int n) const;

  /// Normalized eigenfunction; full psi(r) for radial families.
  double eigenfunction(int n, double x) const;

  /// psi(x) on the line, u(r) = r psi(r) on the half-line. All matrix
  /// elements are plain 1D integrals of these.
  double reduced(int n, double x) const;

  /// reduced() for levels index_origin() .. index_origin() + out.size() - 1.
  void reduced_all(double x, std::span<double> out) const;

  /// Slowest exponential decay rate of the pair (Coulomb); the length scale
  /// used for quadrature of psi_m psi_n.
  double decay_scale(int m, int n) const;

  /// Extent past which every level up to n is negligible (< ~1e-13 of its
  /// peak): measured from center() on the line, from 0 on the half-line.
  double support_extent(int n) const;

  std::string describe() const;

 private:
  ExactBasis() = default;
  void require_level(int n) const;
  double airy_level(int n) const;  // |a_n| for the selected zero mode
  double airy_norm(int n) const;   // C_n in u_n = C_n Ai(s r - a_n)

  struct AiryLevel {
    double zero;
    double norm;
  };

  BasisFamily family_ = BasisFamily::Oscillator;
  double curvature_ = 1.0;
  double center_ = 0.0;
  double offset_ = 0.0;
  double alpha_ = 0.0;
  double slope_ = 0.0;
  double intercept_ = 0.0;
  double kinetic_scale_ = 1.0;
  AiryZeros zeros_ = AiryZeros::Exact;
  // first levels of the linear family, filled at construction
  std::shared_ptr<const std::vector<AiryLevel>> airy_levels_;
};

/// Nodes/weights adapted to the decay scale of psi_m psi_n:
/// Gauss-Hermite scaled by epsilon and shifted by the center (oscillator),
/// Gauss-Laguerre scaled by the slower decay rate (Coulomb), cubic-mapped
/// plus uniform Gauss-Legendre panels (linear).
///
/// If `breakpoints` is non-empty the rule is composite Gauss-Legendre on the
/// basis support split at those points, which keeps piecewise-defined
/// perturbations integrable to high accuracy.
QuadratureRule quadrature_rule(const ExactBasis& basis, int m, int n, int npts,
                               std::span<const double> breakpoints = {});

/// Composite Gauss-Legendre over [a, b] split at `breakpoints`, about `npts`
/// nodes in total, panels of 16 points.
QuadratureRule composite_legendre(double a, double b, int npts,
                                  std::span<const double> breakpoints = {});

}  // namespace pertpade
