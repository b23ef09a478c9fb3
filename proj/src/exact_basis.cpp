#include "pertpade/exact_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pertpade/errors.hpp"

namespace pertpade {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kPanelPoints = 16;
constexpr int kCachedAiryLevels = 128;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::Domain, std::string(what) + " must be positive and finite");
  }
}

}  // namespace

std::string to_string(BasisFamily family) {
  switch (family) {
    case BasisFamily::Oscillator:
      return "oscillator";
    case BasisFamily::CoulombRadial:
      return "coulomb";
    case BasisFamily::LinearRadial:
      return "linear";
  }
  return "unknown";
}

ExactBasis ExactBasis::oscillator(double curvature, double center, double offset,
                                  double kinetic_scale) {
  require_positive(curvature, "oscillator curvature");
  require_positive(kinetic_scale, "kinetic scale");
  ExactBasis b;
  b.family_ = BasisFamily::Oscillator;
  b.curvature_ = curvature;
  b.center_ = center;
  b.offset_ = offset;
  b.kinetic_scale_ = kinetic_scale;
  return b;
}

ExactBasis ExactBasis::coulomb(double alpha, double kinetic_scale) {
  require_positive(alpha, "coulomb alpha");
  require_positive(kinetic_scale, "kinetic scale");
  ExactBasis b;
  b.family_ = BasisFamily::CoulombRadial;
  b.alpha_ = alpha;
  b.kinetic_scale_ = kinetic_scale;
  return b;
}

ExactBasis ExactBasis::linear(double slope, double intercept, AiryZeros zeros,
                              double kinetic_scale) {
  require_positive(slope, "linear slope");
  require_positive(kinetic_scale, "kinetic scale");
  ExactBasis b;
  b.family_ = BasisFamily::LinearRadial;
  b.slope_ = slope;
  b.intercept_ = intercept;
  b.zeros_ = zeros;
  b.kinetic_scale_ = kinetic_scale;
  auto levels = std::make_shared<std::vector<AiryLevel>>();
  for (int n = 1; n <= kCachedAiryLevels; ++n) levels->push_back({b.airy_level(n), b.airy_norm(n)});
  b.airy_levels_ = std::move(levels);
  return b;
}

DomainKind ExactBasis::domain() const {
  return family_ == BasisFamily::Oscillator ? DomainKind::Line : DomainKind::RadialHalfLine;
}

double ExactBasis::epsilon() const { return std::pow(curvature_ / kinetic_scale_, 0.25); }

double ExactBasis::potential(double x) const {
  switch (family_) {
    case BasisFamily::Oscillator:
      return curvature_ * (x - center_) * (x - center_) + offset_;
    case BasisFamily::CoulombRadial:
      return -alpha_ / x;
    case BasisFamily::LinearRadial:
      return slope_ * x + intercept_;
  }
  return 0.0;
}

void ExactBasis::require_level(int n) const {
  if (n < index_origin()) {
    throw Error(ErrorKind::Domain, "level " + std::to_string(n) + " below index origin " +
                                       std::to_string(index_origin()) + " of " +
                                       to_string(family_) + " basis");
  }
}

double ExactBasis::airy_level(int n) const {
  if (airy_levels_ && n <= static_cast<int>(airy_levels_->size())) return (*airy_levels_)[n - 1].zero;
  return zeros_ == AiryZeros::Exact ? airy_zero(n) : airy_zero_asymptotic(n);
}

double ExactBasis::airy_norm(int n) const {
  if (airy_levels_ && n <= static_cast<int>(airy_levels_->size())) return (*airy_levels_)[n - 1].norm;
  const double s = std::cbrt(slope_ / kinetic_scale_);
  const double a = airy_level(n);
  const AiryValue at_wall = airy(-a);
  const double norm_sq = zeros_ == AiryZeros::Exact
                             ? at_wall.ai_prime * at_wall.ai_prime
                             : a * at_wall.ai * at_wall.ai + at_wall.ai_prime * at_wall.ai_prime;
  return std::sqrt(s / norm_sq);
}

double ExactBasis::eigenvalue(int n) const {
  require_level(n);
  switch (family_) {
    case BasisFamily::Oscillator:
      return (2.0 * n + 1.0) * std::sqrt(curvature_ * kinetic_scale_) + offset_;
    case BasisFamily::CoulombRadial:
      return -alpha_ * alpha_ / (4.0 * kinetic_scale_ * n * n);
    case BasisFamily::LinearRadial:
      return std::cbrt(kinetic_scale_ * slope_ * slope_) * airy_level(n) + intercept_;
  }
  return 0.0;
}

double ExactBasis::reduced(int n, double x) const {
  require_level(n);
  switch (family_) {
    case BasisFamily::Oscillator: {
      std::vector<double> phi(static_cast<std::size_t>(n) + 1);
      const double eps = epsilon();
      hermite_functions(eps * (x - center_), phi);
      return std::sqrt(eps) * phi.back();
    }
    case BasisFamily::CoulombRadial: {
      if (x < 0.0) throw Error(ErrorKind::Domain, "radial coordinate must be >= 0");
      // hydrogenic R_n0 with Z = alpha / 2D:
      // u = r * 2 (Z/n)^{3/2} e^{-Zr/n} L_{n-1}^{(1)}(2Zr/n) / n
      const double z_eff = alpha_ / (2.0 * kinetic_scale_);
      const double kappa = z_eff / n;
      return x * 2.0 * kappa * std::sqrt(kappa) * std::exp(-kappa * x) *
             laguerre(n - 1, 1.0, 2.0 * kappa * x) / n;
    }
    case BasisFamily::LinearRadial: {
      if (x < 0.0) throw Error(ErrorKind::Domain, "radial coordinate must be >= 0");
      const double s = std::cbrt(slope_ / kinetic_scale_);
      return airy_norm(n) * airy_ai(s * x - airy_level(n));
    }
  }
  return 0.0;
}

void ExactBasis::reduced_all(double x, std::span<double> out) const {
  if (out.empty()) return;
  if (family_ == BasisFamily::Oscillator) {
    const double eps = epsilon();
    hermite_functions(eps * (x - center_), out);
    const double s = std::sqrt(eps);
    for (double& v : out) v *= s;
    return;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = reduced(index_origin() + static_cast<int>(i), x);
  }
}

double ExactBasis::eigenfunction(int n, double x) const {
  require_level(n);
  switch (family_) {
    case BasisFamily::Oscillator:
      return reduced(n, x);
    case BasisFamily::CoulombRadial: {
      if (x < 0.0) throw Error(ErrorKind::Domain, "radial coordinate must be >= 0");
      const double z_eff = alpha_ / (2.0 * kinetic_scale_);
      const double kappa = z_eff / n;
      return 2.0 * kappa * std::sqrt(kappa) * std::exp(-kappa * x) *
             kummer_1f1(1.0 - n, 2.0, 2.0 * kappa * x) / std::sqrt(4.0 * kPi);
    }
    case BasisFamily::LinearRadial: {
      if (x < 0.0) throw Error(ErrorKind::Domain, "radial coordinate must be >= 0");
      if (x == 0.0 && zeros_ == AiryZeros::Exact) {
        // psi(0) = u'(0) / sqrt(4 pi) = C s Ai'(-a_n) / sqrt(4 pi)
        const double s = std::cbrt(slope_ / kinetic_scale_);
        const double aip = airy_ai_prime(-airy_level(n));
        return std::sqrt(s) / std::fabs(aip) * s * aip / std::sqrt(4.0 * kPi);
      }
      if (x == 0.0) throw Error(ErrorKind::Domain, "asymptotic linear level is singular at r = 0");
      return reduced(n, x) / (x * std::sqrt(4.0 * kPi));
    }
  }
  return 0.0;
}

double ExactBasis::decay_scale(int m, int n) const {
  require_level(m);
  require_level(n);
  const int top = std::max(m, n);
  switch (family_) {
    case BasisFamily::Oscillator:
      return epsilon();
    case BasisFamily::CoulombRadial:
      return alpha_ / (2.0 * kinetic_scale_ * top);
    case BasisFamily::LinearRadial:
      return std::cbrt(slope_ / kinetic_scale_);
  }
  return 1.0;
}

double ExactBasis::support_extent(int n) const {
  require_level(n);
  switch (family_) {
    case BasisFamily::Oscillator:
      return (std::sqrt(2.0 * n + 1.0) + 8.0) / epsilon();
    case BasisFamily::CoulombRadial: {
      // u_n ~ t^n e^{-t} with t = kappa r; push t until the envelope is
      // e^-66 below its peak at t = n.
      const double kappa = decay_scale(n, n);
      double t = n + 70.0;
      for (int it = 0; it < 20; ++it) t = n + 66.0 + n * std::log(t / n);
      return t / kappa;
    }
    case BasisFamily::LinearRadial:
      return (airy_level(n) + 8.0) / std::cbrt(slope_ / kinetic_scale_);
  }
  return 1.0;
}

std::string ExactBasis::describe() const {
  std::ostringstream os;
  os.precision(15);
  switch (family_) {
    case BasisFamily::Oscillator:
      os << "oscillator(c=" << curvature_ << ";x0=" << center_ << ";V_off=" << offset_;
      break;
    case BasisFamily::CoulombRadial:
      os << "coulomb(alpha=" << alpha_;
      break;
    case BasisFamily::LinearRadial:
      os << "linear(k=" << slope_ << ";b=" << intercept_
         << ";zeros=" << (zeros_ == AiryZeros::Exact ? "exact" : "asymptotic");
      break;
  }
  os << ";D=" << kinetic_scale_ << ")";
  return os.str();
}

QuadratureRule composite_legendre(double a, double b, int npts,
                                  std::span<const double> breakpoints) {
  if (!(b > a)) throw Error(ErrorKind::Domain, "composite_legendre: empty interval");
  static const QuadratureRule panel = gauss_legendre(kPanelPoints);
  std::vector<double> edges{a};
  for (double x : breakpoints) {
    if (x > a && x < b) edges.push_back(x);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());

  const int total_panels = std::max(1, npts / kPanelPoints);
  const double width = b - a;
  QuadratureRule rule;
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const double lo = edges[s];
    const double hi = edges[s + 1];
    const int panels =
        std::max(1, static_cast<int>(std::lround(total_panels * (hi - lo) / width)));
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = lo + (p + 0.5) * h;
      for (std::size_t q = 0; q < panel.size(); ++q) {
        rule.nodes.push_back(mid + 0.5 * h * panel.nodes[q]);
        rule.weights.push_back(0.5 * h * panel.weights[q]);
      }
    }
  }
  return rule;
}

QuadratureRule quadrature_rule(const ExactBasis& basis, int m, int n, int npts,
                               std::span<const double> breakpoints) {
  if (npts < 1) throw Error(ErrorKind::Domain, "quadrature_rule: npts must be >= 1");
  const int top = std::max(m, n);
  const double extent = basis.support_extent(top);

  if (!breakpoints.empty()) {
    if (basis.domain() == DomainKind::Line) {
      return composite_legendre(basis.center() - extent, basis.center() + extent, npts,
                                breakpoints);
    }
    return composite_legendre(0.0, extent, npts, breakpoints);
  }

  switch (basis.family()) {
    case BasisFamily::Oscillator: {
      QuadratureRule rule = gauss_hermite(npts);
      const double eps = basis.epsilon();
      for (std::size_t i = 0; i < rule.size(); ++i) {
        rule.nodes[i] = basis.center() + rule.nodes[i] / eps;
        rule.weights[i] /= eps;
      }
      return rule;
    }
    case BasisFamily::CoulombRadial: {
      QuadratureRule rule = gauss_laguerre(npts);
      const double rate = 2.0 * basis.decay_scale(m, n);
      for (std::size_t i = 0; i < rule.size(); ++i) {
        rule.nodes[i] /= rate;
        rule.weights[i] /= rate;
      }
      return rule;
    }
    case BasisFamily::LinearRadial: {
      // First panel mapped r = r1 tau^3 so powers r^{p/3} at the wall become
      // polynomial in tau; uniform panels beyond.
      static const QuadratureRule panel = gauss_legendre(kPanelPoints);
      const double r1 = std::min(extent, 1.0 / basis.decay_scale(top, top));
      QuadratureRule rule;
      for (std::size_t q = 0; q < panel.size(); ++q) {
        const double tau = 0.5 * (panel.nodes[q] + 1.0);
        rule.nodes.push_back(r1 * tau * tau * tau);
        rule.weights.push_back(0.5 * panel.weights[q] * 3.0 * r1 * tau * tau);
      }
      if (extent > r1) {
        QuadratureRule rest =
            composite_legendre(r1, extent, std::max(kPanelPoints, npts - kPanelPoints));
        rule.nodes.insert(rule.nodes.end(), rest.nodes.begin(), rest.nodes.end());
        rule.weights.insert(rule.weights.end(), rest.weights.begin(), rest.weights.end());
      }
      return rule;
    }
  }
  return {};
}

}  // namespace pertpade
