#include "pertpade/potentials.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pertpade/errors.hpp"

namespace pertpade {

std::string Potential::describe() const {
  std::ostringstream os;
  os.precision(15);
  os << name << "(";
  bool first = true;
  for (const auto& [key, val] : params) {
    if (!first) os << ";";
    os << key << "=" << val;
    first = false;
  }
  os << ")";
  return os.str();
}

namespace potentials {

Potential poschl_teller(double beta) {
  if (!(beta > 0.0)) throw Error(ErrorKind::Domain, "poschl-teller beta must be positive");
  const double depth = beta * (beta + 1.0);
  Potential v;
  v.name = "poschl-teller";
  v.domain = DomainKind::Line;
  v.params = {{"beta", beta}};
  v.value = [depth](double x) {
    const double s = 1.0 / std::cosh(x);
    return -depth * s * s;
  };
  v.second_derivative = [depth](double x) {
    const double s = 1.0 / std::cosh(x);
    const double t = std::tanh(x);
    return 2.0 * depth * s * s * (1.0 - 3.0 * t * t);
  };
  v.even = true;
  v.minimum = 0.0;
  v.length_scale = 1.0;
  return v;
}

Potential hulthen(double depth, double range) {
  if (!(depth > 0.0) || !(range > 0.0)) {
    throw Error(ErrorKind::Domain, "hulthen V0 and r0 must be positive");
  }
  Potential v;
  v.name = "hulthen";
  v.domain = DomainKind::RadialHalfLine;
  v.params = {{"V0", depth}, {"r0", range}};
  v.value = [depth, range](double r) { return -depth / std::expm1(r / range); };
  v.coulomb_strength = depth * range;
  // V + V0 r0 / r = V0 [1/x - 1/(e^x - 1)], x = r / r0; the difference
  // cancels catastrophically near the origin, so switch to its series there.
  v.coulomb_remainder = [depth, range](double r) {
    const double x = r / range;
    if (x < 1e-3) return depth * (0.5 - x / 12.0 + x * x * x / 720.0);
    return depth * (1.0 / x - 1.0 / std::expm1(x));
  };
  v.length_scale = range;
  return v;
}

Potential power_law(double exponent, double coefficient) {
  Potential v;
  v.name = "power";
  v.domain = DomainKind::RadialHalfLine;
  v.params = {{"coefficient", coefficient}, {"exponent", exponent}};
  v.value = [exponent, coefficient](double r) { return coefficient * std::pow(r, exponent); };
  v.second_derivative = [exponent, coefficient](double r) {
    return coefficient * exponent * (exponent - 1.0) * std::pow(r, exponent - 2.0);
  };
  v.length_scale = 1.0;
  return v;
}

Potential flat_bottom(double half_width) {
  if (!(half_width >= 0.0)) throw Error(ErrorKind::Domain, "flat-bottom L must be >= 0");
  const double l = half_width;
  Potential v;
  v.name = "flat-bottom";
  v.domain = DomainKind::Line;
  v.params = {{"L", l}};
  v.value = [l](double x) {
    if (x > l) return (x - l) * (x - l);
    if (x < -l) return (x + l) * (x + l);
    return 0.0;
  };
  v.second_derivative = [l](double x) { return std::fabs(x) > l ? 2.0 : 0.0; };
  if (l > 0.0) v.breakpoints = {-l, l};
  v.even = true;
  v.minimum = 0.0;
  v.length_scale = std::max(1.0, l);
  return v;
}

Potential harmonic(double curvature) {
  if (!(curvature > 0.0)) throw Error(ErrorKind::Domain, "harmonic curvature must be positive");
  Potential v;
  v.name = "harmonic";
  v.domain = DomainKind::Line;
  v.params = {{"c", curvature}};
  v.value = [curvature](double x) { return curvature * x * x; };
  v.second_derivative = [curvature](double) { return 2.0 * curvature; };
  v.even = true;
  v.minimum = 0.0;
  v.length_scale = std::pow(curvature, -0.25);
  return v;
}

Potential coulomb(double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::Domain, "coulomb alpha must be positive");
  Potential v;
  v.name = "coulomb";
  v.domain = DomainKind::RadialHalfLine;
  v.params = {{"alpha", alpha}};
  v.value = [alpha](double r) { return -alpha / r; };
  v.coulomb_strength = alpha;
  v.coulomb_remainder = [](double) { return 0.0; };
  v.length_scale = 2.0 / alpha;
  return v;
}

Potential linear(double slope, double intercept) {
  if (!(slope > 0.0)) throw Error(ErrorKind::Domain, "linear slope must be positive");
  Potential v;
  v.name = "linear";
  v.domain = DomainKind::RadialHalfLine;
  v.params = {{"b", intercept}, {"k", slope}};
  v.value = [slope, intercept](double r) { return slope * r + intercept; };
  v.second_derivative = [](double) { return 0.0; };
  v.length_scale = std::pow(slope, -1.0 / 3.0);
  return v;
}

namespace {

double take(std::map<std::string, double>& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  const double v = it->second;
  params.erase(it);
  return v;
}

}  // namespace

Potential by_name(const std::string& name, const std::map<std::string, double>& params) {
  auto rest = params;
  Potential v;
  if (name == "poschl-teller") {
    v = poschl_teller(take(rest, "beta", 20.0));
  } else if (name == "hulthen") {
    const double depth = take(rest, "V0", 2.0);
    v = hulthen(depth, take(rest, "r0", 3.0));
  } else if (name == "power") {
    const double exponent = take(rest, "exponent", 2.0 / 3.0);
    v = power_law(exponent, take(rest, "coefficient", 1.0));
  } else if (name == "flat-bottom") {
    v = flat_bottom(take(rest, "L", 1.0));
  } else if (name == "harmonic") {
    v = harmonic(take(rest, "c", 1.0));
  } else if (name == "coulomb") {
    v = coulomb(take(rest, "alpha", 1.0));
  } else if (name == "linear") {
    const double slope = take(rest, "k", 1.0);
    v = linear(slope, take(rest, "b", 0.0));
  } else {
    throw Error(ErrorKind::Config, "unknown potential '" + name + "'");
  }
  if (!rest.empty()) {
    throw Error(ErrorKind::Config,
                "unknown parameter '" + rest.begin()->first + "' for potential " + name);
  }
  return v;
}

std::vector<std::string> builtin_names() {
  return {"poschl-teller", "hulthen", "power", "flat-bottom", "harmonic", "coulomb", "linear"};
}

}  // namespace potentials

bool AuxiliarySplit::parity_even() const {
  return target.even && basis.family() == BasisFamily::Oscillator && basis.center() == 0.0;
}

namespace {

double first_derivative(const Potential& v, double x) {
  const double h = std::max(1e-4, 1e-4 * std::fabs(x)) * v.length_scale;
  return (-v(x + 2 * h) + 8 * v(x + h) - 8 * v(x - h) + v(x - 2 * h)) / (12 * h);
}

double locate_minimum(const Potential& v, double extent) {
  if (v.minimum) return *v.minimum;
  const int samples = 4001;
  const double lo = -extent;
  const double step = 2.0 * extent / (samples - 1);
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double val = v(lo + i * step);
    if (val < best_val) {
      best_val = val;
      best = i;
    }
  }
  // golden-section refinement inside the neighbouring cells
  double a = lo + (best - 1) * step;
  double b = lo + (best + 1) * step;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  while (b - a > 1e-12 * std::max(1.0, std::fabs(a))) {
    if (v(c) < v(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - g * (b - a);
    d = a + g * (b - a);
  }
  return 0.5 * (a + b);
}

}  // namespace

AuxiliarySplit taylor_auxiliary(const Potential& v, double energy, Side side,
                                const TaylorOptions& options) {
  if (v.domain != DomainKind::Line) {
    throw Error(ErrorKind::Domain, "taylor auxiliary needs a potential on the line");
  }
  const double scale = v.length_scale;
  const double extent = options.search_extent * scale;
  const double x_min = locate_minimum(v, extent);
  const double v_min = v(x_min);
  const double e_tol = 1e-12 * std::max(1.0, std::fabs(energy));

  double x_e = x_min;
  if (energy < v_min - e_tol) {
    throw Error(ErrorKind::RootNotFound, "energy below the potential minimum of " + v.name);
  }
  if (std::fabs(energy - v_min) > e_tol) {
    const double dir = side == Side::Positive ? 1.0 : -1.0;
    double inner = x_min;
    double step = 1e-2 * scale;
    double outer = x_min;
    bool bracketed = false;
    while (std::fabs(outer - x_min) < extent) {
      outer = inner + dir * step;
      if (v(outer) >= energy) {
        bracketed = true;
        break;
      }
      inner = outer;
      step *= 1.5;
    }
    if (!bracketed) {
      throw Error(ErrorKind::RootNotFound, "no root of V(x) = E on the requested side for " + v.name);
    }
    // bisection on [inner, outer] with V(inner) < E <= V(outer)
    double lo = inner;
    double hi = outer;
    while (std::fabs(hi - lo) > 1e-12 * scale) {
      const double mid = 0.5 * (lo + hi);
      if (v(mid) < energy) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    x_e = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
      const double slope = first_derivative(v, x_e);
      if (slope == 0.0 || !std::isfinite(slope)) break;
      const double next = x_e - (v(x_e) - energy) / slope;
      if (std::fabs(next - x_e) > std::fabs(hi - lo) + 1e-12 * scale) break;
      x_e = next;
    }
  }

  const double vpp = second_derivative(v, x_e);
  const double curvature = 0.5 * vpp;
  if (!(curvature > 0.0)) {
    throw Error(ErrorKind::NonConfiningAuxiliary,
                "V''(x_E) <= 0 at x_E = " + std::to_string(x_e) + " for " + v.name);
  }
  const double vp = first_derivative(v, x_e);
  const double constant = options.constant.value_or(v(x_e));
  const double center = options.vertex == VertexPlacement::Origin ? 0.0 : x_e - vp / vpp;

  AuxiliarySplit split{v, ExactBasis::oscillator(curvature, center, constant, options.kinetic_scale),
                       nullptr, {}};
  split.delta = [v, basis = split.basis](double x) { return v(x) - basis.potential(x); };
  split.provenance.scheme = "taylor";
  split.provenance.expansion_point = x_e;
  split.provenance.energy = energy;
  split.provenance.parameters = {{"x_E", x_e},
                                 {"V(x_E)", v(x_e)},
                                 {"V'(x_E)", vp},
                                 {"V''(x_E)", vpp},
                                 {"vertex", x_e - vp / vpp}};
  return split;
}

AuxiliarySplit laurent_auxiliary(const Potential& v, double kinetic_scale) {
  if (v.domain != DomainKind::RadialHalfLine) {
    throw Error(ErrorKind::NotCoulombLike, "laurent auxiliary needs a radial potential");
  }
  double alpha = 0.0;
  if (v.coulomb_strength) {
    alpha = *v.coulomb_strength;
  } else {
    // Richardson extrapolation of -r V(r) -> alpha on r_k = h / 2^k.
    constexpr int levels = 7;
    double table[levels][levels];
    double r = 1e-2 * v.length_scale;
    for (int k = 0; k < levels; ++k, r *= 0.5) {
      table[k][0] = -r * v(r);
      for (int j = 1; j <= k; ++j) {
        table[k][j] = table[k][j - 1] + (table[k][j - 1] - table[k - 1][j - 1]) / (std::ldexp(1.0, j) - 1.0);
      }
    }
    alpha = table[levels - 1][levels - 1];
    const double previous = table[levels - 2][levels - 2];
    const double raw = table[levels - 1][0];
    // the 1/r term has to dominate at the smallest r sampled, otherwise the
    // extrapolated "limit" is just noise around zero
    if (!std::isfinite(alpha) || std::fabs(alpha - previous) > 1e-6 * std::max(1.0, std::fabs(alpha)) ||
        std::fabs(raw - alpha) > 1e-2 * std::fabs(alpha)) {
      throw Error(ErrorKind::NotCoulombLike, "r V(r) does not approach a nonzero limit at r -> 0 for " + v.name);
    }
  }
  if (!(alpha > 1e-8)) {
    throw Error(ErrorKind::NotCoulombLike,
                "leading term is not an attractive 1/r (alpha = " + std::to_string(alpha) + ") for " + v.name);
  }

  AuxiliarySplit split{v, ExactBasis::coulomb(alpha, kinetic_scale), nullptr, {}};
  if (v.coulomb_remainder) {
    split.delta = *v.coulomb_remainder;
  } else {
    split.delta = [v, alpha](double r) { return v(r) + alpha / r; };
  }
  split.provenance.scheme = "laurent";
  split.provenance.parameters = {{"alpha", alpha}};
  return split;
}

AuxiliarySplit fit_auxiliary(const Potential& v, FitFamily family, double lo, double hi,
                             const FitOptions& options) {
  const int unknowns = family == FitFamily::Linear ? 2 : 3;
  if (!(hi > lo)) throw Error(ErrorKind::FitFailure, "fit range has zero width");
  if (options.npts < unknowns) {
    throw Error(ErrorKind::FitFailure, "fewer samples than fit parameters");
  }
  if (v.domain == DomainKind::RadialHalfLine && lo < 0.0) {
    throw Error(ErrorKind::Domain, "fit range extends below r = 0");
  }
  if (family == FitFamily::Linear && v.domain != DomainKind::RadialHalfLine) {
    throw Error(ErrorKind::Domain, "linear auxiliary is a radial family");
  }
  if (family == FitFamily::Quadratic && v.domain != DomainKind::Line) {
    throw Error(ErrorKind::Domain, "quadratic auxiliary is a line family");
  }

  // Fit in t = (x - mid) / half so the design matrix stays well conditioned.
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const int n = options.npts;
  Eigen::MatrixXd design(n, unknowns);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    const double x = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    const double t = (x - mid) / half;
    const double val = v(x);
    if (!std::isfinite(val)) {
      throw Error(ErrorKind::FitFailure, "potential is not finite at sample x = " + std::to_string(x));
    }
    design(i, 0) = 1.0;
    design(i, 1) = t;
    if (unknowns == 3) design(i, 2) = t * t;
    rhs(i) = val;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < unknowns) throw Error(ErrorKind::FitFailure, "singular normal equations");
  const Eigen::VectorXd coef = qr.solve(rhs);

  AuxiliarySplit split{v, ExactBasis::oscillator(1.0), nullptr, {}};
  split.provenance.scheme = "fit";
  split.provenance.fit_range = std::make_pair(lo, hi);
  if (family == FitFamily::Linear) {
    const double k = coef(1) / half;
    const double b = coef(0) - k * mid;
    if (!(k > 0.0)) throw Error(ErrorKind::NonConfiningAuxiliary, "fitted slope is not positive");
    split.basis = ExactBasis::linear(k, b, options.zeros, options.kinetic_scale);
    split.provenance.parameters = {{"k", k}, {"b", b}};
  } else {
    const double a2 = coef(2) / (half * half);
    const double a1 = coef(1) / half - 2.0 * coef(2) * mid / (half * half);
    const double a0 = coef(0) - coef(1) * mid / half + coef(2) * mid * mid / (half * half);
    if (!(a2 > 0.0)) throw Error(ErrorKind::NonConfiningAuxiliary, "fitted curvature is not positive");
    const double center = -a1 / (2.0 * a2);
    const double offset = a0 - a1 * a1 / (4.0 * a2);
    split.basis = ExactBasis::oscillator(a2, center, offset, options.kinetic_scale);
    split.provenance.parameters = {{"c", a2}, {"x0", center}, {"offset", offset}};
  }
  split.delta = [v, basis = split.basis](double x) { return v(x) - basis.potential(x); };
  return split;
}

AuxiliarySplit explicit_auxiliary(const Potential& v, const ExactBasis& basis) {
  if (v.domain != basis.domain()) {
    throw Error(ErrorKind::Domain, "basis domain does not match potential " + v.name);
  }
  AuxiliarySplit split{v, basis, nullptr, {}};
  split.delta = [v, basis](double x) { return v(x) - basis.potential(x); };
  split.provenance.scheme = "explicit";
  return split;
}

AuxiliarySplit identity_split(const ExactBasis& basis) {
  Potential v;
  v.name = "identity:" + to_string(basis.family());
  v.domain = basis.domain();
  v.value = [basis](double x) { return basis.potential(x); };
  v.even = basis.family() == BasisFamily::Oscillator && basis.center() == 0.0;
  v.length_scale = 1.0 / basis.decay_scale(basis.index_origin(), basis.index_origin());
  AuxiliarySplit split = explicit_auxiliary(v, basis);
  split.provenance.scheme = "identity";
  return split;
}

double second_derivative(const Potential& v, double x) {
  if (v.second_derivative) return (*v.second_derivative)(x);
  const double h = std::max(1e-4, 1e-4 * std::fabs(x));
  if (v.domain == DomainKind::RadialHalfLine && x - 2.0 * h <= 0.0) {
    const double f0 = v(x), f1 = v(x + h), f2 = v(x + 2 * h), f3 = v(x + 3 * h), f4 = v(x + 4 * h);
    return (35 * f0 - 104 * f1 + 114 * f2 - 56 * f3 + 11 * f4) / (12 * h * h);
  }
  return (-v(x + 2 * h) + 16 * v(x + h) - 30 * v(x) + 16 * v(x - h) - v(x - 2 * h)) / (12 * h * h);
}

}  // namespace pertpade
