#include "pertpade/special_functions.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "pertpade/errors.hpp"

namespace pertpade {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long double kAi0 = 0.355028053887817239260063186004183176L;
constexpr long double kAiPrime0 = -0.258819403792806798405183560189203963L;

// Rescale threshold for recurrences whose values grow like exp(x^2/2).
constexpr double kBig = 1e150;
constexpr double kLogBig = 345.38776394910683;  // ln(1e150)

// Ai, Ai' from the Maclaurin series. Extended precision holds the cancellation
// between the two series in check for |y| up to ~10.
AiryValue airy_series(double y) {
  const long double x = y;
  const long double x3 = x * x * x;
  const long double eps = std::numeric_limits<long double>::epsilon();

  long double f = 1.0L, tf = 1.0L;
  long double g = x, tg = x;
  long double fp = 0.0L, tfp = x * x / 2.0L;
  long double gp = 1.0L, tgp = 1.0L;
  fp = tfp;
  for (int k = 1; k < 200; ++k) {
    const long double k3 = 3.0L * k;
    tf *= x3 / (k3 * (k3 - 1.0L));
    tg *= x3 / ((k3 + 1.0L) * k3);
    tgp *= x3 / (k3 * (k3 - 2.0L));
    if (k >= 2) {
      tfp *= x3 / ((k3 - 1.0L) * (k3 - 3.0L));
      fp += tfp;
    }
    f += tf;
    g += tg;
    gp += tgp;
    const long double scale = std::fabs(f) + std::fabs(g) + std::fabs(fp) + std::fabs(gp);
    const long double last = std::fabs(tf) + std::fabs(tg) + std::fabs(tfp) + std::fabs(tgp);
    if (last <= eps * scale && k > 2) break;
  }
  return {static_cast<double>(kAi0 * f + kAiPrime0 * g),
          static_cast<double>(kAi0 * fp + kAiPrime0 * gp)};
}

// u_k, v_k of the Airy asymptotic expansions.
struct AsymptoticCoefficients {
  static constexpr int kCount = 40;
  double u[kCount];
  double v[kCount];

  AsymptoticCoefficients() {
    u[0] = 1.0;
    v[0] = 1.0;
    for (int k = 1; k < kCount; ++k) {
      u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
             ((2.0 * k - 1.0) * 216.0 * k);
      v[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u[k];
    }
  }
};

const AsymptoticCoefficients& asymptotic_coefficients() {
  static const AsymptoticCoefficients coeffs;
  return coeffs;
}

// Sums sum_k sign(k) c[k] zeta^{-k} over k in [first, first + 2, ...], stopping
// at the smallest term.
double optimal_sum(const double* c, double zeta, int first, bool alternate) {
  const auto n = AsymptoticCoefficients::kCount;
  double sum = 0.0;
  double previous = std::numeric_limits<double>::infinity();
  int sign = 1;
  for (int k = first; k < n; k += 2) {
    const double term = c[k] * std::pow(zeta, -k);
    if (std::fabs(term) > previous) break;
    sum += sign * term;
    previous = std::fabs(term);
    if (alternate) sign = -sign;
    if (previous < 1e-18 * std::fabs(sum)) break;
  }
  return sum;
}

AiryValue airy_asymptotic_positive(double y) {
  const auto& c = asymptotic_coefficients();
  const double zeta = 2.0 / 3.0 * y * std::sqrt(y);
  double su = 0.0, sv = 0.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 0; k < AsymptoticCoefficients::kCount; ++k) {
    const double zk = std::pow(zeta, -k);
    const double tu = c.u[k] * zk;
    if (std::fabs(tu) > previous) break;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    su += sign * tu;
    sv += sign * c.v[k] * zk;
    previous = std::fabs(tu);
    if (previous < 1e-18) break;
  }
  const double damp = std::exp(-zeta) / (2.0 * std::sqrt(kPi));
  const double y14 = std::pow(y, 0.25);
  return {damp / y14 * su, -damp * y14 * sv};
}

AiryValue airy_asymptotic_negative(double y) {
  const auto& c = asymptotic_coefficients();
  const double z = -y;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  const double phase = zeta - kPi / 4.0;
  const double cs = std::cos(phase);
  const double sn = std::sin(phase);
  const double ue = optimal_sum(c.u, zeta, 0, true);
  const double uo = optimal_sum(c.u, zeta, 1, true);
  const double ve = optimal_sum(c.v, zeta, 0, true);
  const double vo = optimal_sum(c.v, zeta, 1, true);
  const double z14 = std::pow(z, 0.25);
  const double norm = 1.0 / std::sqrt(kPi);
  return {norm / z14 * (cs * ue + sn * uo), norm * z14 * (sn * ve - cs * vo)};
}

// Ai(y) = exp(-zeta) y^{-1/4} / pi * int_0^inf exp(-u^2) cos(u^3 y^{-3/4} / 3) du
// for y > 0, and its y-derivative.
AiryValue airy_integral(double y) {
  static const QuadratureRule panel = gauss_legendre(24);
  const double zeta = 2.0 / 3.0 * y * std::sqrt(y);
  const double freq = std::pow(y, -0.75) / 3.0;
  constexpr double upper = 6.5;
  constexpr int panels = 8;
  const double half = upper / (2.0 * panels);
  double i0 = 0.0, i2 = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (2.0 * p + 1.0) * half;
    for (std::size_t q = 0; q < panel.size(); ++q) {
      const double u = mid + half * panel.nodes[q];
      const double w = half * panel.weights[q];
      const double f = std::exp(-u * u) * std::cos(freq * u * u * u);
      i0 += w * f;
      i2 += w * u * u * f;
    }
  }
  const double damp = std::exp(-zeta) / kPi;
  const double ai = damp * std::pow(y, -0.25) * i0;
  const double aip = -std::sqrt(y) * ai - damp * std::pow(y, -1.25) * 0.5 * i2;
  return {ai, aip};
}

}  // namespace

double hermite(int n, double y) {
  if (n < 0) throw Error(ErrorKind::Domain, "hermite: negative order");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * y;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * y * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void hermite_functions(double y, std::span<double> out) {
  if (out.empty()) return;
  // Carry the Gaussian envelope as a log-scale so far tails of high orders
  // don't flush to zero before the polynomial growth catches up.
  double log_scale = -0.5 * y * y - 0.25 * std::log(kPi);
  double prev = 0.0;
  double cur = 1.0;
  out[0] = std::exp(log_scale);
  for (std::size_t k = 1; k < out.size(); ++k) {
    const double kk = static_cast<double>(k);
    const double next = std::sqrt(2.0 / kk) * y * cur - std::sqrt((kk - 1.0) / kk) * prev;
    prev = cur;
    cur = next;
    if (std::fabs(cur) > kBig) {
      cur /= kBig;
      prev /= kBig;
      log_scale += kLogBig;
    }
    out[k] = cur * std::exp(log_scale);
  }
}

double laguerre(int n, double alpha, double z) {
  if (n < 0) throw Error(ErrorKind::Domain, "laguerre: negative degree");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - z;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - z) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

AiryValue airy(double y) {
  if (!std::isfinite(y)) throw Error(ErrorKind::Domain, "airy: non-finite argument");
  if (y < -9.0) return airy_asymptotic_negative(y);
  if (y <= 3.0) return airy_series(y);
  if (y <= 10.0) return airy_integral(y);
  return airy_asymptotic_positive(y);
}

double airy_ai(double y) { return airy(y).ai; }

double airy_ai_prime(double y) { return airy(y).ai_prime; }

double airy_zero_asymptotic(int n) {
  if (n < 1) throw Error(ErrorKind::Domain, "airy zero index must be >= 1");
  return std::pow(3.0 * kPi * (4.0 * n - 1.0) / 8.0, 2.0 / 3.0);
}

double airy_zero(int n) {
  if (n < 1) throw Error(ErrorKind::Domain, "airy zero index must be >= 1");
  const double t = 3.0 * kPi * (4.0 * n - 1.0) / 8.0;
  const double t2 = 1.0 / (t * t);
  double a = std::pow(t, 2.0 / 3.0) *
             (1.0 + t2 * (5.0 / 48.0 - t2 * (5.0 / 36.0 - t2 * 77125.0 / 82944.0)));
  for (int it = 0; it < 50; ++it) {
    const AiryValue v = airy(-a);
    // d/da Ai(-a) = -Ai'(-a)
    const double step = v.ai / v.ai_prime;
    a += step;
    if (std::fabs(step) < 1e-15 * a) break;
  }
  return a;
}

double kummer_1f1(double a, double b, double z) {
  const double rb = std::round(b);
  if (rb <= 0.0 && std::fabs(b - rb) < 1e-12) {
    throw Error(ErrorKind::Domain, "kummer_1f1: b must not be a nonpositive integer");
  }
  const double ra = std::round(a);
  if (ra > 0.0 || std::fabs(a - ra) > 1e-12) {
    throw Error(ErrorKind::Unsupported, "kummer_1f1: only terminating series (a a nonpositive integer)");
  }
  const int m = static_cast<int>(-ra);
  if (m == 0) return 1.0;
  // 1F1(-m; b; z) = L_m^{(b-1)}(z) / binom(m + b - 1, m)
  const double alpha = b - 1.0;
  double binom = 1.0;
  for (int j = 1; j <= m; ++j) binom *= (alpha + j) / j;
  return laguerre(m, alpha, z) / binom;
}

static QuadratureRule compute_gauss_legendre(int npts) {
  if (npts < 1) throw Error(ErrorKind::Domain, "gauss_legendre: npts must be >= 1");
  QuadratureRule rule;
  rule.nodes.resize(npts);
  rule.weights.resize(npts);
  const int half = (npts + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (npts + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < npts; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = npts * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) < 1e-15) {
        // refresh derivative at the converged node
        p1 = 1.0;
        p2 = 0.0;
        for (int j = 0; j < npts; ++j) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
        }
        pp = npts * (z * p1 - p2) / (z * z - 1.0);
        break;
      }
    }
    rule.nodes[i] = -z;
    rule.nodes[npts - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[i] = w;
    rule.weights[npts - 1 - i] = w;
  }
  return rule;
}

// Nodes start as eigenvalues of the Jacobi matrix and are then polished by
// Newton on the three-term recurrence, which also yields the weights.
static std::vector<double> jacobi_eigenvalues(const std::vector<double>& diag, const std::vector<double>& off) {
  const int n = static_cast<int>(diag.size());
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), n);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(std::max(n - 1, 0));
  for (int i = 0; i + 1 < n; ++i) e(i) = off[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

static QuadratureRule compute_gauss_hermite(int npts) {
  if (npts < 1) throw Error(ErrorKind::Domain, "gauss_hermite: npts must be >= 1");
  const int n = npts;
  std::vector<double> off(std::max(n - 1, 0));
  for (int j = 1; j < n; ++j) off[j - 1] = std::sqrt(0.5 * j);
  std::vector<double> nodes = jacobi_eigenvalues(std::vector<double>(n, 0.0), off);

  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const double pim4 = std::pow(kPi, -0.25);
  const int half = n / 2;
  // nodes ascend; polish the nonnegative half and mirror
  for (int i = n - 1; i >= half; --i) {
    double z = std::max(nodes[i], 0.0);
    double pp = 0.0, log_scale = 0.0;
    for (int it = 0; it < 4; ++it) {
      double p1 = pim4, p2 = 0.0;
      log_scale = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
        if (std::fabs(p1) > kBig) {
          p1 /= kBig;
          p2 /= kBig;
          log_scale += kLogBig;
        }
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double step = p1 / pp;
      z -= step;
      if (std::fabs(step) <= 1e-15 * std::max(1.0, std::fabs(z))) break;
    }
    if (n % 2 == 1 && i == half) z = 0.0;
    // w e^{z^2} with w = 2 / pp^2, evaluated in log form
    const double w = std::exp(std::log(2.0) - 2.0 * (std::log(std::fabs(pp)) + log_scale) + z * z);
    rule.nodes[i] = z;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = -z;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

static QuadratureRule compute_gauss_laguerre(int npts) {
  if (npts < 1) throw Error(ErrorKind::Domain, "gauss_laguerre: npts must be >= 1");
  const int n = npts;
  std::vector<double> diag(n), off(std::max(n - 1, 0));
  for (int j = 0; j < n; ++j) diag[j] = 2.0 * j + 1.0;
  for (int j = 1; j < n; ++j) off[j - 1] = j;
  std::vector<double> nodes = jacobi_eigenvalues(diag, off);

  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::max(nodes[i], 1e-300);
    double pp = 0.0, p2 = 0.0, log_scale = 0.0;
    for (int it = 0; it < 4; ++it) {
      double p1 = 1.0;
      p2 = 0.0;
      log_scale = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0 - z) * p2 - j * p3) / (j + 1.0);
        if (std::fabs(p1) > kBig) {
          p1 /= kBig;
          p2 /= kBig;
          log_scale += kLogBig;
        }
      }
      pp = (n * p1 - n * p2) / z;
      const double step = p1 / pp;
      z -= step;
      if (std::fabs(step) <= 1e-15 * z) break;
    }
    rule.nodes[i] = z;
    // w = -1 / (pp n p2); plain-integral weight w e^{z}
    const double log_w = -(std::log(std::fabs(pp)) + log_scale) - std::log(static_cast<double>(n)) -
                         (std::log(std::fabs(p2)) + log_scale) + z;
    rule.weights[i] = std::exp(log_w);
  }
  return rule;
}

namespace {

// Rules are requested over and over with the same sizes while matrix entries
// are refined, so keep every one that was built.
const QuadratureRule& cached_rule(int kind, int npts, QuadratureRule (*build)(int)) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, QuadratureRule> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({kind, npts});
    if (it != cache.end()) return it->second;
  }
  QuadratureRule rule = build(npts);
  std::lock_guard lock(mutex);
  return cache.try_emplace({kind, npts}, std::move(rule)).first->second;
}

}  // namespace

QuadratureRule gauss_legendre(int npts) { return cached_rule(0, npts, compute_gauss_legendre); }
QuadratureRule gauss_hermite(int npts) { return cached_rule(1, npts, compute_gauss_hermite); }
QuadratureRule gauss_laguerre(int npts) { return cached_rule(2, npts, compute_gauss_laguerre); }

}  // namespace pertpade
