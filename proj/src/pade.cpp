#include "pertpade/pade.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pertpade/errors.hpp"

namespace pertpade {

namespace {

constexpr double kSingular = 1e12;

std::string rung_name(int L, int M) { return "[" + std::to_string(L) + "/" + std::to_string(M) + "]"; }

// 1 / (growth rate of |a_k|), from the first and last nonzero coefficients
double balancing_scale(std::span<const double> a) {
  int first = -1, last = -1;
  for (int i = 0; i < static_cast<int>(a.size()); ++i) {
    if (a[i] != 0.0) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0 || last == first) return 1.0;
  const double g = std::pow(std::fabs(a[last]) / std::fabs(a[first]), 1.0 / (last - first));
  if (!std::isfinite(g) || g == 0.0) return 1.0;
  return 1.0 / g;
}

// Solve for one [L/M]; nullopt when the Hankel system is singular.
std::optional<PadeApproximant> try_build(std::span<const double> a, int L, int M) {
  PadeApproximant p;
  p.L = L;
  p.M = M;
  p.requested_L = L;
  p.requested_M = M;

  double head = 0.0, tail = 0.0;
  for (int i = 0; i <= L; ++i) head = std::max(head, std::fabs(a[i]));
  for (int i = L + 1; i <= L + M; ++i) tail = std::max(tail, std::fabs(a[i]));
  if (M == 0 || tail <= 1e-14 * head) {
    // a polynomial of degree <= L already: Q = 1
    p.num.assign(a.begin(), a.begin() + L + 1);
    p.den.assign(M + 1, 0.0);
    p.den[0] = 1.0;
    return p;
  }

  const double s = balancing_scale(a.subspan(0, L + M + 1));
  std::vector<double> b(L + M + 1);
  for (int i = 0; i <= L + M; ++i) b[i] = a[i] * std::pow(s, i);
  auto coef = [&](int i) { return i < 0 ? 0.0 : b[i]; };

  Eigen::MatrixXd A(M, M);
  Eigen::VectorXd rhs(M);
  for (int k = 1; k <= M; ++k) {
    for (int j = 1; j <= M; ++j) A(k - 1, j - 1) = coef(L + k - j);
    rhs(k - 1) = -coef(L + k);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0), smin = sv(M - 1);
  p.condition = smin > 0.0 ? smax / smin : INFINITY;
  if (!(p.condition <= kSingular)) return std::nullopt;
  const Eigen::VectorXd q = svd.solve(rhs);

  std::vector<double> qs(M + 1);
  qs[0] = 1.0;
  for (int j = 1; j <= M; ++j) qs[j] = q(j - 1);
  p.num.assign(L + 1, 0.0);
  for (int i = 0; i <= L; ++i) {
    double v = 0.0;
    for (int j = 0; j <= std::min(i, M); ++j) v += qs[j] * b[i - j];
    p.num[i] = v;
  }
  p.den = qs;
  for (int i = 0; i <= L; ++i) p.num[i] /= std::pow(s, i);
  for (int j = 0; j <= M; ++j) p.den[j] /= std::pow(s, j);
  p.den[0] = 1.0;
  return p;
}

double horner(std::span<const double> c, double x) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

std::complex<double> horner(std::span<const double> c, std::complex<double> x) {
  std::complex<double> v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

std::complex<double> derivative(std::span<const double> c, std::complex<double> x) {
  std::complex<double> v = 0.0;
  for (int j = static_cast<int>(c.size()) - 1; j >= 1; --j) v = v * x + double(j) * c[j];
  return v;
}

}  // namespace

PadeApproximant pade_from_series(std::span<const double> coeffs, int L, int M) {
  if (L < 0 || M < 0) throw Error(ErrorKind::Domain, "Padé degrees must be >= 0");
  if (static_cast<int>(coeffs.size()) < L + M + 1) {
    throw Error(ErrorKind::Domain, rung_name(L, M) + " needs " + std::to_string(L + M + 1) +
                                       " coefficients, have " + std::to_string(coeffs.size()));
  }
  if (auto p = try_build(coeffs, L, M)) return *p;

  std::optional<PadeApproximant> alt;
  std::string used;
  if (L >= 1) {
    alt = try_build(coeffs, L - 1, M);
    used = "[L-1/M]";
  }
  if (!alt) {
    alt = try_build(coeffs, L, M - 1);
    used = "[L/M-1]";
  }
  if (!alt) throw Error(ErrorKind::PadeDegenerate, rung_name(L, M) + " and both fallbacks are singular");
  alt->requested_L = L;
  alt->requested_M = M;
  alt->residual_ok = false;
  alt->fallback = used;
  return *alt;
}

double pade_eval(const PadeApproximant& p, double lambda) {
  const double q = horner(p.den, lambda);
  double scale = 0.0, power = 1.0;
  for (double c : p.den) {
    scale += std::fabs(c) * power;
    power *= std::fabs(lambda);
  }
  if (std::fabs(q) <= 1e-12 * scale) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", lambda);
    throw Error(ErrorKind::PoleEvaluation, "denominator vanishes at lambda = " + std::string(buf));
  }
  return horner(p.num, lambda) / q;
}

std::vector<double> pade_taylor(const PadeApproximant& p, int count) {
  std::vector<double> t(count, 0.0);
  for (int i = 0; i < count; ++i) {
    double v = i < static_cast<int>(p.num.size()) ? p.num[i] : 0.0;
    for (int j = 1; j <= std::min(i, static_cast<int>(p.den.size()) - 1); ++j) v -= p.den[j] * t[i - j];
    t[i] = v;
  }
  return t;
}

std::vector<Pole> poles(const PadeApproximant& p) {
  std::vector<double> q = p.den;
  double qmax = 0.0;
  for (double c : q) qmax = std::max(qmax, std::fabs(c));
  while (q.size() > 1 && std::fabs(q.back()) <= 1e-14 * qmax) q.pop_back();
  const int deg = static_cast<int>(q.size()) - 1;
  std::vector<Pole> out;
  if (deg < 1) return out;

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -q[i] / q[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  for (int i = 0; i < deg; ++i) {
    std::complex<double> z = es.eigenvalues()(i);
    for (int it = 0; it < 8; ++it) {
      const std::complex<double> dq = derivative(q, z);
      if (std::abs(dq) == 0.0) break;
      const std::complex<double> step = horner(q, z) / dq;
      z -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    out.push_back({z, horner(p.num, z) / derivative(q, z)});
  }
  std::sort(out.begin(), out.end(), [](const Pole& a, const Pole& b) {
    return std::abs(a.location) < std::abs(b.location);
  });
  return out;
}

ContinuationResult continue_to_one(std::span<const double> coeffs, const ContinuationOptions& options) {
  const int N = static_cast<int>(coeffs.size()) - 1;
  if (N < 2) throw Error(ErrorKind::Domain, "continuation needs order N >= 2");
  const auto [L, M] = options.requested.value_or(std::pair{(N + 1) / 2, N / 2});
  if (L + M > N) throw Error(ErrorKind::Domain, rung_name(L, M) + " exceeds order " + std::to_string(N));

  ContinuationResult r;
  std::optional<PadeApproximant> chosen;
  auto evaluate = [&](int l, int m) {
    LadderRung rung{l, m};
    try {
      PadeApproximant p = pade_from_series(coeffs, l, m);
      rung.value = pade_eval(p, options.lambda);
      rung.ok = true;
      rung.note = p.fallback;
      if (l == L && m == M) chosen = p;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PadeDegenerate && e.kind() != ErrorKind::PoleEvaluation) throw;
      rung.note = e.what();
    }
    return rung;
  };

  bool requested_on_ladder = false;
  for (int k = 2; k <= N; ++k) {
    const int l = (k + 1) / 2, m = k / 2;
    r.ladder.push_back(evaluate(l, m));
    if (l == L && m == M) requested_on_ladder = true;
  }

  std::vector<double> good;
  for (const auto& rung : r.ladder) {
    if (rung.ok) good.push_back(rung.value);
  }
  if (good.empty()) throw Error(ErrorKind::PadeDegenerate, "every ladder rung failed");
  const auto tail = std::span(good).last(std::min<std::size_t>(3, good.size()));
  r.spread = *std::max_element(tail.begin(), tail.end()) - *std::min_element(tail.begin(), tail.end());

  LadderRung selected;
  if (requested_on_ladder) {
    selected = *std::find_if(r.ladder.begin(), r.ladder.end(),
                             [&](const LadderRung& g) { return g.L == L && g.M == M; });
  } else {
    selected = evaluate(L, M);
    r.ladder.push_back(selected);
  }
  if (!selected.ok) {
    // requested rung failed: report the highest rung that worked
    auto it = std::find_if(r.ladder.rbegin(), r.ladder.rend(), [](const LadderRung& g) { return g.ok; });
    r.note = rung_name(L, M) + " failed, using " + rung_name(it->L, it->M);
    selected = *it;
    chosen = pade_from_series(coeffs, it->L, it->M);
  }
  r.value_at_one = selected.value;
  r.L = selected.L;
  r.M = selected.M;
  r.approximant = *chosen;
  for (const Pole& p : poles(*chosen)) {
    if (std::abs(p.location) <= options.pole_radius) r.pole_warnings.push_back(p);
  }
  return r;
}

ContinuationResult continue_to_one(const PerturbationSeries& series, Target target,
                                   const ContinuationOptions& options) {
  if (target.coefficient) return continue_to_one(series.coefficient_series(*target.coefficient), options);
  return continue_to_one(series.energy_coeffs, options);
}

StateContinuation continue_state(const PerturbationSeries& series, int L, int M, double lambda) {
  if (L + M > series.order) {
    throw Error(ErrorKind::Domain, rung_name(L, M) + " exceeds order " + std::to_string(series.order));
  }
  const int dim = static_cast<int>(series.state_coeffs.front().size());
  StateContinuation out;
  out.coeffs.assign(dim, 0.0);
  for (int m = 0; m < dim; ++m) {
    const std::vector<double> c = series.coefficient_series(m);
    if (std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; })) continue;
    try {
      out.coeffs[m] = pade_eval(pade_from_series(c, L, M), lambda);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PadeDegenerate && e.kind() != ErrorKind::PoleEvaluation) throw;
      out.coeffs[m] = series_eval(c, lambda);
      out.polynomial_fallbacks.push_back(m);
    }
  }
  double norm = 0.0;
  for (double v : out.coeffs) norm += v * v;
  norm = std::sqrt(norm);
  out.normalizer = norm;
  for (double& v : out.coeffs) v /= norm;
  return out;
}

}  // namespace pertpade
