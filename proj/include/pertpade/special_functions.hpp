#pragma once

#include <span>
#include <vector>

namespace pertpade {

/// Physicists' Hermite polynomial H_n(y) from the three-term recurrence.
double hermite(int n, double y);

/// Normalized Hermite functions phi_0..phi_{count-1} at y, where
/// phi_n(y) = (2^n n! sqrt(pi))^{-1/2} H_n(y) exp(-y^2/2). The recurrence runs
/// on the functions themselves, so it stays finite for large n.
void hermite_functions(double y, std::span<double> out);

/// Generalized Laguerre polynomial L_n^{(alpha)}(z), alpha > -1.
double laguerre(int n, double alpha, double z);

struct AiryValue {
  double ai;
  double ai_prime;
};

/// Ai(y) and Ai'(y). Maclaurin series (extended precision) near the origin,
/// the exponentially-damped integral representation on the moderate positive
/// axis, and the asymptotic expansions in the tails.
AiryValue airy(double y);
double airy_ai(double y);
double airy_ai_prime(double y);

/// Magnitude of the n-th zero of Ai (n >= 1), i.e. Ai(-a_n) = 0.
/// The leading-order asymptotic form [3 pi (4n-1) / 8]^{2/3}.
double airy_zero_asymptotic(int n);
/// Asymptotic series start, Newton-polished on Ai.
double airy_zero(int n);

/// Kummer's confluent hypergeometric function 1F1(a; b; z).
/// Supported: a a nonpositive integer (terminating series). Throws
/// Error(Unsupported) otherwise, and Error(Domain) if b is a nonpositive
/// integer.
double kummer_1f1(double a, double b, double z);

/// Nodes and weights of an integration rule: sum_i w_i f(x_i) ~ integral f.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre on [-1, 1].
QuadratureRule gauss_legendre(int npts);

/// Gauss-Hermite rule for plain integrals over the real line: the returned
/// weights already include exp(+x^2), so sum_i w_i f(x_i) ~ int f(x) dx for
/// f decaying like a Gaussian.
QuadratureRule gauss_hermite(int npts);

/// Gauss-Laguerre rule for plain integrals over [0, inf): weights include
/// exp(+t).
QuadratureRule gauss_laguerre(int npts);

}  // namespace pertpade
