#include "pertpade/matrix_elements.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "pertpade/errors.hpp"

namespace pertpade {

namespace {

struct ColumnResult {
  std::vector<double> value;
  std::vector<double> change;
  int npts = 0;
};

// Column n holds entries (m, n) for m <= n. Every entry in a column shares the
// rule of the slower-decaying level n, so they are refined together.
ColumnResult integrate_column(const AuxiliarySplit& split, int n, double accuracy, bool parity,
                              int max_points) {
  const ExactBasis& basis = split.basis;
  const int o = basis.index_origin();
  const auto& breakpoints = split.target.breakpoints;
  std::vector<double> u(static_cast<std::size_t>(n) + 1);
  std::vector<double> magnitude(u.size());

  auto estimate = [&](int npts) {
    const QuadratureRule rule = quadrature_rule(basis, o + n, o + n, npts, breakpoints);
    std::vector<double> sums(static_cast<std::size_t>(n) + 1, 0.0);
    std::fill(magnitude.begin(), magnitude.end(), 0.0);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double x = rule.nodes[i];
      const double d = split.delta(x) * rule.weights[i];
      if (d == 0.0) continue;
      basis.reduced_all(x, u);
      const double dn = d * u[n];
      for (int m = 0; m <= n; ++m) {
        if (parity && (m + n) % 2 != 0) continue;
        sums[m] += u[m] * dn;
        magnitude[m] += std::fabs(u[m] * dn);
      }
    }
    return sums;
  };

  int npts = std::max(32, 2 * (n + 1) + 16);
  std::vector<double> previous = estimate(npts);
  std::vector<double> change(previous.size(), INFINITY);
  std::vector<double> excess(previous.size(), INFINITY);
  while (2 * npts <= max_points) {
    npts *= 2;
    std::vector<double> current = estimate(npts);
    bool converged = true;
    for (int m = 0; m <= n; ++m) {
      change[m] = std::fabs(current[m] - previous[m]);
      // no rule can beat the rounding floor of the sum itself
      const double floor = 1e3 * std::numeric_limits<double>::epsilon() * magnitude[m];
      excess[m] = change[m] / std::max(accuracy * std::max(1.0, std::fabs(current[m])), floor);
      if (excess[m] >= 1.0) converged = false;
    }
    previous = std::move(current);
    if (converged) return {std::move(previous), std::move(change), npts};
  }
  const int worst = static_cast<int>(std::max_element(excess.begin(), excess.end()) - excess.begin());
  throw Error(ErrorKind::QuadratureFailure,
              "entry (" + std::to_string(o + worst) + ", " + std::to_string(o + n) +
                  ") did not converge within " + std::to_string(max_points) + " points");
}

}  // namespace

DeltaMatrix build_delta_matrix(const AuxiliarySplit& split, int dim, double accuracy,
                               const MatrixOptions& options) {
  if (dim < 2) throw Error(ErrorKind::Domain, "matrix dim must be >= 2");
  if (!(accuracy > 0.0)) throw Error(ErrorKind::Domain, "accuracy must be positive");

  DeltaMatrix mat;
  mat.dim = dim;
  mat.basis = split.basis;
  const std::size_t cells = static_cast<std::size_t>(dim) * dim;
  mat.entries.assign(cells, 0.0);
  mat.quad_error.assign(cells, 0.0);
  mat.quad_points.assign(cells, 0);
  const bool parity = options.use_parity && split.parity_even();
  mat.parity_pruned = parity;

  int jobs = options.jobs > 0 ? options.jobs : static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::clamp(jobs, 1, dim);

  // largest columns first so the pool drains evenly
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    while (true) {
      const int k = next.fetch_add(1);
      if (k >= dim) return;
      const int n = dim - 1 - k;
      try {
        ColumnResult col = integrate_column(split, n, accuracy, parity, options.max_points);
        for (int m = 0; m <= n; ++m) {
          mat.at(m, n) = mat.at(n, m) = col.value[m];
          mat.quad_error[m * dim + n] = mat.quad_error[n * dim + m] = col.change[m];
          mat.quad_points[m * dim + n] = mat.quad_points[n * dim + m] = col.npts;
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!failure) failure = std::current_exception();
        next.store(dim);
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  for (double v : mat.entries) {
    if (!std::isfinite(v)) throw Error(ErrorKind::QuadratureFailure, "non-finite matrix entry");
  }
  return mat;
}

DeltaMatrix parity_prune(DeltaMatrix matrix, const AuxiliarySplit& split) {
  if (!split.parity_even()) return matrix;
  for (int m = 0; m < matrix.dim; ++m) {
    for (int n = 0; n < matrix.dim; ++n) {
      if ((m + n) % 2 != 0) matrix.at(m, n) = 0.0;
    }
  }
  matrix.parity_pruned = true;
  return matrix;
}

int effective_dim(const AuxiliarySplit& split, int requested, int needed) {
  if (split.basis.family() != BasisFamily::CoulombRadial) return requested;
  const double beta =
      std::sqrt(split.basis.alpha() * split.target.length_scale / split.basis.kinetic_scale());
  const int cap = 3 * static_cast<int>(std::floor(beta));
  return std::min(requested, std::max(cap, needed));
}

}  // namespace pertpade
