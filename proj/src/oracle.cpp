#include "pertpade/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pertpade/errors.hpp"

namespace pertpade {

namespace {

// number of eigenvalues below x
int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x) {
  int count = 0;
  double q = 1.0;
  const double tiny = std::numeric_limits<double>::min();
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double off2 = i == 0 ? 0.0 : e[i - 1] * e[i - 1];
    q = d[i] - x - (i == 0 ? 0.0 : off2 / q);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

// (T - shift) y = b, Gaussian elimination with partial pivoting; a pivot
// adds a second superdiagonal
std::vector<double> tridiagonal_solve(const std::vector<double>& diag, const std::vector<double>& e,
                                      double shift, std::vector<double> b) {
  const std::size_t n = diag.size();
  std::vector<double> d(n), dl(e), du(e), du2(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = diag[i] - shift;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::fabs(d[i]) >= std::fabs(dl[i])) {
      if (d[i] == 0.0) d[i] = std::numeric_limits<double>::epsilon();
      const double m = dl[i] / d[i];
      d[i + 1] -= m * du[i];
      b[i + 1] -= m * b[i];
    } else {
      const double m = d[i] / dl[i];
      d[i] = dl[i];
      const double temp = d[i + 1];
      d[i + 1] = du[i] - m * temp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -m * du2[i];
      }
      du[i] = temp;
      const double bi = b[i];
      b[i] = b[i + 1];
      b[i + 1] = bi - m * b[i];
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = std::numeric_limits<double>::epsilon();
  std::vector<double> y(n);
  for (std::size_t k = n; k-- > 0;) {
    double v = b[k];
    if (k + 1 < n) v -= du[k] * y[k + 1];
    if (k + 2 < n) v -= du2[k] * y[k + 2];
    y[k] = v / d[k];
  }
  return y;
}

}  // namespace

void tridiagonal_lowest(const std::vector<double>& d, const std::vector<double>& e, int k,
                        std::vector<double>& values, std::vector<std::vector<double>>& vectors) {
  const std::size_t n = d.size();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::fabs(e[i - 1]) : 0.0) + (i + 1 < n ? std::fabs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  const double span = std::max(hi - lo, 1.0);
  values.assign(k, 0.0);
  vectors.assign(k, {});
  for (int j = 0; j < k; ++j) {
    double a = j > 0 ? values[j - 1] - 1e-12 * span : lo;
    double b = hi;
    while (b - a > 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(a), std::fabs(b)) &&
           b - a > 1e-300) {
      const double mid = 0.5 * (a + b);
      if (mid == a || mid == b) break;
      if (sturm_count(d, e, mid) > j) {
        b = mid;
      } else {
        a = mid;
      }
    }
    values[j] = 0.5 * (a + b);

    // inverse iteration from a fixed start vector
    const double shift = values[j];
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + j);
    for (int it = 0; it < 3; ++it) {
      y = tridiagonal_solve(d, e, shift, y);
      double norm = 0.0;
      for (double v : y) norm += v * v;
      norm = std::sqrt(norm);
      for (double& v : y) v /= norm;
      // keep orthogonal to lower levels
      for (int p = 0; p < j; ++p) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += y[i] * vectors[p][i];
        for (std::size_t i = 0; i < n; ++i) y[i] -= dot * vectors[p][i];
      }
    }
    vectors[j] = std::move(y);
  }
}

GridSpec default_grid(const Potential& v, int npts, double kinetic_scale) {
  GridSpec g;
  g.npts = npts;
  g.kinetic_scale = kinetic_scale;
  if (v.domain == DomainKind::Line) {
    const double half = std::max(12.0, 6.0 * v.length_scale);
    g.lo = -half;
    g.hi = half;
  } else {
    g.lo = 0.0;
    g.hi = 40.0 * v.length_scale;
  }
  return g;
}

double GridSolution::interpolate(int i, double at) const {
  const auto& y = vectors.at(i);
  if (x.empty()) return 0.0;
  const double h = x.size() > 1 ? x[1] - x[0] : 1.0;
  const double t = (at - x.front()) / h;
  // the Dirichlet ends sit one step outside the interior nodes
  if (t <= -1.0 || t >= static_cast<double>(x.size())) return 0.0;
  const long j = static_cast<long>(std::floor(t));
  const double w = t - j;
  const double left = j >= 0 ? y[j] : 0.0;
  const double right = j + 1 < static_cast<long>(y.size()) ? y[j + 1] : 0.0;
  return (1.0 - w) * left + w * right;
}

GridSolution grid_eigensolve(const Potential& v, const GridSpec& grid, int k) {
  if (grid.npts < 64) throw Error(ErrorKind::Domain, "grid needs at least 64 points");
  if (!(grid.hi > grid.lo)) throw Error(ErrorKind::Domain, "grid interval has no width");
  if (k < 1 || k >= grid.npts / 4) throw Error(ErrorKind::Domain, "level count must be below npts / 4");
  if (v.domain == DomainKind::RadialHalfLine && grid.lo < 0.0) {
    throw Error(ErrorKind::Domain, "radial grid starts below r = 0");
  }

  const int n = grid.npts;
  const double h = grid.step();
  const double t = grid.kinetic_scale / (h * h);
  GridSolution sol;
  sol.x.resize(n);
  std::vector<double> diag(n), off(n - 1, -t);
  for (int i = 0; i < n; ++i) {
    sol.x[i] = grid.lo + (i + 1) * h;
    diag[i] = 2.0 * t + v(sol.x[i]);
    if (!std::isfinite(diag[i])) {
      throw Error(ErrorKind::Domain, v.name + " is not finite at grid node " + std::to_string(sol.x[i]));
    }
  }
  tridiagonal_lowest(diag, off, k, sol.energies, sol.vectors);

  // a radial grid only clips at its outer end
  const int layer = std::max(1, n / 50);
  const bool inner_wall = v.domain == DomainKind::Line;
  for (int j = 0; j < k; ++j) {
    auto& y = sol.vectors[j];
    double norm = 0.0;
    for (double val : y) norm += val * val;
    norm = std::sqrt(norm * h);
    std::size_t peak = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (std::fabs(y[i]) > std::fabs(y[peak])) peak = i;
    }
    const double sign = y[peak] < 0 ? -1.0 : 1.0;
    for (double& val : y) val *= sign / norm;

    // the wall pins psi to zero inside the layer, so take the density at its
    // inner edge: the mass the layer would hold without the box
    const double width = layer * h;
    double edge = y[n - 1 - layer] * y[n - 1 - layer] * width;
    if (inner_wall) edge += y[layer] * y[layer] * width;
    if (edge > 1e-6) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "level %d carries %.3g of its mass next to the grid boundary", j, edge);
      if (edge > 1e-3) throw Error(ErrorKind::DomainClip, buf);
      sol.warnings.emplace_back(buf);
    }
  }
  return sol;
}

RichardsonResult richardson_refine(const Potential& v, const GridSpec& grid, int k) {
  RichardsonResult r;
  r.coarse = grid_eigensolve(v, grid, k);
  GridSpec fine = grid;
  fine.npts = 2 * grid.npts + 1;
  r.fine = grid_eigensolve(v, fine, k);
  for (int j = 0; j < k; ++j) {
    const double ec = r.coarse.energies[j], ef = r.fine.energies[j];
    r.energies.push_back((4.0 * ef - ec) / 3.0);
    r.errors.push_back(std::fabs(ef - ec) / 3.0);
  }
  return r;
}

}  // namespace pertpade
