#pragma once

#include <string>
#include <vector>

#include "pertpade/potentials.hpp"

namespace pertpade {

// Finite-difference grid with Dirichlet ends. `npts` counts interior points,
// h = (hi - lo) / (npts + 1).
struct GridSpec {
  double lo = -12.0;
  double hi = 12.0;
  int npts = 2048;
  double kinetic_scale = 1.0;

  double step() const { return (hi - lo) / (npts + 1); }
};

// line: (-max(12, 6 l), max(12, 6 l)); radial: (0, 40 l) with l the length
// scale of the potential
GridSpec default_grid(const Potential& v, int npts = 2048, double kinetic_scale = 1.0);

struct GridSolution {
  std::vector<double> x;  // interior nodes
  std::vector<double> energies;
  // psi on the line, u(r) on the half-line; unit norm by the trapezoid rule,
  // largest component positive
  std::vector<std::vector<double>> vectors;
  std::vector<std::string> warnings;

  // linear interpolation of level i, zero outside the grid
  double interpolate(int i, double x) const;
};

// Lowest k eigenpairs of -D d^2/dx^2 + V from the three-point stencil.
GridSolution grid_eigensolve(const Potential& v, const GridSpec& grid, int k);

struct RichardsonResult {
  std::vector<double> energies;
  std::vector<double> errors;
  GridSolution coarse;
  GridSolution fine;
};

// Solves on h and h/2 (npts and 2 npts + 1 interior points) and extrapolates
// the O(h^2) error away.
RichardsonResult richardson_refine(const Potential& v, const GridSpec& grid, int k);

// Symmetric tridiagonal eigenvalues (Sturm bisection) and vectors (inverse
// iteration) for the `k` lowest levels.
void tridiagonal_lowest(const std::vector<double>& diag, const std::vector<double>& off, int k,
                        std::vector<double>& values, std::vector<std::vector<double>>& vectors);

}  // namespace pertpade
