#pragma once

#include <string>
#include <vector>

#include "pertpade/exact_basis.hpp"
#include "pertpade/potentials.hpp"

namespace pertpade {

// Delta_mn = <psi_m | V - U | psi_n> in the H0 eigenbasis, truncated to the
// first `dim` levels. Rows and columns are positions 0..dim-1, i.e. levels
// index_origin() + position.
struct DeltaMatrix {
  int dim = 0;
  std::vector<double> entries;     // row-major dim x dim
  std::vector<double> quad_error;  // last refinement change per entry
  std::vector<int> quad_points;    // nodes used for the accepted estimate
  ExactBasis basis = ExactBasis::oscillator(1.0);
  bool parity_pruned = false;

  double operator()(int m, int n) const { return entries[static_cast<std::size_t>(m) * dim + n]; }
  double& at(int m, int n) { return entries[static_cast<std::size_t>(m) * dim + n]; }
  // eigenvalue of H0 at a position
  double level_energy(int position) const { return basis.eigenvalue(basis.index_origin() + position); }
};

struct MatrixOptions {
  int max_points = 1 << 14;
  // 0 uses the hardware concurrency
  int jobs = 0;
  // skip m + n odd entries when the split is parity even
  bool use_parity = true;
};

DeltaMatrix build_delta_matrix(const AuxiliarySplit& split, int dim, double accuracy = 1e-10,
                               const MatrixOptions& options = {});

// Zeroes m + n odd entries when V and U are both even about the basis center.
DeltaMatrix parity_prune(DeltaMatrix matrix, const AuxiliarySplit& split);

// Coulomb truncation: states with n well above beta_eff = sqrt(alpha l / D)
// live far outside the potential, so the basis is capped at 3 floor(beta_eff).
// `needed` is the smallest dim the requested levels require.
int effective_dim(const AuxiliarySplit& split, int requested, int needed);

}  // namespace pertpade
