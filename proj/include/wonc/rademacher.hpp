#pragma once

#include <vector>

#include "wonc/linalg.hpp"
#include "wonc/orlicz.hpp"
#include "wonc/spectrum.hpp"

namespace wonc {

// Finite Rademacher expansion sum_k eps_k x_k realized exhaustively: all 2^K
// sign patterns, each carrying probability weight 2^-K. Capped at K = 12.
struct RademacherSystem {
  std::vector<TracialMatrix> coefficients;

  int k() const { return static_cast<int>(coefficients.size()); }
  void validate() const;  // nonempty, common dim/weight, K <= 12
};

// Exact singular value distribution of the expansion under the product
// trace: direct sum over sign patterns with scales 2^-K.
SingularSpectrum rademacher_spectrum(const RademacherSystem& sys);

// Moment of the expansion spectrum.
double khintchine_lhs(const RademacherSystem& sys, const OrliczFunction& phi);

// moment((sum |x_k|^2)^(1/2)) + moment((sum |x_k*|^2)^(1/2)).
double rc_sum_norm(const RademacherSystem& sys, const OrliczFunction& phi);

// Upper bound on the infimum over splittings x_k = y_k + z_k of the
// column-plus-row moment sum; same grid/coordinate-descent search as the
// martingale split with y_k = t_k x_k.
double decomposition_infimum_bound(const RademacherSystem& sys, const OrliczFunction& phi,
                                   int budget);

// The expansion assembled as one block-diagonal matrix (dim 2^K * n) whose
// normalized trace reproduces the product trace; cross-check oracle for the
// direct sum route.
TracialMatrix assembled_block_matrix(const RademacherSystem& sys);

}  // namespace wonc
