#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wonc/linalg.hpp"
#include "wonc/martingale.hpp"
#include "wonc/norms.hpp"
#include "wonc/orlicz.hpp"
#include "wonc/spectrum.hpp"

namespace wonc {

struct CertifiedWeakType {
  double p;
  double constant;  // ||T x||_{weak p} <= constant * ||x||_p on the corpus
};

// Either a matrix map or a map acting directly on singular value
// distributions (function-side operators). `apply` always produces the
// output spectrum for a matrix input.
struct QuasilinearOperator {
  std::string name;
  double quasilinearity_constant = 1.0;
  bool linear = false;
  std::vector<CertifiedWeakType> certified_weak_types;
  std::function<TracialMatrix(const TracialMatrix&)> matrix_map;
  std::function<SingularSpectrum(const SingularSpectrum&)> spectrum_map;

  SingularSpectrum apply(const TracialMatrix& x) const;
  SingularSpectrum apply_spectrum(const SingularSpectrum& s) const;
};

QuasilinearOperator identity_operator();
// Adjoint invariance of singular values makes this a function-side operator
// whose spectrum action is the identity; the matrix-side fact is covered by
// the spectral tests.
QuasilinearOperator adjoint_operator();
// Conditional expectation onto level k of the dyadic tower in dim 2^levels.
QuasilinearOperator condexp_operator(int levels, int k);
// Running-average map mu -> A(t), discretized back onto the input step grid
// refined by `refine` points per piece. Weak types at p in {3/2, 4} carry
// the averaging-operator constant p/(p-1), validated on a fixed calibration
// corpus at construction.
QuasilinearOperator hardy_average_operator(int refine = 8);

SingularSpectrum hardy_average_spectrum(const SingularSpectrum& s, int refine = 8);

struct WeakTypeCheck {
  double p = 0.0;
  double max_ratio = 0.0;
  int skipped = 0;
};

// max over the corpus of ||T x||_{weak p} / ||x||_p; zero-norm inputs are
// skipped and counted.
WeakTypeCheck verify_weak_type(const QuasilinearOperator& op, double p,
                               const std::vector<TracialMatrix>& corpus);

struct InterpolationInstance {
  std::string hash;
  double ratio = 0.0;       // moment(Tx) / moment(x)
  double lamb1_ratio = -1.0;  // distribution-split check, -1 when not evaluated
  bool skipped = false;
};

struct InterpolationOutcome {
  std::vector<InterpolationInstance> instances;
  double max_ratio = 0.0;
  int skipped = 0;
};

// Requires the index sandwich p0 < lower(phi) <= upper(phi) < p1 across the
// operator's certified weak types; throws std::invalid_argument otherwise.
InterpolationOutcome verify_interpolation(const QuasilinearOperator& op,
                                          const OrliczFunction& phi,
                                          const std::vector<TracialMatrix>& corpus);

// Head/tail split of the interpolation proof; delegates to spectral_truncate.
std::pair<TracialMatrix, TracialMatrix> proof_decomposition(const TracialMatrix& x, double alpha);

}  // namespace wonc
