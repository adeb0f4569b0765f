#pragma once

#include <span>
#include <utility>
#include <vector>

#include "wonc/linalg.hpp"
#include "wonc/orlicz.hpp"

namespace wonc {

// Dyadic tower M_{2^k} (x) I_{2^(m-k)} inside M_{2^m}, k = 0..m. The
// conditional expectation onto level k replaces each 2^(m-k) block with its
// normalized block trace times the identity. Block traces are accumulated
// with a power-of-two pairwise tree, which makes idempotence and the tower
// identity bitwise exact.
class DyadicFiltration {
 public:
  explicit DyadicFiltration(int levels);

  int levels() const { return levels_; }
  int ambient_dim() const { return 1 << levels_; }

  TracialMatrix conditional_expectation(int level, const TracialMatrix& x) const;
  bool in_level(int level, const TracialMatrix& x, double rel_tol = 1e-12) const;

  // c (x) I: block (i, j) of the output is c_ij * I_{2^(m-level)}.
  TracialMatrix embed(int level, const TracialMatrix& c) const;

 private:
  int levels_;
};

class MartingaleSequence {
 public:
  MartingaleSequence(DyadicFiltration filtration, std::vector<TracialMatrix> elements);
  static MartingaleSequence from_final(const DyadicFiltration& f, const TracialMatrix& x);

  const DyadicFiltration& filtration() const { return filtration_; }
  const std::vector<TracialMatrix>& elements() const { return elements_; }
  const std::vector<TracialMatrix>& differences() const { return differences_; }
  const TracialMatrix& final_element() const { return elements_.back(); }

  MartingaleSequence transform(std::span<const complexd> alpha) const;

  // (S_C, S_R) = ((sum dx* dx)^(1/2), (sum dx dx*)^(1/2)).
  std::pair<TracialMatrix, TracialMatrix> square_functions() const;

 private:
  DyadicFiltration filtration_;
  std::vector<TracialMatrix> elements_;
  std::vector<TracialMatrix> differences_;
  MartingaleSequence(DyadicFiltration f, std::vector<TracialMatrix> elements,
                     std::vector<TracialMatrix> differences);
};

// output[n] = E_n(seq[n]); seq length at most levels + 1.
std::vector<TracialMatrix> stein_map(const DyadicFiltration& f,
                                     const std::vector<TracialMatrix>& seq);

// (moment of the final element, moment of S_C + moment of S_R).
std::pair<double, double> bg_ratio(const MartingaleSequence& mart, const OrliczFunction& phi);

// Upper bound on the infimum over splittings dx = dy + dz of
// moment((sum |dy|^2)^(1/2)) + moment((sum |dz*|^2)^(1/2)). Candidates are
// dy_k = t_k dx_k on the grid {0, 1/4, 1/2, 3/4, 1} refined by coordinate
// descent within `budget` objective evaluations.
double bg_decomposition_bound(const MartingaleSequence& mart, const OrliczFunction& phi,
                              int budget);

}  // namespace wonc
