#include "wonc/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wonc/norms.hpp"
#include "wonc/spectrum.hpp"

namespace wonc {

namespace {

// Pairwise sum of len (a power of two) strided entries.
complexd tree_sum(const std::vector<complexd>& buf, size_t offset, size_t len) {
  if (len == 1) return buf[offset];
  const size_t half = len / 2;
  return tree_sum(buf, offset, half) + tree_sum(buf, offset + half, half);
}

}  // namespace

DyadicFiltration::DyadicFiltration(int levels) : levels_(levels) {
  if (levels < 1 || levels > 20) throw std::invalid_argument("filtration levels must be in [1, 20]");
}

TracialMatrix DyadicFiltration::conditional_expectation(int level, const TracialMatrix& x) const {
  if (level < 0 || level > levels_) throw std::invalid_argument("filtration level out of range");
  const int n = ambient_dim();
  if (x.dim() != n) throw std::invalid_argument("matrix dimension does not match the filtration");
  if (level == levels_) return x;
  const int blocks = 1 << level;
  const int bs = n >> level;
  TracialMatrix out(n, x.trace_weight());
  std::vector<complexd> diag(static_cast<size_t>(bs));
  for (int bi = 0; bi < blocks; ++bi) {
    for (int bj = 0; bj < blocks; ++bj) {
      for (int r = 0; r < bs; ++r) diag[static_cast<size_t>(r)] = x.at(bi * bs + r, bj * bs + r);
      const complexd mean = tree_sum(diag, 0, static_cast<size_t>(bs)) / static_cast<double>(bs);
      for (int r = 0; r < bs; ++r) out.at(bi * bs + r, bj * bs + r) = mean;
    }
  }
  return out;
}

bool DyadicFiltration::in_level(int level, const TracialMatrix& x, double rel_tol) const {
  const TracialMatrix diff = conditional_expectation(level, x) - x;
  const double scale = x.frobenius();
  return diff.frobenius() <= rel_tol * (scale > 0.0 ? scale : 1.0);
}

TracialMatrix DyadicFiltration::embed(int level, const TracialMatrix& c) const {
  const int blocks = 1 << level;
  if (c.dim() != blocks) throw std::invalid_argument("embed: dimension must be 2^level");
  const int n = ambient_dim();
  const int bs = n >> level;
  TracialMatrix out(n, 1.0 / n);
  for (int bi = 0; bi < blocks; ++bi)
    for (int bj = 0; bj < blocks; ++bj)
      for (int r = 0; r < bs; ++r) out.at(bi * bs + r, bj * bs + r) = c.at(bi, bj);
  return out;
}

MartingaleSequence::MartingaleSequence(DyadicFiltration f, std::vector<TracialMatrix> elements,
                                       std::vector<TracialMatrix> differences)
    : filtration_(f), elements_(std::move(elements)), differences_(std::move(differences)) {}

MartingaleSequence::MartingaleSequence(DyadicFiltration filtration,
                                       std::vector<TracialMatrix> elements)
    : filtration_(filtration), elements_(std::move(elements)) {
  const int m = filtration_.levels();
  if (static_cast<int>(elements_.size()) != m + 1)
    throw std::invalid_argument("martingale needs levels + 1 elements");
  for (int k = 0; k <= m; ++k) {
    if (!filtration_.in_level(k, elements_[static_cast<size_t>(k)]))
      throw std::invalid_argument("martingale element escapes its level subalgebra");
    if (k < m) {
      const TracialMatrix pulled =
          filtration_.conditional_expectation(k, elements_[static_cast<size_t>(k) + 1]);
      const TracialMatrix diff = pulled - elements_[static_cast<size_t>(k)];
      const double scale = std::max(elements_[static_cast<size_t>(k)].frobenius(), 1.0);
      if (diff.frobenius() > 1e-10 * scale)
        throw std::invalid_argument("sequence is not a martingale for this filtration");
    }
  }
  differences_.reserve(elements_.size());
  differences_.push_back(elements_.front());
  for (size_t k = 1; k < elements_.size(); ++k)
    differences_.push_back(elements_[k] - elements_[k - 1]);
}

MartingaleSequence MartingaleSequence::from_final(const DyadicFiltration& f,
                                                  const TracialMatrix& x) {
  std::vector<TracialMatrix> elements;
  elements.reserve(static_cast<size_t>(f.levels()) + 1);
  for (int k = 0; k <= f.levels(); ++k) elements.push_back(f.conditional_expectation(k, x));
  std::vector<TracialMatrix> differences;
  differences.reserve(elements.size());
  differences.push_back(elements.front());
  for (size_t k = 1; k < elements.size(); ++k)
    differences.push_back(elements[k] - elements[k - 1]);
  return MartingaleSequence(f, std::move(elements), std::move(differences));
}

MartingaleSequence MartingaleSequence::transform(std::span<const complexd> alpha) const {
  if (alpha.size() != differences_.size())
    throw std::invalid_argument("transform symbol length must be levels + 1");
  std::vector<TracialMatrix> differences;
  differences.reserve(differences_.size());
  for (size_t k = 0; k < differences_.size(); ++k)
    differences.push_back(differences_[k].scaled(alpha[k]));
  std::vector<TracialMatrix> elements;
  elements.reserve(differences.size());
  TracialMatrix acc = differences.front();
  elements.push_back(acc);
  for (size_t k = 1; k < differences.size(); ++k) {
    acc = acc + differences[k];
    elements.push_back(acc);
  }
  return MartingaleSequence(filtration_, std::move(elements), std::move(differences));
}

std::pair<TracialMatrix, TracialMatrix> MartingaleSequence::square_functions() const {
  const int n = filtration_.ambient_dim();
  const double w = elements_.front().trace_weight();
  TracialMatrix col(n, w);
  TracialMatrix row(n, w);
  for (const TracialMatrix& dx : differences_) {
    col = col + dx.adjoint() * dx;
    row = row + dx * dx.adjoint();
  }
  return {hermitian_sqrt(col), hermitian_sqrt(row)};
}

std::vector<TracialMatrix> stein_map(const DyadicFiltration& f,
                                     const std::vector<TracialMatrix>& seq) {
  if (static_cast<int>(seq.size()) > f.levels() + 1)
    throw std::invalid_argument("stein map sequence longer than the filtration");
  std::vector<TracialMatrix> out;
  out.reserve(seq.size());
  for (size_t n = 0; n < seq.size(); ++n)
    out.push_back(f.conditional_expectation(static_cast<int>(n), seq[n]));
  return out;
}

std::pair<double, double> bg_ratio(const MartingaleSequence& mart, const OrliczFunction& phi) {
  const double lhs = phi_moment(singular_spectrum(mart.final_element()), phi).value;
  const auto [sc, sr] = mart.square_functions();
  const double rhs =
      phi_moment(singular_spectrum(sc), phi).value + phi_moment(singular_spectrum(sr), phi).value;
  return {lhs, rhs};
}

namespace {

double split_objective(const std::vector<TracialMatrix>& dx, const std::vector<double>& t,
                       const OrliczFunction& phi) {
  const int n = dx.front().dim();
  const double w = dx.front().trace_weight();
  TracialMatrix col(n, w);
  TracialMatrix row(n, w);
  for (size_t k = 0; k < dx.size(); ++k) {
    const double tk = t[k];
    if (tk != 0.0) col = col + (dx[k].adjoint() * dx[k]).scaled(tk * tk);
    if (tk != 1.0) row = row + (dx[k] * dx[k].adjoint()).scaled((1.0 - tk) * (1.0 - tk));
  }
  const auto moment_of = [&](const TracialMatrix& g) {
    HermitianEigen eig = hermitian_eigen(g);
    std::vector<std::pair<double, double>> pairs;
    for (double lam : eig.values) pairs.emplace_back(std::sqrt(std::max(lam, 0.0)), w);
    return phi_moment(SingularSpectrum::from_pairs(std::move(pairs)), phi).value;
  };
  return moment_of(col) + moment_of(row);
}

}  // namespace

double bg_decomposition_bound(const MartingaleSequence& mart, const OrliczFunction& phi,
                              int budget) {
  const std::vector<TracialMatrix>& dx = mart.differences();
  const size_t count = dx.size();
  static const double kGrid[5] = {0.0, 0.25, 0.5, 0.75, 1.0};

  std::vector<double> t(count, 1.0);
  double best = split_objective(dx, t, phi);  // all-column split
  std::vector<double> best_t = t;
  std::fill(t.begin(), t.end(), 0.0);
  const double row_only = split_objective(dx, t, phi);
  if (row_only < best) {
    best = row_only;
    best_t = t;
  }
  int evals = 0;
  // Uniform grid levels first, then coordinate descent until the budget runs out.
  for (double g : kGrid) {
    if (evals >= budget) break;
    if (g == 0.0 || g == 1.0) continue;
    std::fill(t.begin(), t.end(), g);
    const double val = split_objective(dx, t, phi);
    ++evals;
    if (val < best) {
      best = val;
      best_t = t;
    }
  }
  bool improved = true;
  while (improved && evals < budget) {
    improved = false;
    for (size_t k = 0; k < count && evals < budget; ++k) {
      for (double g : kGrid) {
        if (evals >= budget) break;
        if (g == best_t[k]) continue;
        t = best_t;
        t[k] = g;
        const double val = split_objective(dx, t, phi);
        ++evals;
        if (val < best) {
          best = val;
          best_t = t;
          improved = true;
        }
      }
    }
  }
  return best;
}

}  // namespace wonc
