#include "wonc/rademacher.hpp"

#include <cmath>
#include <stdexcept>

#include "wonc/errors.hpp"
#include "wonc/norms.hpp"

namespace wonc {

void RademacherSystem::validate() const {
  if (coefficients.empty()) throw std::invalid_argument("rademacher system needs coefficients");
  if (k() > 12) throw resource_limit_error("rademacher system limited to 12 variables");
  const int n = coefficients.front().dim();
  const double w = coefficients.front().trace_weight();
  for (const TracialMatrix& x : coefficients) {
    x.validate();
    if (x.dim() != n || x.trace_weight() != w)
      throw std::invalid_argument("rademacher coefficients must share dim and weight");
  }
}

namespace {

TracialMatrix signed_sum(const RademacherSystem& sys, uint32_t pattern) {
  const int n = sys.coefficients.front().dim();
  TracialMatrix f(n, sys.coefficients.front().trace_weight());
  for (int k = 0; k < sys.k(); ++k) {
    const double sign = (pattern >> k) & 1u ? -1.0 : 1.0;
    f = f + sys.coefficients[static_cast<size_t>(k)].scaled(sign);
  }
  return f;
}

}  // namespace

SingularSpectrum rademacher_spectrum(const RademacherSystem& sys) {
  sys.validate();
  const uint32_t patterns = 1u << sys.k();
  const double scale = 1.0 / patterns;
  std::vector<std::pair<SingularSpectrum, double>> parts;
  parts.reserve(patterns);
  for (uint32_t p = 0; p < patterns; ++p)
    parts.emplace_back(singular_spectrum(signed_sum(sys, p)), scale);
  return direct_sum(parts);
}

double khintchine_lhs(const RademacherSystem& sys, const OrliczFunction& phi) {
  return phi_moment(rademacher_spectrum(sys), phi).value;
}

double rc_sum_norm(const RademacherSystem& sys, const OrliczFunction& phi) {
  sys.validate();
  return phi_moment(column_square_spectrum(sys.coefficients), phi).value +
         phi_moment(row_square_spectrum(sys.coefficients), phi).value;
}

namespace {

double split_objective(const std::vector<TracialMatrix>& xs, const std::vector<double>& t,
                       const OrliczFunction& phi) {
  const int n = xs.front().dim();
  const double w = xs.front().trace_weight();
  TracialMatrix col(n, w);
  TracialMatrix row(n, w);
  for (size_t k = 0; k < xs.size(); ++k) {
    if (t[k] != 0.0) col = col + (xs[k].adjoint() * xs[k]).scaled(t[k] * t[k]);
    if (t[k] != 1.0) row = row + (xs[k] * xs[k].adjoint()).scaled((1.0 - t[k]) * (1.0 - t[k]));
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

double decomposition_infimum_bound(const RademacherSystem& sys, const OrliczFunction& phi,
                                   int budget) {
  sys.validate();
  const std::vector<TracialMatrix>& xs = sys.coefficients;
  static const double kGrid[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> t(xs.size(), 1.0);
  double best = split_objective(xs, t, phi);
  std::vector<double> best_t = t;
  std::fill(t.begin(), t.end(), 0.0);
  const double row_only = split_objective(xs, t, phi);
  if (row_only < best) {
    best = row_only;
    best_t = t;
  }
  int evals = 0;
  for (double g : kGrid) {
    if (evals >= budget) break;
    if (g == 0.0 || g == 1.0) continue;
    std::fill(t.begin(), t.end(), g);
    const double val = split_objective(xs, t, phi);
    ++evals;
    if (val < best) {
      best = val;
      best_t = t;
    }
  }
  bool improved = true;
  while (improved && evals < budget) {
    improved = false;
    for (size_t k = 0; k < xs.size() && evals < budget; ++k) {
      for (double g : kGrid) {
        if (evals >= budget) break;
        if (g == best_t[k]) continue;
        t = best_t;
        t[k] = g;
        const double val = split_objective(xs, t, phi);
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

TracialMatrix assembled_block_matrix(const RademacherSystem& sys) {
  sys.validate();
  const int n = sys.coefficients.front().dim();
  const uint32_t patterns = 1u << sys.k();
  const int big = static_cast<int>(patterns) * n;
  TracialMatrix out(big, sys.coefficients.front().trace_weight() / patterns);
  for (uint32_t p = 0; p < patterns; ++p) {
    const TracialMatrix f = signed_sum(sys, p);
    const int off = static_cast<int>(p) * n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.at(off + i, off + j) = f.at(i, j);
  }
  return out;
}

}  // namespace wonc
