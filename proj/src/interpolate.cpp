#include "wonc/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wonc/rng.hpp"

namespace wonc {

SingularSpectrum QuasilinearOperator::apply(const TracialMatrix& x) const {
  if (matrix_map) return singular_spectrum(matrix_map(x));
  if (spectrum_map) return spectrum_map(singular_spectrum(x));
  throw std::invalid_argument("operator has no action");
}

SingularSpectrum QuasilinearOperator::apply_spectrum(const SingularSpectrum& s) const {
  if (spectrum_map) return spectrum_map(s);
  throw std::invalid_argument("operator does not act on spectra");
}

SingularSpectrum hardy_average_spectrum(const SingularSpectrum& s, int refine) {
  if (refine < 1) throw std::invalid_argument("refinement must be positive");
  if (s.steps() == 0) return s;
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(s.steps() * static_cast<size_t>(refine));
  double prev = 0.0;
  for (size_t i = 0; i < s.steps(); ++i) {
    const double hi = s.cumulative()[i];
    const double width = (hi - prev) / refine;
    for (int r = 1; r <= refine; ++r) {
      const double t = (r == refine) ? hi : prev + width * r;
      // A is nonincreasing, so the right-endpoint value keeps the output a
      // valid decreasing step function dominated by A.
      pairs.emplace_back(hardy_average(s, t), t - (prev + width * (r - 1)));
    }
    prev = hi;
  }
  return SingularSpectrum::from_pairs(std::move(pairs));
}

QuasilinearOperator identity_operator() {
  QuasilinearOperator op;
  op.name = "identity";
  op.linear = true;
  op.certified_weak_types = {{1.5, 1.0}, {4.0, 1.0}};
  op.matrix_map = [](const TracialMatrix& x) { return x; };
  return op;
}

QuasilinearOperator adjoint_operator() {
  QuasilinearOperator op;
  op.name = "adjoint";
  op.linear = true;
  op.certified_weak_types = {{1.5, 1.0}, {4.0, 1.0}};
  op.spectrum_map = [](const SingularSpectrum& s) { return s; };
  return op;
}

QuasilinearOperator condexp_operator(int levels, int k) {
  DyadicFiltration f(levels);
  if (k < 0 || k > levels) throw std::invalid_argument("conditional expectation level out of range");
  QuasilinearOperator op;
  op.name = "condexp:" + std::to_string(k);
  op.linear = true;
  op.certified_weak_types = {{1.5, 1.0}, {4.0, 1.0}};
  op.matrix_map = [f, k](const TracialMatrix& x) { return f.conditional_expectation(k, x); };
  return op;
}

QuasilinearOperator hardy_average_operator(int refine) {
  QuasilinearOperator op;
  op.name = "hardy";
  op.linear = false;  // sublinear
  op.spectrum_map = [refine](const SingularSpectrum& s) {
    return hardy_average_spectrum(s, refine);
  };
  // Averaging-operator bound: strong (p,p) with constant p/(p-1), hence weak
  // type with the same constant. The discretization only undershoots A, so
  // the bound survives it. Validate once on a fixed corpus.
  op.certified_weak_types = {{1.5, 3.0}, {4.0, 4.0 / 3.0}};
  static const bool validated = [&op] {
    CorpusSpec calib{/*seed=*/7777, /*instances=*/32, /*dim=*/6, Ensemble::complex_ginibre, 1.0};
    const std::vector<TracialMatrix> corpus = generate_corpus(calib);
    for (const CertifiedWeakType& wt : op.certified_weak_types) {
      const WeakTypeCheck check = verify_weak_type(op, wt.p, corpus);
      if (check.max_ratio > wt.constant * (1.0 + 1e-9))
        throw std::logic_error("averaging operator exceeded its certified weak-type constant");
    }
    return true;
  }();
  (void)validated;
  return op;
}

WeakTypeCheck verify_weak_type(const QuasilinearOperator& op, double p,
                               const std::vector<TracialMatrix>& corpus) {
  if (corpus.empty()) throw std::invalid_argument("weak type check needs a corpus");
  WeakTypeCheck out;
  out.p = p;
  for (const TracialMatrix& x : corpus) {
    const double denom = singular_spectrum(x).lp_norm(p);
    if (denom == 0.0) {
      ++out.skipped;
      continue;
    }
    out.max_ratio = std::max(out.max_ratio, weak_lp_norm(op.apply(x), p).value / denom);
  }
  return out;
}

InterpolationOutcome verify_interpolation(const QuasilinearOperator& op,
                                          const OrliczFunction& phi,
                                          const std::vector<TracialMatrix>& corpus) {
  if (corpus.empty()) throw std::invalid_argument("interpolation check needs a corpus");
  if (op.certified_weak_types.size() < 2)
    throw std::invalid_argument("operator needs two certified weak types");
  double p0 = op.certified_weak_types.front().p;
  double p1 = p0;
  for (const CertifiedWeakType& wt : op.certified_weak_types) {
    p0 = std::min(p0, wt.p);
    p1 = std::max(p1, wt.p);
  }
  const OrliczIndices ix = phi.closed_form_indices().value_or(phi.estimate_indices());
  if (!(p0 < ix.lower && ix.upper < p1))
    throw std::invalid_argument("phi indices escape the certified weak-type sandwich");

  InterpolationOutcome out;
  out.instances.reserve(corpus.size());
  const double k_const = op.quasilinearity_constant;
  for (const TracialMatrix& x : corpus) {
    InterpolationInstance inst;
    Fnv1a h;
    h.add(x);
    inst.hash = h.hex();
    const SingularSpectrum in_spec = singular_spectrum(x);
    const double denom = phi_moment(in_spec, phi).value;
    if (denom == 0.0) {
      inst.skipped = true;
      ++out.skipped;
      out.instances.push_back(std::move(inst));
      continue;
    }
    const SingularSpectrum out_spec = op.apply(x);
    inst.ratio = phi_moment(out_spec, phi).value / denom;
    out.max_ratio = std::max(out.max_ratio, inst.ratio);

    // Distribution-form split at the median singular value: the head/tail
    // images control the output distribution at 2K alpha.
    if (op.linear && op.matrix_map) {
      const double alpha = in_spec.mu(std::max(in_spec.total_weight() * 0.5, 1e-300));
      if (alpha > 0.0) {
        auto [head, tail] = proof_decomposition(x, alpha);
        const double lhs = out_spec.lambda(2.0 * k_const * alpha);
        const double rhs = singular_spectrum(op.matrix_map(head)).lambda(alpha) +
                           singular_spectrum(op.matrix_map(tail)).lambda(alpha);
        if (rhs > 0.0)
          inst.lamb1_ratio = lhs / rhs;
        else
          // rhs vanishing forces lhs = 0; anything else is a real violation.
          inst.lamb1_ratio = lhs == 0.0 ? 0.0 : 1e300;
      }
    }
    out.instances.push_back(std::move(inst));
  }
  return out;
}

std::pair<TracialMatrix, TracialMatrix> proof_decomposition(const TracialMatrix& x, double alpha) {
  return spectral_truncate(x, alpha);
}

}  // namespace wonc
