#include "wonc/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "wonc/errors.hpp"
#include "wonc/interpolate.hpp"
#include "wonc/martingale.hpp"
#include "wonc/norms.hpp"
#include "wonc/rademacher.hpp"
#include "wonc/torus.hpp"
#include "wonc/version.hpp"

namespace wonc {

namespace {

struct RatioKindSpec {
  std::string name;
  std::optional<double> fixed_lo;
  std::optional<double> fixed_hi;
  bool calib_hi = false;
  bool calib_lo = false;
  bool informational = false;
};

struct SuiteBody {
  std::vector<Record> records;
  std::vector<RatioKindSpec> kinds;
  std::map<std::string, std::string> params;
  std::vector<std::string> warnings;
};

std::vector<Record> parallel_records(int instances, int workers,
                                     const std::function<Record(int)>& per_instance) {
  std::vector<Record> records(static_cast<size_t>(instances));
  const int thread_count = std::max(1, std::min(workers, instances));
  if (thread_count == 1) {
    for (int i = 0; i < instances; ++i) records[static_cast<size_t>(i)] = per_instance(i);
    return records;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(thread_count));
  std::vector<std::exception_ptr> errors(static_cast<size_t>(thread_count));
  std::atomic<int> next{0};
  for (int t = 0; t < thread_count; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (;;) {
          const int i = next.fetch_add(1);
          if (i >= instances) return;
          records[static_cast<size_t>(i)] = per_instance(i);
        }
      } catch (...) {
        errors[static_cast<size_t>(t)] = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& err : errors)
    if (err) std::rethrow_exception(err);
  return records;
}

OrliczIndices effective_indices(const OrliczFunction& phi) {
  return phi.closed_form_indices().value_or(phi.estimate_indices());
}

std::string classify_regime(const OrliczIndices& ix) {
  if (ix.lower > 2.0 && std::isfinite(ix.upper)) return "high";
  if (ix.lower > 1.0 && ix.upper < 2.0) return "low";
  return "open";
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ':' || c == ',') c = '-';
  return s;
}

std::string format_num(double x) {
  std::ostringstream ss;
  ss << x;
  return ss.str();
}

// ---------------------------------------------------------------------------
// norms

SuiteBody norms_suite(const SuiteOptions& opts) {
  SuiteBody body;
  const OrliczFunction& phi = opts.phi;
  const OrliczIndices ix = effective_indices(phi);
  const bool renormable = ix.lower > 1.0 && std::isfinite(ix.upper);
  const bool is_power = phi.family() == OrliczFamily::power;
  const int n = opts.corpus.instances;

  body.records = parallel_records(n, opts.workers, [&](int i) {
    Record rec;
    const TracialMatrix x = generate_matrix(opts.corpus, static_cast<uint64_t>(i));
    const TracialMatrix y =
        generate_matrix(opts.corpus, static_cast<uint64_t>((i + 1) % n));
    Fnv1a h;
    h.add(x);
    rec.hash = h.hex();
    const SingularSpectrum sx = singular_spectrum(x);
    const double weak = weak_orlicz_norm(sx, phi).value;
    if (weak == 0.0) {
      rec.skipped = true;
      return rec;
    }
    rec.ratios["lambda_dev"] =
        std::abs(weak - weak_orlicz_norm_lambda(sx, phi).value) / weak;
    rec.ratios["weak_over_lux"] = weak / luxemburg_norm(sx, phi).value;
    rec.ratios["unit_modular"] = phi_moment(sx.value_scaled(1.0 / weak), phi).value;
    rec.ratios["homog2"] = weak_orlicz_norm(sx.value_scaled(2.0), phi).value / (2.0 * weak);

    const SingularSpectrum sy = singular_spectrum(y);
    const double weak_y = weak_orlicz_norm(sy, phi).value;
    const SingularSpectrum sxy = singular_spectrum(x + y);
    rec.ratios["quasi_triangle"] =
        weak_orlicz_norm(sxy, phi).value / (2.0 * (weak + weak_y));

    const double ban = banach_renorm(sx, phi).value;
    rec.ratios["banach_over_weak"] = ban / weak;
    if (renormable) {
      const double ban_y = banach_renorm(sy, phi).value;
      rec.ratios["renorm_triangle"] = banach_renorm(sxy, phi).value / (ban + ban_y);
    }
    if (is_power) {
      const double p = phi.param1();
      const double closed = weak_lp_norm(sx, p).value;
      rec.ratios["power_closed_dev"] = std::abs(weak - closed) / weak;
      // Distribution-side oracle: sup of s * lambda_s^(1/p) just below each
      // step value plus a coarse log grid.
      double sup = 0.0;
      for (double v : sx.values()) {
        if (v <= 0.0) continue;
        const double s = v * (1.0 - 1e-9);
        sup = std::max(sup, s * std::pow(sx.lambda(s), 1.0 / p));
      }
      const double smax = sx.values().front() * 2.0;
      const double smin = smax * 1e-6;
      for (int g = 0; g < 512; ++g) {
        const double s = smin * std::pow(smax / smin, g / 511.0);
        const double lam = sx.lambda(s);
        if (lam > 0.0) sup = std::max(sup, s * std::pow(lam, 1.0 / p));
      }
      rec.ratios["power_grid_dev"] = std::abs(weak - sup) / weak;
    }
    return rec;
  });

  body.kinds.push_back({"lambda_dev", std::nullopt, 1e-9, false, false, false});
  body.kinds.push_back({"weak_over_lux", std::nullopt, 1.0 + 1e-10, false, false, false});
  body.kinds.push_back({"unit_modular", std::nullopt, 1.0 + 1e-9, false, false, false});
  body.kinds.push_back({"homog2", 1.0, 1.0, false, false, false});
  body.kinds.push_back({"quasi_triangle", std::nullopt, 1.0, false, false, false});
  body.kinds.push_back({"banach_over_weak", 1.0, std::nullopt, true, false, false});
  if (renormable)
    body.kinds.push_back({"renorm_triangle", std::nullopt, 1.0 + 1e-8, false, false, false});
  if (is_power) {
    body.kinds.push_back({"power_closed_dev", std::nullopt, 1e-12, false, false, false});
    body.kinds.push_back({"power_grid_dev", std::nullopt, 1e-6, false, false, false});
  }
  return body;
}

// ---------------------------------------------------------------------------
// indices

SuiteBody indices_suite(const SuiteOptions& opts) {
  SuiteBody body;
  const OrliczFunction& phi = opts.phi;
  const OrliczIndices est = phi.estimate_indices(opts.grid_min, opts.grid_max, opts.grid_points);
  const Delta2Result d2 = phi.delta2();

  Record rec;
  Fnv1a h;
  h.add_bytes(phi.descriptor().data(), phi.descriptor().size());
  rec.hash = h.hex();
  rec.ratios["lower_est"] = est.lower;
  rec.ratios["upper_est"] = est.upper;
  rec.ratios["delta2_witness"] = d2.witness;

  body.kinds.push_back({"lower_est", std::nullopt, std::nullopt, false, false, true});
  body.kinds.push_back({"upper_est", std::nullopt, std::nullopt, false, false, true});
  body.kinds.push_back({"delta2_witness", std::nullopt, std::nullopt, false, false, true});

  if (const auto cf = phi.closed_form_indices()) {
    rec.ratios["lower_dev"] = std::abs(est.lower - cf->lower) / cf->lower;
    rec.ratios["upper_dev"] = std::abs(est.upper - cf->upper) / cf->upper;
    const bool exact_ratio = phi.family() == OrliczFamily::power ||
                             phi.family() == OrliczFamily::scaled_power;
    // The grid hits the power ratio exactly; the log family approaches its
    // lower index like 1/log t, hence the looser gate there.
    body.kinds.push_back({"lower_dev", std::nullopt, exact_ratio ? 1e-12 : 0.05,
                          false, false, false});
    body.kinds.push_back({"upper_dev", std::nullopt, exact_ratio ? 1e-12 : 0.005,
                          false, false, false});
  } else {
    body.warnings.push_back("no closed-form indices for this family; estimates are informative");
  }
  body.records.push_back(std::move(rec));
  body.params["grid_min"] = format_num(opts.grid_min);
  body.params["grid_max"] = format_num(opts.grid_max);
  body.params["grid_points"] = std::to_string(opts.grid_points);
  return body;
}

// ---------------------------------------------------------------------------
// interp

QuasilinearOperator make_operator(const std::string& name, int levels) {
  if (name == "identity") return identity_operator();
  if (name == "adjoint") return adjoint_operator();
  if (name == "hardy") return hardy_average_operator();
  if (name.rfind("condexp:", 0) == 0) {
    const int k = std::stoi(name.substr(8));
    return condexp_operator(levels, k);
  }
  throw std::invalid_argument("unknown operator: " + name);
}

SuiteBody interp_suite(const SuiteOptions& opts, CorpusSpec& corpus) {
  SuiteBody body;
  const OrliczFunction& phi = opts.phi;
  const bool is_condexp = opts.op.rfind("condexp:", 0) == 0;
  if (is_condexp) corpus.dim = 1 << opts.levels;
  const QuasilinearOperator op = make_operator(opts.op, opts.levels);

  double p0 = op.certified_weak_types.front().p;
  double p1 = p0;
  for (const CertifiedWeakType& wt : op.certified_weak_types) {
    p0 = std::min(p0, wt.p);
    p1 = std::max(p1, wt.p);
  }
  const OrliczIndices ix = effective_indices(phi);
  if (!(p0 < ix.lower && ix.upper < p1))
    throw std::invalid_argument("phi indices escape the certified weak-type sandwich");

  body.records = parallel_records(corpus.instances, opts.workers, [&](int i) {
    Record rec;
    const TracialMatrix x = generate_matrix(corpus, static_cast<uint64_t>(i));
    Fnv1a h;
    h.add(x);
    rec.hash = h.hex();
    const SingularSpectrum in_spec = singular_spectrum(x);
    const double denom = phi_moment(in_spec, phi).value;
    if (denom == 0.0) {
      rec.skipped = true;
      return rec;
    }
    const SingularSpectrum out_spec = op.apply(x);
    rec.ratios["interp"] = phi_moment(out_spec, phi).value / denom;
    for (const CertifiedWeakType& wt : op.certified_weak_types) {
      const double lp = in_spec.lp_norm(wt.p);
      if (lp > 0.0)
        rec.ratios["weak_type_" + format_num(wt.p)] =
            weak_lp_norm(out_spec, wt.p).value / lp / wt.constant;
    }
    if (op.linear && op.matrix_map) {
      const double alpha = in_spec.mu(std::max(in_spec.total_weight() * 0.5, 1e-300));
      if (alpha > 0.0) {
        auto [head, tail] = proof_decomposition(x, alpha);
        const double lhs = out_spec.lambda(2.0 * op.quasilinearity_constant * alpha);
        const double rhs = singular_spectrum(op.matrix_map(head)).lambda(alpha) +
                           singular_spectrum(op.matrix_map(tail)).lambda(alpha);
        rec.ratios["lamb1"] = rhs > 0.0 ? lhs / rhs : (lhs == 0.0 ? 0.0 : 1e300);
      }
    }
    return rec;
  });

  const bool exact_one = opts.op == "identity" || opts.op == "adjoint";
  if (exact_one)
    body.kinds.push_back({"interp", 1.0, 1.0, false, false, false});
  else
    body.kinds.push_back({"interp", std::nullopt, std::nullopt, true, false, false});
  for (const CertifiedWeakType& wt : op.certified_weak_types)
    body.kinds.push_back({"weak_type_" + format_num(wt.p), std::nullopt, 1.0 + 1e-9,
                          false, false, false});
  if (op.linear && op.matrix_map)
    body.kinds.push_back({"lamb1", std::nullopt, 1.0, false, false, false});
  body.params["op"] = opts.op;
  return body;
}

// ---------------------------------------------------------------------------
// transform

SuiteBody transform_suite(const SuiteOptions& opts, CorpusSpec& corpus) {
  SuiteBody body;
  const OrliczFunction& phi = opts.phi;
  corpus.dim = 1 << opts.levels;
  const DyadicFiltration filtration(opts.levels);
  const int symbols = opts.levels + 1;
  if (symbols > 12) throw resource_limit_error("exhaustive sign sweep capped at 12 symbols");
  const uint32_t patterns = 1u << symbols;

  body.records = parallel_records(corpus.instances, opts.workers, [&](int i) {
    Record rec;
    const TracialMatrix x = generate_matrix(corpus, static_cast<uint64_t>(i));
    Fnv1a h;
    h.add(x);
    rec.hash = h.hex();
    const MartingaleSequence mart = MartingaleSequence::from_final(filtration, x);
    const double denom = phi_moment(singular_spectrum(mart.final_element()), phi).value;
    if (denom == 0.0) {
      rec.skipped = true;
      return rec;
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    double ones = 1.0;
    for (uint32_t p = 0; p < patterns; ++p) {
      std::vector<complexd> alpha(static_cast<size_t>(symbols));
      for (int k = 0; k < symbols; ++k)
        alpha[static_cast<size_t>(k)] = (p >> k) & 1u ? -1.0 : 1.0;
      const MartingaleSequence y = mart.transform(alpha);
      const double r =
          phi_moment(singular_spectrum(y.final_element()), phi).value / denom;
      if (p == 0) ones = r;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    rec.ratios["sign_max"] = hi;
    rec.ratios["sign_min"] = lo;
    rec.ratios["ones_dev"] = std::abs(ones - 1.0);
    return rec;
  });

  body.kinds.push_back({"sign_max", std::nullopt, std::nullopt, true, false, false});
  body.kinds.push_back({"sign_min", std::nullopt, std::nullopt, false, true, false});
  body.kinds.push_back({"ones_dev", std::nullopt, 1e-12, false, false, false});
  body.params["levels"] = std::to_string(opts.levels);
  body.params["patterns"] = std::to_string(patterns);
  return body;
}

// ---------------------------------------------------------------------------
// stein

SuiteBody stein_suite(const SuiteOptions& opts, CorpusSpec& corpus) {
  SuiteBody body;
  const OrliczFunction& phi = opts.phi;
  corpus.dim = 1 << opts.levels;
  const DyadicFiltration filtration(opts.levels);
  const int count = opts.levels + 1;

  body.records = parallel_records(corpus.instances, opts.workers, [&](int i) {
    Record rec;
    std::vector<TracialMatrix> seq;
    seq.reserve(static_cast<size_t>(count));
    Fnv1a h;
    for (int s = 0; s < count; ++s) {
      seq.push_back(generate_matrix(corpus, static_cast<uint64_t>(i), static_cast<uint64_t>(s)));
      h.add(seq.back());
    }
    rec.hash = h.hex();
    const double denom = phi_moment(column_square_spectrum(seq), phi).value;
    if (denom == 0.0) {
      rec.skipped = true;
      return rec;
    }
    rec.ratios["stein"] =
        phi_moment(column_square_spectrum(stein_map(filtration, seq)), phi).value / denom;
    std::vector<TracialMatrix> adj;
    adj.reserve(seq.size());
    for (const TracialMatrix& a : seq) adj.push_back(a.adjoint());
    rec.ratios["stein_adj"] =
        phi_moment(column_square_spectrum(stein_map(filtration, adj)), phi).value / denom;
    return rec;
  });

  body.kinds.push_back({"stein", std::nullopt, std::nullopt, true, false, false});
  body.kinds.push_back({"stein_adj", std::nullopt, std::nullopt, true, false, false});
  body.params["levels"] = std::to_string(opts.levels);
  return body;
}

// ---------------------------------------------------------------------------
// bg

SuiteBody bg_suite(const SuiteOptions& opts, CorpusSpec& corpus) {
  SuiteBody body;
  const OrliczFunction& phi = opts.phi;
  corpus.dim = 1 << opts.levels;
  const DyadicFiltration filtration(opts.levels);
  const OrliczIndices ix = effective_indices(phi);
  const std::string derived = classify_regime(ix);
  std::string regime = opts.regime == "auto" ? derived : opts.regime;
  bool mismatch = false;
  if (opts.regime != "auto" && opts.regime != derived) {
    mismatch = true;
    body.warnings.push_back("requested regime '" + opts.regime +
                            "' does not match the phi indices (" + derived + ")");
  }
  if (derived == "open")
    body.warnings.push_back(
        "phi indices straddle 2; both sides computed, nothing asserted");

  const bool high = regime == "high";
  const bool low = regime == "low";
  const bool informational = mismatch || derived == "open";

  body.records = parallel_records(corpus.instances, opts.workers, [&](int i) {
    Record rec;
    const TracialMatrix x = generate_matrix(corpus, static_cast<uint64_t>(i));
    Fnv1a h;
    h.add(x);
    rec.hash = h.hex();
    const MartingaleSequence mart = MartingaleSequence::from_final(filtration, x);
    const auto [lhs, rhs] = bg_ratio(mart, phi);
    if (lhs == 0.0 && rhs == 0.0) {
      rec.skipped = true;
      return rec;
    }
    if (high || derived == "open") {
      if (rhs > 0.0) rec.ratios["bg"] = lhs / rhs;
    }
    if (low || derived == "open") {
      const double bound = bg_decomposition_bound(mart, phi, opts.search_budget);
      if (bound > 0.0) rec.ratios["bg_forward"] = lhs / bound;
    }
    return rec;
  });

  if (high || derived == "open")
    body.kinds.push_back({"bg", std::nullopt, std::nullopt, !informational, !informational,
                          informational});
  if (low || derived == "open")
    body.kinds.push_back({"bg_forward", std::nullopt, std::nullopt, !informational, false,
                          informational});
  body.params["levels"] = std::to_string(opts.levels);
  body.params["regime"] = regime;
  if (low || derived == "open") body.params["direction"] = "forward-only";
  return body;
}

// ---------------------------------------------------------------------------
// khintchine

SuiteBody khintchine_suite(const SuiteOptions& opts, CorpusSpec& corpus) {
  SuiteBody body;
  const OrliczFunction& phi = opts.phi;
  const OrliczIndices ix = effective_indices(phi);
  const std::string derived = classify_regime(ix);
  std::string regime = opts.regime == "auto" ? derived : opts.regime;
  bool mismatch = false;
  if (opts.regime != "auto" && opts.regime != derived) {
    mismatch = true;
    body.warnings.push_back("requested regime '" + opts.regime +
                            "' does not match the phi indices (" + derived + ")");
  }
  if (derived == "open")
    body.warnings.push_back(
        "phi indices straddle 2; both sides computed, nothing asserted");
  if (ix.lower <= 1.0)
    body.warnings.push_back("lower index at 1; verdicts are informative");

  const bool high = regime == "high";
  const bool low = regime == "low";
  const bool informational = mismatch || derived == "open" || ix.lower <= 1.0;

  body.records = parallel_records(corpus.instances, opts.workers, [&](int i) {
    Record rec;
    RademacherSystem sys;
    Fnv1a h;
    for (int k = 0; k < opts.k_vars; ++k) {
      sys.coefficients.push_back(
          generate_matrix(corpus, static_cast<uint64_t>(i), static_cast<uint64_t>(k)));
      h.add(sys.coefficients.back());
    }
    rec.hash = h.hex();
    const double lhs = khintchine_lhs(sys, phi);
    if (lhs == 0.0) {
      rec.skipped = true;
      return rec;
    }
    if (high || derived == "open") {
      const double rhs = rc_sum_norm(sys, phi);
      if (rhs > 0.0) rec.ratios["khint"] = lhs / rhs;
    }
    if (low || derived == "open") {
      const double bound = decomposition_infimum_bound(sys, phi, opts.search_budget);
      if (bound > 0.0) rec.ratios["khint_forward"] = lhs / bound;
    }
    return rec;
  });

  if (high || derived == "open")
    body.kinds.push_back({"khint", std::nullopt, std::nullopt, !informational, !informational,
                          informational});
  if (low || derived == "open")
    body.kinds.push_back({"khint_forward", std::nullopt, std::nullopt, !informational, false,
                          informational});
  body.params["k"] = std::to_string(opts.k_vars);
  body.params["regime"] = regime;
  if (low || derived == "open") body.params["direction"] = "forward-only";
  return body;
}

// ---------------------------------------------------------------------------
// fourier

SuiteBody fourier_suite(const SuiteOptions& opts, CorpusSpec& corpus) {
  SuiteBody body;
  const OrliczFunction& phi = opts.phi;
  const int d = opts.degree;
  if (d < 1 || d > 81) throw std::invalid_argument("degree must be in [1, 81]");
  const int samples = default_torus_samples(d);
  const OrliczIndices ix = effective_indices(phi);
  bool lacunary_informational = false;
  if (!(ix.lower > 2.0)) {
    lacunary_informational = true;
    body.warnings.push_back("lacunary square function outside its index hypothesis");
  }
  bool coeff_informational = false;
  if (!(ix.lower > 1.0)) {
    coeff_informational = true;
    body.warnings.push_back("coefficient bound outside its index hypothesis");
  }

  body.records = parallel_records(corpus.instances, opts.workers, [&](int i) {
    Record rec;
    std::vector<OperatorTrigPolynomial> family;
    Fnv1a h;
    for (int q = 0; q < opts.family_size; ++q) {
      OperatorTrigPolynomial f(corpus.dim, 1.0 / corpus.dim);
      for (int k = 0; k <= d; ++k) {
        TracialMatrix a = generate_matrix(corpus, static_cast<uint64_t>(i),
                                          static_cast<uint64_t>(q * (d + 1) + k));
        h.add(a);
        f.set_coefficient(k, std::move(a));
      }
      family.push_back(std::move(f));
    }
    rec.hash = h.hex();
    const OperatorTrigPolynomial& f = family.front();
    const double denom = phi_moment(torus_spectrum(f, samples), phi).value;
    if (denom == 0.0) {
      rec.skipped = true;
      return rec;
    }
    double coeff = 0.0;
    for (int nidx = 0; nidx <= d; ++nidx)
      coeff = std::max(coeff,
                       phi_moment(singular_spectrum(f.fourier_coefficient(nidx)), phi).value);
    rec.ratios["coeff"] = coeff / denom;

    const double family_denom = phi_moment(family_column_spectrum(family, samples), phi).value;
    double family_best = 0.0;
    for (int nidx = 0; nidx <= d; ++nidx) {
      std::vector<TracialMatrix> hats;
      hats.reserve(family.size());
      for (const OperatorTrigPolynomial& g : family) hats.push_back(g.fourier_coefficient(nidx));
      family_best =
          std::max(family_best, phi_moment(column_square_spectrum(hats), phi).value);
    }
    if (family_denom > 0.0) rec.ratios["coeff_family"] = family_best / family_denom;

    rec.ratios["lacunary"] =
        phi_moment(lacunary_square_spectrum(f, samples), phi).value / denom;
    const double refined = phi_moment(torus_spectrum(f, 2 * samples), phi).value;
    rec.ratios["refine_dev"] = std::abs(refined - denom) / denom;
    return rec;
  });

  body.kinds.push_back({"coeff", std::nullopt, std::nullopt, !coeff_informational, false,
                        coeff_informational});
  body.kinds.push_back({"coeff_family", std::nullopt, std::nullopt, !coeff_informational, false,
                        coeff_informational});
  body.kinds.push_back({"lacunary", std::nullopt, std::nullopt, !lacunary_informational, false,
                        lacunary_informational});
  // Discretization study: recorded per instance, gated only on the fixed
  // calibration corpus in the unit tests.
  body.kinds.push_back({"refine_dev", std::nullopt, std::nullopt, false, false, true});
  body.params["degree"] = std::to_string(d);
  body.params["samples"] = std::to_string(samples);
  body.params["family_size"] = std::to_string(opts.family_size);
  return body;
}

}  // namespace

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> kSuites = {
      "norms", "indices", "interp", "transform", "stein", "bg", "khintchine", "fourier"};
  return kSuites;
}

std::string baseline_key(const SuiteOptions& opts) {
  CorpusSpec corpus = opts.corpus;
  std::ostringstream key;
  key << opts.suite << "__" << sanitize(opts.phi.descriptor()) << "__"
      << ensemble_name(corpus.ensemble);
  if (opts.suite == "interp") key << "__op-" << sanitize(opts.op);
  if (opts.suite == "transform" || opts.suite == "stein" || opts.suite == "bg")
    key << "__m" << opts.levels;
  if (opts.suite == "khintchine") key << "__k" << opts.k_vars << "__regime-" << opts.regime;
  if (opts.suite == "bg") key << "__regime-" << opts.regime;
  if (opts.suite == "fourier") key << "__deg" << opts.degree;
  const bool dyadic = opts.suite == "transform" || opts.suite == "stein" || opts.suite == "bg" ||
                      (opts.suite == "interp" && opts.op.rfind("condexp:", 0) == 0);
  const int dim = dyadic ? (1 << opts.levels) : corpus.dim;
  key << "__s" << corpus.seed << "_n" << corpus.instances << "_d" << dim;
  return key.str();
}

VerificationReport run_suite(const SuiteOptions& opts) {
  if (std::find(known_suites().begin(), known_suites().end(), opts.suite) ==
      known_suites().end())
    throw std::invalid_argument("unknown suite: " + opts.suite);
  if (opts.corpus.instances < 1 || opts.corpus.dim < 1 || !(opts.corpus.scale > 0.0))
    throw std::invalid_argument("corpus spec requires instances >= 1, dim >= 1, scale > 0");

  CorpusSpec corpus = opts.corpus;
  SuiteBody body;
  if (opts.suite == "norms")
    body = norms_suite(opts);
  else if (opts.suite == "indices")
    body = indices_suite(opts);
  else if (opts.suite == "interp")
    body = interp_suite(opts, corpus);
  else if (opts.suite == "transform")
    body = transform_suite(opts, corpus);
  else if (opts.suite == "stein")
    body = stein_suite(opts, corpus);
  else if (opts.suite == "bg")
    body = bg_suite(opts, corpus);
  else if (opts.suite == "khintchine")
    body = khintchine_suite(opts, corpus);
  else if (opts.suite == "fourier")
    body = fourier_suite(opts, corpus);

  VerificationReport report;
  report.suite = opts.suite;
  report.phi = opts.phi.descriptor();
  report.corpus = corpus;
  report.params = std::move(body.params);
  report.records = std::move(body.records);
  report.warnings = std::move(body.warnings);
  report.version = kVersion;
  report.aggregates = aggregate_records(report.records);

  const std::string key = baseline_key(opts);
  report.params["baseline_key"] = key;

  // Optionally distill this run into the calibration file the envelopes come
  // from; reloading it right away keeps calibration and verification runs
  // byte-identical.
  std::optional<CalibrationData> calib;
  if (!opts.baseline_dir.empty()) {
    const std::string calib_path = opts.baseline_dir + "/" + key + ".calib.json";
    if (opts.write_calibration) {
      CalibrationData fresh;
      fresh.key = key;
      fresh.ratios = report.aggregates;
      std::filesystem::create_directories(opts.baseline_dir);
      write_text_file(calib_path, fresh.to_json().dump(2) + "\n");
    }
    if (const auto text = read_text_file(calib_path))
      calib = CalibrationData::from_json(nlohmann::json::parse(*text));
  }

  for (const RatioKindSpec& kind : body.kinds) {
    RatioBounds bounds;
    bounds.lo = kind.fixed_lo;
    bounds.hi = kind.fixed_hi;
    if (calib) {
      const auto it = calib->ratios.find(kind.name);
      if (it != calib->ratios.end()) {
        if (kind.calib_hi && !bounds.hi) bounds.hi = it->second.max * 1.5;
        if (kind.calib_lo && !bounds.lo) bounds.lo = it->second.min / 1.5;
      }
    }
    report.envelopes[kind.name] = bounds;
  }

  bool violated = false;
  bool unbounded = false;
  for (const RatioKindSpec& kind : body.kinds) {
    const RatioBounds& bounds = report.envelopes[kind.name];
    if (kind.informational) continue;
    if (bounds.empty()) {
      unbounded = true;
      continue;
    }
    for (const Record& rec : report.records) {
      if (rec.skipped) continue;
      const auto it = rec.ratios.find(kind.name);
      if (it == rec.ratios.end()) continue;
      if ((bounds.hi && it->second > *bounds.hi) || (bounds.lo && it->second < *bounds.lo)) {
        violated = true;
        break;
      }
    }
    if (violated) break;
  }
  report.verdict = violated ? "fail"
                   : (unbounded || !report.warnings.empty()) ? "informative"
                                                             : "pass";
  return report;
}

}  // namespace wonc
