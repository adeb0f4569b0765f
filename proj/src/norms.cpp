#include "wonc/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace wonc {

const char* norm_form_name(NormForm form) {
  switch (form) {
    case NormForm::weak_orlicz_mu: return "weak";
    case NormForm::weak_orlicz_lambda: return "lambda";
    case NormForm::phi_moment: return "moment";
    case NormForm::luxemburg: return "luxemburg";
    case NormForm::weak_lp: return "weak-lp";
    case NormForm::banach_renorm: return "banach";
    case NormForm::column_square: return "column";
    case NormForm::row_square: return "row";
  }
  return "?";
}

const char* norm_method_name(NormMethod method) {
  switch (method) {
    case NormMethod::closed_form: return "closed-form";
    case NormMethod::bisection: return "bisection";
    case NormMethod::piecewise_max: return "piecewise-max";
  }
  return "?";
}

NormResult weak_orlicz_norm(const SingularSpectrum& s, const OrliczFunction& phi) {
  NormResult r{0.0, NormForm::weak_orlicz_mu, NormMethod::closed_form};
  if (s.is_zero()) return r;
  double best = 0.0;
  for (size_t i = 0; i < s.steps(); ++i) {
    const double v = s.values()[i];
    if (v == 0.0) break;
    best = std::max(best, v / phi.inverse(1.0 / s.cumulative()[i]));
  }
  r.value = best;
  return r;
}

NormResult weak_orlicz_norm_lambda(const SingularSpectrum& s, const OrliczFunction& phi) {
  NormResult r{0.0, NormForm::weak_orlicz_lambda, NormMethod::bisection};
  if (s.is_zero()) return r;
  // On each lambda step the product lambda_s * phi(s/c) approaches its
  // supremum as s tends to the step's value from below.
  const auto feasible = [&](double c) {
    for (size_t i = 0; i < s.steps(); ++i) {
      const double v = s.values()[i];
      if (v == 0.0) break;
      if (s.cumulative()[i] * phi(v / c) > 1.0) return false;
    }
    return true;
  };
  double hi = s.values().front();
  int guard = 0;
  while (!feasible(hi)) {
    hi *= 2.0;
    if (++guard > 2400) throw std::invalid_argument("weak norm bracket overflow");
  }
  double lo = 0.0;
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
  }
  r.value = hi;
  return r;
}

NormResult phi_moment(const SingularSpectrum& s, const OrliczFunction& phi) {
  NormResult r{0.0, NormForm::phi_moment, NormMethod::closed_form};
  double best = 0.0;
  for (size_t i = 0; i < s.steps(); ++i)
    best = std::max(best, s.cumulative()[i] * phi(s.values()[i]));
  r.value = best;
  return r;
}

NormResult luxemburg_norm(const SingularSpectrum& s, const OrliczFunction& phi) {
  NormResult r{0.0, NormForm::luxemburg, NormMethod::bisection};
  if (s.is_zero()) return r;
  const auto modular = [&](double c) {
    double acc = 0.0;
    for (size_t i = 0; i < s.steps(); ++i) acc += s.weights()[i] * phi(s.values()[i] / c);
    return acc;
  };
  double hi = s.values().front();
  int guard = 0;
  while (modular(hi) > 1.0) {
    hi *= 2.0;
    if (++guard > 2400) throw std::invalid_argument("luxemburg bracket overflow");
  }
  double lo = 0.0;
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (modular(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  r.value = 0.5 * (lo + hi);
  return r;
}

NormResult weak_lp_norm(const SingularSpectrum& s, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("weak lp norm requires p > 0");
  NormResult r{0.0, NormForm::weak_lp, NormMethod::closed_form};
  double best = 0.0;
  for (size_t i = 0; i < s.steps(); ++i)
    best = std::max(best, s.values()[i] * std::pow(s.cumulative()[i], 1.0 / p));
  r.value = best;
  return r;
}

namespace {

// Prefix integrals of the step function mu: integral over (0, cum[i]].
std::vector<double> prefix_integrals(const SingularSpectrum& s) {
  std::vector<double> out(s.steps());
  double acc = 0.0;
  for (size_t i = 0; i < s.steps(); ++i) {
    acc += s.values()[i] * s.weights()[i];
    out[i] = acc;
  }
  return out;
}

double golden_section_max(const std::function<double(double)>& g, double a, double b,
                          int max_iters = 64, double tol = 1e-10) {
  const double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = g(x1);
  double f2 = g(x2);
  for (int it = 0; it < max_iters && (b - a) > tol; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = g(x1);
    }
  }
  return std::max({g(a), g(b), f1, f2});
}

}  // namespace

double hardy_average(const SingularSpectrum& s, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("hardy average requires t > 0");
  if (s.steps() == 0) return 0.0;
  double integral = 0.0;
  double prev = 0.0;
  for (size_t i = 0; i < s.steps(); ++i) {
    const double hi = s.cumulative()[i];
    if (t <= hi) {
      integral += s.values()[i] * (t - prev);
      return integral / t;
    }
    integral += s.values()[i] * (hi - prev);
    prev = hi;
  }
  return integral / t;
}

NormResult banach_renorm(const SingularSpectrum& s, const OrliczFunction& phi) {
  NormResult r{0.0, NormForm::banach_renorm, NormMethod::piecewise_max};
  if (s.is_zero()) return r;
  const std::vector<double> ints = prefix_integrals(s);
  const double weak = weak_orlicz_norm(s, phi).value;

  // sup_t t phi(A(t)/c) over the linear pieces of the integral; the region
  // past the total weight is nonincreasing (t phi'(t) >= phi(t)), so the
  // last cumulative point covers it.
  const auto sup_modular = [&](double c) {
    double best = 0.0;
    double prev_t = 0.0;
    double prev_int = 0.0;
    for (size_t i = 0; i < s.steps(); ++i) {
      const double v = s.values()[i];
      const double t_hi = s.cumulative()[i];
      const auto g = [&](double t) {
        const double avg = (prev_int + v * (t - prev_t)) / t;
        return t * phi(avg / c);
      };
      const double lo = prev_t > 0.0 ? prev_t : std::min(t_hi * 1e-12, t_hi);
      best = std::max(best, golden_section_max(g, lo, t_hi));
      prev_t = t_hi;
      prev_int = ints[i];
    }
    return best;
  };

  double hi = std::max(weak, 1e-300);
  int guard = 0;
  while (sup_modular(hi) > 1.0) {
    hi *= 2.0;
    if (++guard > 2400) throw std::invalid_argument("renorm bracket overflow");
  }
  double lo = 0.0;
  while (hi - lo > 1e-9 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (sup_modular(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  // A(t) >= mu_t pointwise, so the renormed value dominates the quasi-norm.
  r.value = std::max(hi, weak);
  return r;
}

namespace {

SingularSpectrum square_sum_spectrum(const std::vector<TracialMatrix>& xs, bool column) {
  if (xs.empty()) throw std::invalid_argument("square function of an empty family");
  const int n = xs.front().dim();
  const double w = xs.front().trace_weight();
  TracialMatrix g(n, w);
  for (const TracialMatrix& x : xs) {
    if (x.dim() != n || x.trace_weight() != w)
      throw std::invalid_argument("square function family must share dim and weight");
    g = g + (column ? x.adjoint() * x : x * x.adjoint());
  }
  HermitianEigen eig = hermitian_eigen(g);
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(eig.values.size());
  for (double lam : eig.values) pairs.emplace_back(std::sqrt(std::max(lam, 0.0)), w);
  return SingularSpectrum::from_pairs(std::move(pairs));
}

}  // namespace

SingularSpectrum column_square_spectrum(const std::vector<TracialMatrix>& xs) {
  return square_sum_spectrum(xs, true);
}

SingularSpectrum row_square_spectrum(const std::vector<TracialMatrix>& xs) {
  return square_sum_spectrum(xs, false);
}

NormResult column_square_norm(const std::vector<TracialMatrix>& xs, const OrliczFunction& phi) {
  NormResult r = weak_orlicz_norm(column_square_spectrum(xs), phi);
  r.form = NormForm::column_square;
  return r;
}

NormResult row_square_norm(const std::vector<TracialMatrix>& xs, const OrliczFunction& phi) {
  NormResult r = weak_orlicz_norm(row_square_spectrum(xs), phi);
  r.form = NormForm::row_square;
  return r;
}

double dilation_norm_estimate(const OrliczFunction& phi, double scale,
                              const std::vector<SingularSpectrum>& corpus) {
  if (!(scale > 0.0)) throw std::invalid_argument("dilation scale must be positive");
  if (corpus.empty()) throw std::invalid_argument("dilation estimate needs a nonempty corpus");
  double best = 0.0;
  for (const SingularSpectrum& s : corpus) {
    const double base = weak_orlicz_norm(s, phi).value;
    if (base == 0.0) continue;
    best = std::max(best, weak_orlicz_norm(s.weight_scaled(scale), phi).value / base);
  }
  return best;
}

}  // namespace wonc
