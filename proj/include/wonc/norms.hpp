#pragma once

#include <vector>

#include "wonc/orlicz.hpp"
#include "wonc/spectrum.hpp"

namespace wonc {

enum class NormForm {
  weak_orlicz_mu,
  weak_orlicz_lambda,
  phi_moment,
  luxemburg,
  weak_lp,
  banach_renorm,
  column_square,
  row_square,
};

enum class NormMethod { closed_form, bisection, piecewise_max };

struct NormResult {
  double value = 0.0;
  NormForm form = NormForm::weak_orlicz_mu;
  NormMethod method = NormMethod::closed_form;
};

const char* norm_form_name(NormForm form);
const char* norm_method_name(NormMethod method);

// inf{c > 0 : t phi(mu_t/c) <= 1 for all t}. The supremum over each step of
// mu is its right endpoint, so the condition collapses to the closed form
// max_i values[i] / phi^{-1}(1 / cum[i]).
NormResult weak_orlicz_norm(const SingularSpectrum& s, const OrliczFunction& phi);

// Same functional through the distribution function: bisection on c with the
// feasibility test cum[i] * phi(values[i]/c) <= 1 evaluated through phi.
// Agrees with the mu form to 1e-9 relative; kept as an independent route.
NormResult weak_orlicz_norm_lambda(const SingularSpectrum& s, const OrliczFunction& phi);

// sup_t t phi(mu_t) = max_i cum[i] * phi(values[i]).
NormResult phi_moment(const SingularSpectrum& s, const OrliczFunction& phi);

// inf{c : sum_i w_i phi(values[i]/c) <= 1}, bisected to 1e-10 relative.
NormResult luxemburg_norm(const SingularSpectrum& s, const OrliczFunction& phi);

// max_i values[i] * cum[i]^(1/p); valid for any p > 0.
NormResult weak_lp_norm(const SingularSpectrum& s, double p);

// (1/t) * integral of mu over (0, t), exact for the step function.
double hardy_average(const SingularSpectrum& s, double t);

// inf{c : t phi(A(t)/c) <= 1 for all t} with A the running average of mu.
// Maximized per linear piece of the integral (golden section + endpoints),
// then bisected on c. Always >= weak_orlicz_norm since A(t) >= mu_t.
NormResult banach_renorm(const SingularSpectrum& s, const OrliczFunction& phi);

// Spectrum of (sum_k x_k* x_k)^(1/2) resp. (sum_k x_k x_k*)^(1/2).
SingularSpectrum column_square_spectrum(const std::vector<TracialMatrix>& xs);
SingularSpectrum row_square_spectrum(const std::vector<TracialMatrix>& xs);

NormResult column_square_norm(const std::vector<TracialMatrix>& xs, const OrliczFunction& phi);
NormResult row_square_norm(const std::vector<TracialMatrix>& xs, const OrliczFunction& phi);

// Empirical sup over the corpus of ||dilated by scale|| / ||original||; a
// lower bound on the dilation operator norm, reported as informative only.
double dilation_norm_estimate(const OrliczFunction& phi, double scale,
                              const std::vector<SingularSpectrum>& corpus);

}  // namespace wonc
