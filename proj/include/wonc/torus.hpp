#pragma once

#include <map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wonc/linalg.hpp"
#include "wonc/spectrum.hpp"

namespace wonc {

// Finitely supported operator-valued trigonometric polynomial
// f(z) = sum_k a_k z^k on |z| = 1, coefficients in a common matrix algebra.
class OperatorTrigPolynomial {
 public:
  OperatorTrigPolynomial(int dim, double trace_weight);

  int dim() const { return dim_; }
  double trace_weight() const { return weight_; }
  const std::map<int, TracialMatrix>& coefficients() const { return coeffs_; }
  int degree() const;  // max |k| over stored nonzero coefficients

  void set_coefficient(int k, TracialMatrix a);
  bool is_analytic() const;  // no coefficients below index 0

  TracialMatrix evaluate(complexd z) const;

  // Stored coefficient, or the zero matrix when absent.
  TracialMatrix fourier_coefficient(int n) const;
  // Discrete transform over `samples` equispaced points (default 2 deg + 1,
  // which is exact for the stored degree).
  TracialMatrix fourier_coefficient_dft(int n, int samples = 0) const;

  // Keeps exactly the coefficients with index in (3^band / 2, 3^band].
  OperatorTrigPolynomial delta_multiplier(int band) const;

  OperatorTrigPolynomial operator+(const OperatorTrigPolynomial& other) const;
  // z^k * f: shifts every coefficient index by k, matrices untouched.
  OperatorTrigPolynomial shifted(int k) const;

  nlohmann::json to_json() const;
  static OperatorTrigPolynomial from_json(const nlohmann::json& j);

 private:
  int dim_;
  double weight_;
  std::map<int, TracialMatrix> coeffs_;
};

int default_torus_samples(int degree);

// Singular value distribution of f under the product trace, realized by
// uniform sampling: direct sum of the sample spectra with scales 1/samples.
SingularSpectrum torus_spectrum(const OperatorTrigPolynomial& f, int samples = 0);

// Bands with (3^band/2, 3^band] intersecting [1, degree].
std::vector<int> lacunary_bands_for_degree(int degree);

// Spectrum of (sum_band delta_band(f)* delta_band(f))^(1/2) sampled on the
// same grid as torus_spectrum(f, samples).
SingularSpectrum lacunary_square_spectrum(const OperatorTrigPolynomial& f, int samples = 0);

// Spectrum of (sum_k |f_k(z)|^2)^(1/2) for a family of polynomials, sampled.
SingularSpectrum family_column_spectrum(const std::vector<OperatorTrigPolynomial>& fs,
                                        int samples = 0);

}  // namespace wonc
