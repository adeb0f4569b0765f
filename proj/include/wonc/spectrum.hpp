#pragma once

#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wonc/linalg.hpp"

namespace wonc {

// Weighted decreasing list of singular values; the step function
// mu_t = values[i] for t in [cum[i-1], cum[i]) and 0 past the total weight.
class SingularSpectrum {
 public:
  SingularSpectrum() = default;

  // Sorts descending and merges values equal within merge_tol (absolute).
  static SingularSpectrum from_pairs(std::vector<std::pair<double, double>> pairs,
                                     double merge_tol = 1e-12);

  size_t steps() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& cumulative() const { return cum_; }
  double total_weight() const { return cum_.empty() ? 0.0 : cum_.back(); }
  bool is_zero() const { return values_.empty() || values_.front() == 0.0; }

  double mu(double t) const;          // t > 0
  double lambda(double level) const;  // level > 0, strict "value > level"
  double lp_norm(double p) const;     // (sum w v^p)^(1/p)

  SingularSpectrum value_scaled(double factor) const;   // values *= |factor|
  SingularSpectrum weight_scaled(double factor) const;  // weights *= factor

  nlohmann::json to_json() const;
  static SingularSpectrum from_json(const nlohmann::json& j);

 private:
  std::vector<double> values_;
  std::vector<double> weights_;
  std::vector<double> cum_;
  void rebuild_cumulative();
};

// Singular values of x (eigenvalues of |x|), each carrying the trace weight.
SingularSpectrum singular_spectrum(const TracialMatrix& x);

// Splits x = head + tail with head = x P, P the spectral projection of |x|
// onto (alpha, inf). Head singular values are > alpha or 0; tail <= alpha.
std::pair<TracialMatrix, TracialMatrix> spectral_truncate(const TracialMatrix& x, double alpha);

// Weighted multiset union; weights of part j are multiplied by its scale.
SingularSpectrum direct_sum(const std::vector<std::pair<SingularSpectrum, double>>& parts,
                            double merge_tol = 1e-12);

// Convenience forms taking either representation.
double lambda_at(const SingularSpectrum& s, double level);
double lambda_at(const TracialMatrix& x, double level);
double mu_at(const SingularSpectrum& s, double t);

}  // namespace wonc
