#include "wonc/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace wonc {

void SingularSpectrum::rebuild_cumulative() {
  cum_.resize(weights_.size());
  double acc = 0.0;
  for (size_t i = 0; i < weights_.size(); ++i) {
    acc += weights_[i];
    cum_[i] = acc;
  }
}

SingularSpectrum SingularSpectrum::from_pairs(std::vector<std::pair<double, double>> pairs,
                                              double merge_tol) {
  for (const auto& [v, w] : pairs) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("spectrum values must be finite and >= 0");
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("spectrum weights must be positive");
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  SingularSpectrum s;
  for (const auto& [v, w] : pairs) {
    if (!s.values_.empty() && s.values_.back() - v <= merge_tol) {
      s.weights_.back() += w;
    } else {
      s.values_.push_back(v);
      s.weights_.push_back(w);
    }
  }
  s.rebuild_cumulative();
  return s;
}

double SingularSpectrum::mu(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("mu requires t > 0");
  // First step whose cumulative weight exceeds t.
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), t);
  if (it == cum_.end()) return 0.0;
  return values_[static_cast<size_t>(it - cum_.begin())];
}

double SingularSpectrum::lambda(double level) const {
  if (!(level > 0.0)) throw std::invalid_argument("lambda requires level > 0");
  double acc = 0.0;
  for (size_t i = 0; i < values_.size() && values_[i] > level; ++i) acc += weights_[i];
  return acc;
}

double SingularSpectrum::lp_norm(double p) const {
  if (!(p > 0.0)) throw std::invalid_argument("lp norm requires p > 0");
  double acc = 0.0;
  for (size_t i = 0; i < values_.size(); ++i) acc += weights_[i] * std::pow(values_[i], p);
  return std::pow(acc, 1.0 / p);
}

SingularSpectrum SingularSpectrum::value_scaled(double factor) const {
  const double f = std::abs(factor);
  SingularSpectrum s = *this;
  if (f == 0.0) {
    if (s.values_.empty()) return s;
    double total = s.total_weight();
    s.values_ = {0.0};
    s.weights_ = {total};
    s.rebuild_cumulative();
    return s;
  }
  for (double& v : s.values_) v *= f;
  return s;
}

SingularSpectrum SingularSpectrum::weight_scaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("weight scale must be positive");
  SingularSpectrum s = *this;
  for (double& w : s.weights_) w *= factor;
  s.rebuild_cumulative();
  return s;
}

nlohmann::json SingularSpectrum::to_json() const {
  return nlohmann::json{{"values", values_}, {"weights", weights_}};
}

SingularSpectrum SingularSpectrum::from_json(const nlohmann::json& j) {
  const auto vals = j.at("values").get<std::vector<double>>();
  const auto wts = j.at("weights").get<std::vector<double>>();
  if (vals.size() != wts.size()) throw std::invalid_argument("spectrum JSON: size mismatch");
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) pairs.emplace_back(vals[i], wts[i]);
  return from_pairs(std::move(pairs));
}

SingularSpectrum singular_spectrum(const TracialMatrix& x) {
  x.validate();
  const TracialMatrix gram = x.adjoint() * x;
  HermitianEigen eig = hermitian_eigen(gram);
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(eig.values.size());
  for (double lam : eig.values)
    pairs.emplace_back(std::sqrt(std::max(lam, 0.0)), x.trace_weight());
  return SingularSpectrum::from_pairs(std::move(pairs));
}

std::pair<TracialMatrix, TracialMatrix> spectral_truncate(const TracialMatrix& x, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("spectral truncation requires alpha > 0");
  const int n = x.dim();
  const TracialMatrix gram = x.adjoint() * x;
  HermitianEigen eig = hermitian_eigen(gram);
  TracialMatrix projection(n, x.trace_weight());
  bool any = false;
  for (int k = 0; k < n; ++k) {
    const double sv = std::sqrt(std::max(eig.values[static_cast<size_t>(k)], 0.0));
    if (sv <= alpha) continue;
    any = true;
    for (int i = 0; i < n; ++i) {
      const complexd vik = eig.vectors.at(i, k);
      for (int j = 0; j < n; ++j) projection.at(i, j) += vik * std::conj(eig.vectors.at(j, k));
    }
  }
  TracialMatrix head = any ? x * projection : TracialMatrix::zero(n, x.trace_weight());
  TracialMatrix tail = x - head;
  return {std::move(head), std::move(tail)};
}

double lambda_at(const SingularSpectrum& s, double level) { return s.lambda(level); }

double lambda_at(const TracialMatrix& x, double level) {
  return singular_spectrum(x).lambda(level);
}

double mu_at(const SingularSpectrum& s, double t) { return s.mu(t); }

SingularSpectrum direct_sum(const std::vector<std::pair<SingularSpectrum, double>>& parts,
                            double merge_tol) {
  if (parts.empty()) throw std::invalid_argument("direct sum of an empty list");
  std::vector<std::pair<double, double>> pairs;
  for (const auto& [spec, scale] : parts) {
    if (!(scale > 0.0)) throw std::invalid_argument("direct sum scales must be positive");
    for (size_t i = 0; i < spec.steps(); ++i)
      pairs.emplace_back(spec.values()[i], scale * spec.weights()[i]);
  }
  return SingularSpectrum::from_pairs(std::move(pairs), merge_tol);
}

}  // namespace wonc
