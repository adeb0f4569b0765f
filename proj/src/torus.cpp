#include "wonc/torus.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace wonc {

OperatorTrigPolynomial::OperatorTrigPolynomial(int dim, double trace_weight)
    : dim_(dim), weight_(trace_weight) {
  if (dim <= 0 || !(trace_weight > 0.0))
    throw std::invalid_argument("polynomial needs positive dim and trace weight");
}

int OperatorTrigPolynomial::degree() const {
  int d = 0;
  for (const auto& [k, a] : coeffs_) d = std::max(d, std::abs(k));
  return d;
}

void OperatorTrigPolynomial::set_coefficient(int k, TracialMatrix a) {
  if (a.dim() != dim_ || a.trace_weight() != weight_)
    throw std::invalid_argument("coefficient shape mismatch");
  a.validate();
  coeffs_.insert_or_assign(k, std::move(a));
}

bool OperatorTrigPolynomial::is_analytic() const {
  return coeffs_.empty() || coeffs_.begin()->first >= 0;
}

TracialMatrix OperatorTrigPolynomial::evaluate(complexd z) const {
  TracialMatrix out(dim_, weight_);
  for (const auto& [k, a] : coeffs_) {
    const complexd zk = std::pow(z, k);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) out.at(i, j) += zk * a.at(i, j);
  }
  return out;
}

TracialMatrix OperatorTrigPolynomial::fourier_coefficient(int n) const {
  const auto it = coeffs_.find(n);
  if (it != coeffs_.end()) return it->second;
  return TracialMatrix::zero(dim_, weight_);
}

TracialMatrix OperatorTrigPolynomial::fourier_coefficient_dft(int n, int samples) const {
  const int d = degree();
  const int j_count = samples > 0 ? samples : 2 * d + 1;
  if (j_count < 2 * d + 1)
    throw std::invalid_argument("dft needs at least 2 deg + 1 samples");
  TracialMatrix acc(dim_, weight_);
  for (int j = 0; j < j_count; ++j) {
    const double angle = 2.0 * M_PI * j / j_count;
    const complexd z(std::cos(angle), std::sin(angle));
    const TracialMatrix fz = evaluate(z);
    const complexd zbar_n = std::pow(std::conj(z), n);
    for (int i = 0; i < dim_; ++i)
      for (int jj = 0; jj < dim_; ++jj) acc.at(i, jj) += zbar_n * fz.at(i, jj);
  }
  return acc.scaled(1.0 / j_count);
}

OperatorTrigPolynomial OperatorTrigPolynomial::delta_multiplier(int band) const {
  if (band < 0) throw std::invalid_argument("band index must be nonnegative");
  int64_t pow3 = 1;
  for (int i = 0; i < band; ++i) pow3 *= 3;
  OperatorTrigPolynomial out(dim_, weight_);
  for (const auto& [k, a] : coeffs_) {
    // Keep k with 3^band / 2 < k <= 3^band (integer arithmetic).
    if (k > 0 && 2 * static_cast<int64_t>(k) > pow3 && static_cast<int64_t>(k) <= pow3)
      out.set_coefficient(k, a);
  }
  return out;
}

OperatorTrigPolynomial OperatorTrigPolynomial::operator+(const OperatorTrigPolynomial& other) const {
  if (other.dim_ != dim_ || other.weight_ != weight_)
    throw std::invalid_argument("polynomial shape mismatch");
  OperatorTrigPolynomial out = *this;
  for (const auto& [k, a] : other.coeffs_) {
    const auto it = out.coeffs_.find(k);
    if (it == out.coeffs_.end())
      out.coeffs_.emplace(k, a);
    else
      it->second = it->second + a;
  }
  return out;
}

OperatorTrigPolynomial OperatorTrigPolynomial::shifted(int k) const {
  OperatorTrigPolynomial out(dim_, weight_);
  for (const auto& [idx, a] : coeffs_) out.coeffs_.emplace(idx + k, a);
  return out;
}

nlohmann::json OperatorTrigPolynomial::to_json() const {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [k, a] : coeffs_) coeffs[std::to_string(k)] = a.to_json();
  return nlohmann::json{{"dim", dim_}, {"coeffs", std::move(coeffs)}};
}

OperatorTrigPolynomial OperatorTrigPolynomial::from_json(const nlohmann::json& j) {
  const int dim = j.at("dim").get<int>();
  double weight = 1.0 / dim;
  std::map<int, TracialMatrix> parsed;
  for (const auto& [key, val] : j.at("coeffs").items()) {
    TracialMatrix a = TracialMatrix::from_json(val);
    parsed.emplace(std::stoi(key), std::move(a));
  }
  if (!parsed.empty()) weight = parsed.begin()->second.trace_weight();
  OperatorTrigPolynomial out(dim, weight);
  for (auto& [k, a] : parsed) out.set_coefficient(k, std::move(a));
  return out;
}

int default_torus_samples(int degree) { return std::max(64, 8 * degree); }

SingularSpectrum torus_spectrum(const OperatorTrigPolynomial& f, int samples) {
  const int d = f.degree();
  const int j_count = samples > 0 ? samples : default_torus_samples(d);
  if (j_count < 2 * d + 1)
    throw std::invalid_argument("torus sampling needs at least 2 deg + 1 points");
  std::vector<std::pair<SingularSpectrum, double>> parts;
  parts.reserve(static_cast<size_t>(j_count));
  const double scale = 1.0 / j_count;
  for (int j = 0; j < j_count; ++j) {
    const double angle = 2.0 * M_PI * j / j_count;
    parts.emplace_back(singular_spectrum(f.evaluate(complexd(std::cos(angle), std::sin(angle)))),
                       scale);
  }
  return direct_sum(parts);
}

std::vector<int> lacunary_bands_for_degree(int degree) {
  std::vector<int> bands;
  int64_t pow3 = 1;
  for (int n = 0;; ++n) {
    if (pow3 / 2 >= degree) break;  // smallest index in the band exceeds degree
    bands.push_back(n);
    pow3 *= 3;
  }
  return bands;
}

SingularSpectrum lacunary_square_spectrum(const OperatorTrigPolynomial& f, int samples) {
  const int d = f.degree();
  const int j_count = samples > 0 ? samples : default_torus_samples(d);
  if (j_count < 2 * d + 1)
    throw std::invalid_argument("torus sampling needs at least 2 deg + 1 points");
  std::vector<OperatorTrigPolynomial> bands;
  for (int n : lacunary_bands_for_degree(d)) {
    OperatorTrigPolynomial part = f.delta_multiplier(n);
    if (!part.coefficients().empty()) bands.push_back(std::move(part));
  }
  std::vector<std::pair<SingularSpectrum, double>> parts;
  parts.reserve(static_cast<size_t>(j_count));
  const double scale = 1.0 / j_count;
  for (int j = 0; j < j_count; ++j) {
    const double angle = 2.0 * M_PI * j / j_count;
    const complexd z(std::cos(angle), std::sin(angle));
    TracialMatrix g(f.dim(), f.trace_weight());
    for (const OperatorTrigPolynomial& band : bands) {
      const TracialMatrix bz = band.evaluate(z);
      g = g + bz.adjoint() * bz;
    }
    HermitianEigen eig = hermitian_eigen(g);
    std::vector<std::pair<double, double>> pairs;
    for (double lam : eig.values)
      pairs.emplace_back(std::sqrt(std::max(lam, 0.0)), f.trace_weight());
    parts.emplace_back(SingularSpectrum::from_pairs(std::move(pairs)), scale);
  }
  return direct_sum(parts);
}

SingularSpectrum family_column_spectrum(const std::vector<OperatorTrigPolynomial>& fs,
                                        int samples) {
  if (fs.empty()) throw std::invalid_argument("family spectrum needs polynomials");
  int d = 0;
  for (const OperatorTrigPolynomial& f : fs) d = std::max(d, f.degree());
  const int j_count = samples > 0 ? samples : default_torus_samples(d);
  if (j_count < 2 * d + 1)
    throw std::invalid_argument("torus sampling needs at least 2 deg + 1 points");
  std::vector<std::pair<SingularSpectrum, double>> parts;
  parts.reserve(static_cast<size_t>(j_count));
  const double scale = 1.0 / j_count;
  const int n = fs.front().dim();
  const double w = fs.front().trace_weight();
  for (int j = 0; j < j_count; ++j) {
    const double angle = 2.0 * M_PI * j / j_count;
    const complexd z(std::cos(angle), std::sin(angle));
    TracialMatrix g(n, w);
    for (const OperatorTrigPolynomial& f : fs) {
      const TracialMatrix fz = f.evaluate(z);
      g = g + fz.adjoint() * fz;
    }
    HermitianEigen eig = hermitian_eigen(g);
    std::vector<std::pair<double, double>> pairs;
    for (double lam : eig.values) pairs.emplace_back(std::sqrt(std::max(lam, 0.0)), w);
    parts.emplace_back(SingularSpectrum::from_pairs(std::move(pairs)), scale);
  }
  return direct_sum(parts);
}

}  // namespace wonc
