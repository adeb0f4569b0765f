#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace wonc {

using complexd = std::complex<double>;

// Square complex matrix over a tracial matrix algebra. The trace is
// x -> trace_weight * sum_i x_ii; trace_weight defaults to 1/n (normalized).
class TracialMatrix {
 public:
  TracialMatrix() = default;
  TracialMatrix(int dim, double trace_weight);

  static TracialMatrix zero(int dim, double trace_weight);
  static TracialMatrix identity(int dim, double trace_weight);
  static TracialMatrix diagonal(const std::vector<double>& d, double trace_weight);

  int dim() const { return dim_; }
  double trace_weight() const { return weight_; }

  complexd& at(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
  const complexd& at(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }
  const std::vector<complexd>& entries() const { return a_; }

  TracialMatrix adjoint() const;
  TracialMatrix operator+(const TracialMatrix& other) const;
  TracialMatrix operator-(const TracialMatrix& other) const;
  TracialMatrix operator*(const TracialMatrix& other) const;
  TracialMatrix scaled(complexd factor) const;

  complexd trace() const;       // weighted: trace_weight * sum of diagonal
  double frobenius() const;     // plain entrywise 2-norm, no weight
  double l2_norm() const;       // sqrt(trace_weight) * frobenius

  bool is_hermitian(double tol) const;
  // Throws std::invalid_argument on NaN/Inf entries or nonpositive weight.
  void validate() const;

  nlohmann::json to_json() const;
  static TracialMatrix from_json(const nlohmann::json& j);

 private:
  int dim_ = 0;
  double weight_ = 1.0;
  std::vector<complexd> a_;
  void require_same_shape(const TracialMatrix& other) const;
};

struct HermitianEigen {
  std::vector<double> values;  // descending
  TracialMatrix vectors;       // column k = eigenvector of values[k]
};

// Cyclic Jacobi diagonalization of a Hermitian matrix. Off-diagonal
// Frobenius mass is driven below rel_tol * ||a||_F; throws numerical_error
// after max_sweeps sweeps.
HermitianEigen hermitian_eigen(const TracialMatrix& a, double rel_tol = 1e-13,
                               int max_sweeps = 100);

// PSD square root via eigendecomposition; small negative eigenvalues are
// clamped to zero.
TracialMatrix hermitian_sqrt(const TracialMatrix& g);

// FNV-1a over dims, weight and entry bytes; stable instance fingerprints
// for reports.
class Fnv1a {
 public:
  void add_bytes(const void* data, size_t len);
  void add(double x);
  void add(uint64_t x);
  void add(const TracialMatrix& m);
  std::string hex() const;

 private:
  uint64_t state_ = 1469598103934665603ull;
};

}  // namespace wonc
