#include "wonc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "wonc/errors.hpp"

namespace wonc {

TracialMatrix::TracialMatrix(int dim, double trace_weight)
    : dim_(dim), weight_(trace_weight), a_(static_cast<size_t>(dim) * dim) {
  if (dim <= 0) throw std::invalid_argument("matrix dimension must be positive");
  if (!(trace_weight > 0.0) || !std::isfinite(trace_weight))
    throw std::invalid_argument("trace weight must be positive and finite");
}

TracialMatrix TracialMatrix::zero(int dim, double trace_weight) {
  return TracialMatrix(dim, trace_weight);
}

TracialMatrix TracialMatrix::identity(int dim, double trace_weight) {
  TracialMatrix m(dim, trace_weight);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

TracialMatrix TracialMatrix::diagonal(const std::vector<double>& d, double trace_weight) {
  TracialMatrix m(static_cast<int>(d.size()), trace_weight);
  for (int i = 0; i < m.dim(); ++i) m.at(i, i) = d[static_cast<size_t>(i)];
  return m;
}

void TracialMatrix::require_same_shape(const TracialMatrix& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("matrix dimension mismatch");
  if (weight_ != other.weight_) throw std::invalid_argument("trace weight mismatch");
}

TracialMatrix TracialMatrix::adjoint() const {
  TracialMatrix r(dim_, weight_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r.at(i, j) = std::conj(at(j, i));
  return r;
}

TracialMatrix TracialMatrix::operator+(const TracialMatrix& other) const {
  require_same_shape(other);
  TracialMatrix r(dim_, weight_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + other.a_[k];
  return r;
}

TracialMatrix TracialMatrix::operator-(const TracialMatrix& other) const {
  require_same_shape(other);
  TracialMatrix r(dim_, weight_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - other.a_[k];
  return r;
}

TracialMatrix TracialMatrix::operator*(const TracialMatrix& other) const {
  require_same_shape(other);
  TracialMatrix r(dim_, weight_);
  for (int i = 0; i < dim_; ++i) {
    for (int k = 0; k < dim_; ++k) {
      const complexd aik = at(i, k);
      if (aik == complexd(0.0, 0.0)) continue;
      for (int j = 0; j < dim_; ++j) r.at(i, j) += aik * other.at(k, j);
    }
  }
  return r;
}

TracialMatrix TracialMatrix::scaled(complexd factor) const {
  TracialMatrix r(dim_, weight_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = factor * a_[k];
  return r;
}

complexd TracialMatrix::trace() const {
  complexd s = 0.0;
  for (int i = 0; i < dim_; ++i) s += at(i, i);
  return weight_ * s;
}

double TracialMatrix::frobenius() const {
  double s = 0.0;
  for (const complexd& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

double TracialMatrix::l2_norm() const { return std::sqrt(weight_) * frobenius(); }

bool TracialMatrix::is_hermitian(double tol) const {
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j)
      if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
  return true;
}

void TracialMatrix::validate() const {
  if (dim_ <= 0) throw std::invalid_argument("empty matrix");
  if (!(weight_ > 0.0) || !std::isfinite(weight_))
    throw std::invalid_argument("trace weight must be positive and finite");
  for (const complexd& z : a_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("matrix entries must be finite");
}

nlohmann::json TracialMatrix::to_json() const {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (int i = 0; i < dim_; ++i) {
    nlohmann::json rrow = nlohmann::json::array();
    nlohmann::json irow = nlohmann::json::array();
    for (int j = 0; j < dim_; ++j) {
      rrow.push_back(at(i, j).real());
      irow.push_back(at(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return nlohmann::json{{"n", dim_}, {"w", weight_}, {"re", std::move(re)}, {"im", std::move(im)}};
}

TracialMatrix TracialMatrix::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("re"))
    throw std::invalid_argument("matrix JSON requires fields 'n' and 're'");
  const int n = j.at("n").get<int>();
  if (n <= 0) throw std::invalid_argument("matrix JSON: n must be positive");
  const double w = j.contains("w") ? j.at("w").get<double>() : 1.0 / n;
  TracialMatrix m(n, w);
  const auto& re = j.at("re");
  if (!re.is_array() || static_cast<int>(re.size()) != n)
    throw std::invalid_argument("matrix JSON: 're' must be an n x n array");
  const bool has_im = j.contains("im");
  for (int i = 0; i < n; ++i) {
    const auto& rrow = re.at(static_cast<size_t>(i));
    if (static_cast<int>(rrow.size()) != n)
      throw std::invalid_argument("matrix JSON: 're' must be an n x n array");
    for (int jj = 0; jj < n; ++jj) {
      double x = rrow.at(static_cast<size_t>(jj)).get<double>();
      double y = 0.0;
      if (has_im) y = j.at("im").at(static_cast<size_t>(i)).at(static_cast<size_t>(jj)).get<double>();
      m.at(i, jj) = complexd(x, y);
    }
  }
  m.validate();
  return m;
}

namespace {

double off_diagonal_frobenius(const TracialMatrix& a) {
  double s = 0.0;
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) s += std::norm(a.at(i, j));
  return std::sqrt(s);
}

}  // namespace

HermitianEigen hermitian_eigen(const TracialMatrix& a, double rel_tol, int max_sweeps) {
  const int n = a.dim();
  TracialMatrix work = a;
  TracialMatrix v = TracialMatrix::identity(n, a.trace_weight());
  const double scale = work.frobenius();
  const double tol = rel_tol * (scale > 0.0 ? scale : 1.0);

  int sweep = 0;
  while (off_diagonal_frobenius(work) > tol) {
    if (++sweep > max_sweeps) throw numerical_error("Jacobi eigensolver did not converge");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const complexd apq = work.at(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        // diag(1, phase) turns the pivot real-positive, then a real rotation
        // annihilates it.
        const complexd phase = std::conj(apq) / r;
        const double app = work.at(p, p).real();
        const double aqq = work.at(q, q).real();
        const double theta = (app - aqq) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        // Unitary update: columns p,q mix with coefficients
        //   e_p' = cs e_p + phase sn e_q,  e_q' = -sn e_p + phase cs e_q.
        for (int i = 0; i < n; ++i) {
          const complexd aip = work.at(i, p);
          const complexd aiq = work.at(i, q);
          work.at(i, p) = cs * aip + phase * sn * aiq;
          work.at(i, q) = -sn * aip + phase * cs * aiq;
          const complexd vip = v.at(i, p);
          const complexd viq = v.at(i, q);
          v.at(i, p) = cs * vip + phase * sn * viq;
          v.at(i, q) = -sn * vip + phase * cs * viq;
        }
        const complexd cph = std::conj(phase);
        for (int jj = 0; jj < n; ++jj) {
          const complexd apj = work.at(p, jj);
          const complexd aqj = work.at(q, jj);
          work.at(p, jj) = cs * apj + cph * sn * aqj;
          work.at(q, jj) = -sn * apj + cph * cs * aqj;
        }
        work.at(p, q) = 0.0;
        work.at(q, p) = 0.0;
      }
    }
  }

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return work.at(i, i).real() > work.at(j, j).real();
  });

  HermitianEigen out;
  out.values.resize(static_cast<size_t>(n));
  out.vectors = TracialMatrix(n, a.trace_weight());
  for (int k = 0; k < n; ++k) {
    out.values[static_cast<size_t>(k)] = work.at(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]).real();
    for (int i = 0; i < n; ++i) out.vectors.at(i, k) = v.at(i, order[static_cast<size_t>(k)]);
  }
  return out;
}

TracialMatrix hermitian_sqrt(const TracialMatrix& g) {
  HermitianEigen eig = hermitian_eigen(g);
  const int n = g.dim();
  TracialMatrix r(n, g.trace_weight());
  for (int k = 0; k < n; ++k) {
    const double lam = std::max(eig.values[static_cast<size_t>(k)], 0.0);
    const double s = std::sqrt(lam);
    if (s == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      const complexd vik = eig.vectors.at(i, k);
      if (vik == complexd(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) += s * vik * std::conj(eig.vectors.at(j, k));
    }
  }
  return r;
}

void Fnv1a::add_bytes(const void* data, size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    state_ ^= p[i];
    state_ *= 1099511628211ull;
  }
}

void Fnv1a::add(double x) {
  uint64_t bits;
  std::memcpy(&bits, &x, sizeof bits);
  add_bytes(&bits, sizeof bits);
}

void Fnv1a::add(uint64_t x) { add_bytes(&x, sizeof x); }

void Fnv1a::add(const TracialMatrix& m) {
  add(static_cast<uint64_t>(m.dim()));
  add(m.trace_weight());
  for (const complexd& z : m.entries()) {
    add(z.real());
    add(z.imag());
  }
}

std::string Fnv1a::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  uint64_t v = state_;
  for (int i = 15; i >= 0; --i) {
    s[static_cast<size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace wonc
