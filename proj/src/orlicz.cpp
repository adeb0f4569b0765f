#include "wonc/orlicz.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace wonc {

namespace {

void require_finite_nonneg(double t, const char* what) {
  if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument(std::string(what) + " must be finite and nonnegative");
}

std::string format_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("bad numeric parameter in phi spec: " + std::string(s));
  return v;
}

}  // namespace

OrliczFunction::OrliczFunction(OrliczFamily f, double p1, double p2)
    : family_(f), p1_(p1), p2_(p2) {}

OrliczFunction OrliczFunction::power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("pow: requires p >= 1");
  return OrliczFunction(OrliczFamily::power, p, 0.0);
}

OrliczFunction OrliczFunction::power_log(double a, double b) {
  if (!(a > 1.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("plog: requires a > 1 and b > 0");
  return OrliczFunction(OrliczFamily::power_log, a, b);
}

OrliczFunction OrliczFunction::power_sin(double p, double c) {
  if (!(c > 0.0) || !(c < 0.5) || !std::isfinite(p) || !(p > 1.0 / (1.0 - 2.0 * c)))
    throw std::invalid_argument("psin: requires 0 < c < 1/2 and p > 1/(1-2c)");
  return OrliczFunction(OrliczFamily::power_sin, p, c);
}

OrliczFunction OrliczFunction::scaled_power(double lambda, double p) {
  if (!(lambda > 0.0) || !(p >= 1.0) || !std::isfinite(lambda) || !std::isfinite(p))
    throw std::invalid_argument("spow: requires lambda > 0 and p >= 1");
  return OrliczFunction(OrliczFamily::scaled_power, lambda, p);
}

OrliczFunction OrliczFunction::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("phi spec must look like family:params");
  const std::string family = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  std::vector<double> params;
  size_t pos = 0;
  while (pos <= rest.size()) {
    const size_t comma = rest.find(',', pos);
    const std::string_view tok(rest.data() + pos, (comma == std::string::npos ? rest.size() : comma) - pos);
    params.push_back(parse_double(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (family == "pow" && params.size() == 1) return power(params[0]);
  if (family == "plog" && params.size() == 2) return power_log(params[0], params[1]);
  if (family == "psin" && params.size() == 2) return power_sin(params[0], params[1]);
  if (family == "spow" && params.size() == 2) return scaled_power(params[0], params[1]);
  throw std::invalid_argument("unknown phi spec: " + spec);
}

std::string OrliczFunction::descriptor() const {
  switch (family_) {
    case OrliczFamily::power:
      return "pow:" + format_double(p1_);
    case OrliczFamily::power_log:
      return "plog:" + format_double(p1_) + "," + format_double(p2_);
    case OrliczFamily::power_sin:
      return "psin:" + format_double(p1_) + "," + format_double(p2_);
    case OrliczFamily::scaled_power:
      return "spow:" + format_double(p1_) + "," + format_double(p2_);
  }
  return "?";
}

double OrliczFunction::operator()(double t) const {
  require_finite_nonneg(t, "phi argument");
  if (t == 0.0) return 0.0;
  switch (family_) {
    case OrliczFamily::power:
      return std::pow(t, p1_);
    case OrliczFamily::power_log:
      return std::pow(t, p1_) * std::log1p(std::pow(t, p2_));
    case OrliczFamily::power_sin:
      return std::pow(t, p1_) * (1.0 + p2_ * std::sin(p1_ * std::log(t)));
    case OrliczFamily::scaled_power:
      return p1_ * std::pow(t, p2_);
  }
  return 0.0;
}

double OrliczFunction::derivative(double t) const {
  if (!std::isfinite(t) || t <= 0.0) throw std::invalid_argument("phi derivative requires t > 0");
  switch (family_) {
    case OrliczFamily::power:
      return p1_ * std::pow(t, p1_ - 1.0);
    case OrliczFamily::power_log: {
      const double u = std::pow(t, p2_);
      return std::pow(t, p1_ - 1.0) * (p1_ * std::log1p(u) + p2_ * u / (1.0 + u));
    }
    case OrliczFamily::power_sin: {
      const double w = p1_ * std::log(t);
      return p1_ * std::pow(t, p1_ - 1.0) * (1.0 + p2_ * std::sin(w) + p2_ * std::cos(w));
    }
    case OrliczFamily::scaled_power:
      return p1_ * p2_ * std::pow(t, p2_ - 1.0);
  }
  return 0.0;
}

double OrliczFunction::inverse(double u) const {
  require_finite_nonneg(u, "phi inverse argument");
  if (u == 0.0) return 0.0;
  switch (family_) {
    case OrliczFamily::power:
      return std::pow(u, 1.0 / p1_);
    case OrliczFamily::scaled_power:
      return std::pow(u / p1_, 1.0 / p2_);
    default:
      break;
  }
  // Bracket by doubling from [0, 1], then bisect to 1e-12 relative width.
  double lo = 0.0;
  double hi = 1.0;
  int guard = 0;
  while ((*this)(hi) < u) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 2400) throw std::invalid_argument("phi inverse bracket overflow");
  }
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if ((*this)(mid) < u)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double OrliczFunction::index_ratio(double t) const {
  if (!std::isfinite(t) || t <= 0.0) throw std::invalid_argument("index ratio requires t > 0");
  switch (family_) {
    case OrliczFamily::power:
      return p1_;
    case OrliczFamily::power_log: {
      const double u = std::pow(t, p2_);
      const double l = std::log1p(u);
      return p1_ + p2_ * u / ((1.0 + u) * l);
    }
    case OrliczFamily::power_sin: {
      const double w = p1_ * std::log(t);
      return p1_ * (1.0 + p2_ * std::sin(w) + p2_ * std::cos(w)) / (1.0 + p2_ * std::sin(w));
    }
    case OrliczFamily::scaled_power:
      return p2_;
  }
  return 1.0;
}

std::optional<OrliczIndices> OrliczFunction::closed_form_indices() const {
  OrliczIndices ix;
  ix.method = IndexMethod::closed_form;
  switch (family_) {
    case OrliczFamily::power:
      ix.lower = ix.upper = p1_;
      return ix;
    case OrliczFamily::power_log:
      ix.lower = p1_;
      ix.upper = p1_ + p2_;
      return ix;
    case OrliczFamily::scaled_power:
      ix.lower = ix.upper = p2_;
      return ix;
    case OrliczFamily::power_sin:
      // The pointwise ratio oscillates around p; no closed interval is
      // published for this family.
      return std::nullopt;
  }
  return std::nullopt;
}

OrliczIndices OrliczFunction::estimate_indices(double grid_min, double grid_max, int points) const {
  if (!(grid_min > 0.0) || !(grid_max > grid_min) || points < 2)
    throw std::invalid_argument("index grid requires 0 < min < max and points >= 2");
  OrliczIndices ix;
  ix.method = IndexMethod::grid_estimate;
  ix.grid_min = grid_min;
  ix.grid_max = grid_max;
  ix.points = points;
  const double lmin = std::log(grid_min);
  const double lmax = std::log(grid_max);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < points; ++i) {
    const double t = std::exp(lmin + (lmax - lmin) * i / (points - 1));
    const double r = index_ratio(t);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  ix.lower = lo;
  ix.upper = hi;
  return ix;
}

Delta2Result OrliczFunction::delta2() const {
  Delta2Result out;
  const OrliczIndices ix = closed_form_indices().value_or(estimate_indices());
  out.satisfied = std::isfinite(ix.upper);
  const double lmin = std::log(1e-12);
  const double lmax = std::log(1e16);
  const int points = 4096;
  double witness = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = std::exp(lmin + (lmax - lmin) * i / (points - 1));
    const double denom = (*this)(t);
    if (denom <= 0.0) throw std::invalid_argument("phi vanished at positive t");
    witness = std::max(witness, (*this)(2.0 * t) / denom);
  }
  out.witness = witness;
  return out;
}

}  // namespace wonc
