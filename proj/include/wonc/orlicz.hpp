#pragma once

#include <optional>
#include <string>

namespace wonc {

enum class OrliczFamily { power, power_log, power_sin, scaled_power };

enum class IndexMethod { closed_form, grid_estimate };

struct OrliczIndices {
  double lower = 1.0;  // inf of t phi'(t)/phi(t)
  double upper = 1.0;  // sup of t phi'(t)/phi(t)
  IndexMethod method = IndexMethod::closed_form;
  double grid_min = 0.0;
  double grid_max = 0.0;
  int points = 0;
};

struct Delta2Result {
  bool satisfied = false;
  double witness = 0.0;  // sup over the probe grid of phi(2t)/phi(t)
};

// Convex increasing functions from a closed family list:
//   pow:p       t^p                          (p >= 1)
//   plog:a,b    t^a log(1 + t^b)             (a > 1, b > 0)
//   psin:p,c    t^p (1 + c sin(p log t))     (0 < c < 1/2, p > 1/(1-2c))
//   spow:l,p    l t^p                        (l > 0, p >= 1)
// Evaluation, derivative and the index ratio t phi'/phi are closed-form per
// family; the inverse falls back to bracketing + bisection where no closed
// form exists.
class OrliczFunction {
 public:
  static OrliczFunction power(double p);
  static OrliczFunction power_log(double a, double b);
  static OrliczFunction power_sin(double p, double c);
  static OrliczFunction scaled_power(double lambda, double p);

  // Mini-language: pow:2, plog:2,1, psin:4,0.1, spow:5,2.
  static OrliczFunction parse(const std::string& spec);
  std::string descriptor() const;

  OrliczFamily family() const { return family_; }
  double param1() const { return p1_; }
  double param2() const { return p2_; }

  double operator()(double t) const;   // throws on negative/non-finite t
  double derivative(double t) const;   // throws on t <= 0
  double inverse(double u) const;      // throws on negative/non-finite u
  double index_ratio(double t) const;  // t phi'(t) / phi(t), t > 0

  std::optional<OrliczIndices> closed_form_indices() const;
  OrliczIndices estimate_indices(double grid_min = 1e-12, double grid_max = 1e16,
                                 int points = 4096) const;
  Delta2Result delta2() const;

 private:
  OrliczFunction(OrliczFamily f, double p1, double p2);
  OrliczFamily family_;
  double p1_;  // pow: p   plog: a   psin: p       spow: lambda
  double p2_;  // pow: -   plog: b   psin: c       spow: p
};

}  // namespace wonc
