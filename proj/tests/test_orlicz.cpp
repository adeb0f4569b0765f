#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wonc/orlicz.hpp"

using wonc::OrliczFunction;

namespace {

const std::vector<double> kProbeGrid = [] {
  std::vector<double> g;
  for (int i = 0; i < 60; ++i) g.push_back(std::pow(10.0, -6.0 + 12.0 * i / 59.0));
  return g;
}();

std::vector<OrliczFunction> all_families() {
  return {OrliczFunction::power(1.0),        OrliczFunction::power(2.0),
          OrliczFunction::power(3.5),        OrliczFunction::power_log(2.0, 1.0),
          OrliczFunction::power_log(3.0, 1.0), OrliczFunction::power_log(1.2, 0.5),
          OrliczFunction::power_sin(4.0, 0.1), OrliczFunction::scaled_power(5.0, 2.0)};
}

}  // namespace

TEST_CASE("evaluation basics") {
  CHECK(OrliczFunction::power(2.0)(3.0) == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(OrliczFunction::power(3.0)(0.0) == 0.0);
  CHECK(OrliczFunction::power_log(2.0, 1.0)(1.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(OrliczFunction::power(2.0)(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(OrliczFunction::power(2.0)(std::nan("")), std::invalid_argument);
}

TEST_CASE("derivative matches closed forms and finite differences") {
  CHECK(OrliczFunction::power(2.0).derivative(3.0) == doctest::Approx(6.0).epsilon(1e-14));
  for (double t : {0.5, 1.0, 7.0}) CHECK(OrliczFunction::power(1.0).derivative(t) == 1.0);
  CHECK(OrliczFunction::power_log(2.0, 1.0).derivative(1.0) ==
        doctest::Approx(2.0 * std::log(2.0) + 0.5).epsilon(1e-14));
  CHECK_THROWS_AS(OrliczFunction::power(2.0).derivative(0.0), std::invalid_argument);

  for (const OrliczFunction& phi : all_families()) {
    for (double t : kProbeGrid) {
      const double h = t * 1e-6;
      const double fd = (phi(t + h) - phi(t - h)) / (2.0 * h);
      CHECK(phi.derivative(t) == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("inverse round trips") {
  CHECK(OrliczFunction::power(2.0).inverse(9.0) == doctest::Approx(3.0).epsilon(1e-12));
  for (const OrliczFunction& phi : all_families()) {
    CHECK(phi.inverse(0.0) == 0.0);
    for (double t : kProbeGrid)
      CHECK(phi.inverse(phi(t)) == doctest::Approx(t).epsilon(1e-10));
  }
  CHECK(OrliczFunction::power_log(2.0, 1.0).inverse(std::log(2.0)) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("closed-form indices") {
  auto p2 = OrliczFunction::power(2.0).closed_form_indices();
  REQUIRE(p2.has_value());
  CHECK(p2->lower == 2.0);
  CHECK(p2->upper == 2.0);

  auto plog = OrliczFunction::power_log(2.0, 1.0).closed_form_indices();
  REQUIRE(plog.has_value());
  CHECK(plog->lower == 2.0);
  CHECK(plog->upper == 3.0);

  CHECK_FALSE(OrliczFunction::power_sin(4.0, 0.1).closed_form_indices().has_value());

  auto spow = OrliczFunction::scaled_power(5.0, 2.0).closed_form_indices();
  REQUIRE(spow.has_value());
  CHECK(spow->lower == 2.0);
  CHECK(spow->upper == 2.0);
}

TEST_CASE("grid index estimates") {
  const auto pow3 = OrliczFunction::power(3.0).estimate_indices(1e-8, 1e8, 1024);
  CHECK(pow3.lower == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(pow3.upper == doctest::Approx(3.0).epsilon(1e-12));

  const auto plog = OrliczFunction::power_log(2.0, 1.0).estimate_indices();
  CHECK(plog.lower >= 2.0);
  CHECK(plog.lower <= 2.06);
  CHECK(plog.upper >= 2.97);
  CHECK(plog.upper <= 3.0);

  const auto spow = OrliczFunction::scaled_power(5.0, 2.0).estimate_indices(1e-6, 1e6, 256);
  CHECK(spow.lower == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(spow.upper == doctest::Approx(2.0).epsilon(1e-12));

  // Monotone-ratio families: the endpoints carry the extremes, so doubling
  // the point count moves nothing.
  for (const char* spec : {"pow:2", "plog:2,1", "spow:5,2"}) {
    const OrliczFunction phi = OrliczFunction::parse(spec);
    const auto coarse = phi.estimate_indices(1e-10, 1e10, 512);
    const auto fine = phi.estimate_indices(1e-10, 1e10, 1024);
    CHECK(std::abs(coarse.lower - fine.lower) <= 1e-12 * std::abs(coarse.lower) + 1e-12);
    CHECK(std::abs(coarse.upper - fine.upper) <= 1e-12 * std::abs(coarse.upper) + 1e-12);
  }
  // Oscillating family: refinement can only widen, and stays near converged
  // at high point counts.
  const OrliczFunction psin = OrliczFunction::power_sin(4.0, 0.1);
  const auto coarse = psin.estimate_indices(1e-10, 1e10, 4096);
  const auto fine = psin.estimate_indices(1e-10, 1e10, 8192);
  CHECK(fine.lower <= coarse.lower + 1e-12);
  CHECK(fine.upper >= coarse.upper - 1e-12);
  CHECK(coarse.lower - fine.lower <= 1e-3);
  CHECK(fine.upper - coarse.upper <= 1e-3);
}

TEST_CASE("index ratio agrees with derivative route") {
  for (const OrliczFunction& phi : all_families())
    for (double t : kProbeGrid)
      CHECK(phi.index_ratio(t) ==
            doctest::Approx(t * phi.derivative(t) / phi(t)).epsilon(1e-12));
}

TEST_CASE("delta-2 witnesses") {
  const auto p2 = OrliczFunction::power(2.0).delta2();
  CHECK(p2.satisfied);
  CHECK(p2.witness == doctest::Approx(4.0).epsilon(1e-12));

  const auto p1 = OrliczFunction::power(1.0).delta2();
  CHECK(p1.satisfied);
  CHECK(p1.witness == doctest::Approx(2.0).epsilon(1e-12));

  const auto plog = OrliczFunction::power_log(2.0, 1.0).delta2();
  CHECK(plog.satisfied);
  CHECK(plog.witness <= 8.0);
  CHECK(plog.witness > 4.0);
}

TEST_CASE("convexity and growth properties on probe grids") {
  for (const OrliczFunction& phi : all_families()) {
    // midpoint convexity over grid pairs
    for (size_t i = 0; i < kProbeGrid.size(); i += 7) {
      for (size_t j = i; j < kProbeGrid.size(); j += 7) {
        const double s = kProbeGrid[i], t = kProbeGrid[j];
        CHECK(phi(0.5 * (s + t)) <= 0.5 * (phi(s) + phi(t)) * (1.0 + 1e-12));
      }
    }
    // phi(t)/t nondecreasing
    for (size_t i = 0; i + 1 < kProbeGrid.size(); ++i) {
      const double a = kProbeGrid[i], b = kProbeGrid[i + 1];
      CHECK(phi(a) / a <= phi(b) / b * (1.0 + 1e-12));
    }
    // phi(at) <= a phi(t) for a in (0, 1]
    for (double a : {0.1, 0.5, 0.9, 1.0})
      for (double t : kProbeGrid) CHECK(phi(a * t) <= a * phi(t) * (1.0 + 1e-12));
  }
}

TEST_CASE("index monotonicity characterization for closed forms") {
  for (const char* spec : {"pow:2", "plog:2,1", "spow:5,2"}) {
    const OrliczFunction phi = OrliczFunction::parse(spec);
    const auto ix = phi.closed_form_indices();
    REQUIRE(ix.has_value());
    for (size_t i = 0; i + 1 < kProbeGrid.size(); ++i) {
      const double a = kProbeGrid[i], b = kProbeGrid[i + 1];
      // t^-lower phi(t) nondecreasing, t^-upper phi(t) nonincreasing
      CHECK(phi(a) / std::pow(a, ix->lower) <= phi(b) / std::pow(b, ix->lower) * (1.0 + 1e-10));
      CHECK(phi(a) / std::pow(a, ix->upper) >= phi(b) / std::pow(b, ix->upper) * (1.0 - 1e-10));
    }
  }
}

TEST_CASE("parser and descriptors") {
  CHECK(OrliczFunction::parse("pow:2").descriptor() == "pow:2");
  CHECK(OrliczFunction::parse("plog:2,1").descriptor() == "plog:2,1");
  CHECK(OrliczFunction::parse("plog:1.2,0.5").descriptor() == "plog:1.2,0.5");
  CHECK(OrliczFunction::parse("psin:4,0.1").descriptor() == "psin:4,0.1");
  CHECK(OrliczFunction::parse("spow:5,2").descriptor() == "spow:5,2");
  CHECK_THROWS_AS(OrliczFunction::parse("pow:0.5"), std::invalid_argument);
  CHECK_THROWS_AS(OrliczFunction::parse("plog:1,1"), std::invalid_argument);
  CHECK_THROWS_AS(OrliczFunction::parse("psin:2,0.4"), std::invalid_argument);
  CHECK_THROWS_AS(OrliczFunction::parse("nope:1"), std::invalid_argument);
  CHECK_THROWS_AS(OrliczFunction::parse("pow:abc"), std::invalid_argument);
}
