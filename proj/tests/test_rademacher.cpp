#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "wonc/errors.hpp"
#include "wonc/norms.hpp"
#include "wonc/rademacher.hpp"
#include "wonc/rng.hpp"

using wonc::CorpusSpec;
using wonc::Ensemble;
using wonc::OrliczFunction;
using wonc::RademacherSystem;
using wonc::SingularSpectrum;
using wonc::TracialMatrix;

namespace {

TracialMatrix random_matrix(uint64_t seed, int dim, uint64_t slot = 0,
                            Ensemble e = Ensemble::complex_ginibre) {
  CorpusSpec spec{seed, 1, dim, e, 1.0};
  return wonc::generate_matrix(spec, 0, slot);
}

RademacherSystem random_system(uint64_t seed, int k, int dim) {
  RademacherSystem sys;
  for (int i = 0; i < k; ++i)
    sys.coefficients.push_back(random_matrix(seed, dim, static_cast<uint64_t>(i)));
  return sys;
}

bool spectra_close(const SingularSpectrum& a, const SingularSpectrum& b, double tol) {
  if (a.steps() != b.steps()) return false;
  for (size_t i = 0; i < a.steps(); ++i) {
    if (std::abs(a.values()[i] - b.values()[i]) > tol * std::max(1.0, a.values()[i]))
      return false;
    if (std::abs(a.weights()[i] - b.weights()[i]) > 1e-12) return false;
  }
  return true;
}

const OrliczFunction kPow2 = OrliczFunction::power(2.0);

}  // namespace

TEST_CASE("single-variable system reproduces the coefficient spectrum") {
  RademacherSystem sys;
  sys.coefficients.push_back(random_matrix(401, 4));
  const SingularSpectrum expansion = wonc::rademacher_spectrum(sys);
  const SingularSpectrum direct = wonc::singular_spectrum(sys.coefficients[0]);
  CHECK(spectra_close(expansion, direct, 1e-12));
}

TEST_CASE("orthogonal supports collapse to the identity spectrum") {
  RademacherSystem sys;
  sys.coefficients.push_back(TracialMatrix::diagonal({1.0, 0.0}, 0.5));
  sys.coefficients.push_back(TracialMatrix::diagonal({0.0, 1.0}, 0.5));
  const SingularSpectrum s = wonc::rademacher_spectrum(sys);
  REQUIRE(s.steps() == 1);
  CHECK(s.values()[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.weights()[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(wonc::khintchine_lhs(sys, kPow2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(wonc::rc_sum_norm(sys, kPow2) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("expansion spectrum equals the assembled block matrix spectrum") {
  for (uint64_t seed : {411u, 412u}) {
    const RademacherSystem sys = random_system(seed, 2, 3);
    const SingularSpectrum via_sum = wonc::rademacher_spectrum(sys);
    const SingularSpectrum via_block = wonc::singular_spectrum(wonc::assembled_block_matrix(sys));
    CHECK(spectra_close(via_sum, via_block, 1e-10));
  }
}

TEST_CASE("sign flips and permutations leave the spectrum unchanged") {
  const RademacherSystem sys = random_system(421, 3, 3);
  RademacherSystem flipped = sys;
  flipped.coefficients[1] = flipped.coefficients[1].scaled(-1.0);
  CHECK(spectra_close(wonc::rademacher_spectrum(sys), wonc::rademacher_spectrum(flipped), 1e-12));

  RademacherSystem permuted = sys;
  std::swap(permuted.coefficients[0], permuted.coefficients[2]);
  CHECK(spectra_close(wonc::rademacher_spectrum(sys), wonc::rademacher_spectrum(permuted), 1e-12));
}

TEST_CASE("scaling the system scales the spectrum") {
  const RademacherSystem sys = random_system(431, 2, 3);
  RademacherSystem doubled = sys;
  for (TracialMatrix& x : doubled.coefficients) x = x.scaled(2.0);
  const SingularSpectrum a = wonc::rademacher_spectrum(sys);
  const SingularSpectrum b = wonc::rademacher_spectrum(doubled);
  REQUIRE(a.steps() == b.steps());
  for (size_t i = 0; i < a.steps(); ++i)
    CHECK(b.values()[i] == doctest::Approx(2.0 * a.values()[i]).epsilon(1e-12));
}

TEST_CASE("rademacher l2 orthogonality") {
  const RademacherSystem sys = random_system(441, 4, 4);
  double sum_sq = 0.0;
  for (const TracialMatrix& x : sys.coefficients) sum_sq += x.l2_norm() * x.l2_norm();
  const double l2 = wonc::rademacher_spectrum(sys).lp_norm(2.0);
  CHECK(l2 * l2 == doctest::Approx(sum_sq).epsilon(1e-10));
}

TEST_CASE("zero system vanishes everywhere") {
  RademacherSystem zero;
  zero.coefficients.push_back(TracialMatrix::zero(3, 1.0 / 3.0));
  zero.coefficients.push_back(TracialMatrix::zero(3, 1.0 / 3.0));
  CHECK(wonc::khintchine_lhs(zero, kPow2) == 0.0);
  CHECK(wonc::rc_sum_norm(zero, kPow2) == 0.0);
}

TEST_CASE("hermitian single-coefficient ratio is one half") {
  RademacherSystem sys;
  sys.coefficients.push_back(random_matrix(451, 4, 0, Ensemble::hermitian_gaussian));
  const OrliczFunction plog31 = OrliczFunction::power_log(3.0, 1.0);
  const double lhs = wonc::khintchine_lhs(sys, plog31);
  const double rhs = wonc::rc_sum_norm(sys, plog31);
  CHECK(lhs / rhs == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("decomposition bound basics") {
  const OrliczFunction low = OrliczFunction::power_log(1.2, 0.5);
  const RademacherSystem sys = random_system(461, 3, 3);
  const double trivial = wonc::decomposition_infimum_bound(sys, low, 0);
  const double col = wonc::phi_moment(wonc::column_square_spectrum(sys.coefficients), low).value;
  const double row = wonc::phi_moment(wonc::row_square_spectrum(sys.coefficients), low).value;
  CHECK(trivial == doctest::Approx(std::min(col, row)).epsilon(1e-12));
  CHECK(wonc::decomposition_infimum_bound(sys, low, 60) <= trivial * (1.0 + 1e-12));
}

TEST_CASE("resource limits and validation") {
  RademacherSystem big;
  for (int i = 0; i < 13; ++i) big.coefficients.push_back(TracialMatrix::identity(2, 0.5));
  CHECK_THROWS_AS(wonc::rademacher_spectrum(big), wonc::resource_limit_error);

  RademacherSystem empty;
  CHECK_THROWS_AS(wonc::rademacher_spectrum(empty), std::invalid_argument);

  RademacherSystem mixed;
  mixed.coefficients.push_back(TracialMatrix::identity(2, 0.5));
  mixed.coefficients.push_back(TracialMatrix::identity(3, 1.0 / 3.0));
  CHECK_THROWS_AS(wonc::rademacher_spectrum(mixed), std::invalid_argument);
}
