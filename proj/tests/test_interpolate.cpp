#include <doctest.h>

#include <cmath>

#include "wonc/interpolate.hpp"
#include "wonc/rng.hpp"

using wonc::CorpusSpec;
using wonc::Ensemble;
using wonc::OrliczFunction;
using wonc::QuasilinearOperator;
using wonc::SingularSpectrum;
using wonc::TracialMatrix;

namespace {

std::vector<TracialMatrix> small_corpus(uint64_t seed, int count, int dim) {
  CorpusSpec spec{seed, count, dim, Ensemble::complex_ginibre, 1.0};
  return wonc::generate_corpus(spec);
}

const OrliczFunction kPlog21 = OrliczFunction::power_log(2.0, 1.0);

}  // namespace

TEST_CASE("averaged spectrum basics") {
  // constant spectra are fixed points
  const SingularSpectrum flat = SingularSpectrum::from_pairs({{2.0, 0.5}});
  const SingularSpectrum averaged = wonc::hardy_average_spectrum(flat);
  REQUIRE(averaged.steps() == 1);
  CHECK(averaged.values()[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(averaged.weights()[0] == doctest::Approx(0.5).epsilon(1e-14));

  // the matrix example: averaged value at the full mass point is the mean
  const SingularSpectrum s =
      wonc::singular_spectrum(TracialMatrix::diagonal({3.0, 2.0, 1.0}, 1.0 / 3.0));
  const SingularSpectrum a = wonc::hardy_average_spectrum(s);
  CHECK(a.mu(1.0 - 1e-9) == doctest::Approx(wonc::hardy_average(s, 1.0)).epsilon(1e-12));

  // zero maps to zero
  CHECK(wonc::hardy_average_spectrum(SingularSpectrum{}).is_zero());

  // domination by the continuous average, value by value
  for (size_t i = 0; i < a.steps(); ++i)
    CHECK(a.values()[i] <= wonc::hardy_average(s, a.cumulative()[i] - 1e-12) * (1.0 + 1e-12));
}

TEST_CASE("weak type checks") {
  const auto corpus = [] {
    auto c = small_corpus(701, 12, 4);
    // include a scalar so the identity ratio attains one exactly
    c.push_back(TracialMatrix::identity(4, 0.25).scaled(wonc::complexd(1.3, 0.0)));
    return c;
  }();

  const QuasilinearOperator id = wonc::identity_operator();
  for (double p : {1.5, 2.0, 4.0}) {
    const auto check = wonc::verify_weak_type(id, p, corpus);
    CHECK(check.max_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(check.max_ratio <= 1.0 + 1e-9);
  }

  // doubling the operator doubles the constant
  QuasilinearOperator twice = wonc::identity_operator();
  twice.matrix_map = [](const TracialMatrix& x) { return x.scaled(2.0); };
  const auto doubled = wonc::verify_weak_type(twice, 2.0, corpus);
  const auto base = wonc::verify_weak_type(id, 2.0, corpus);
  CHECK(doubled.max_ratio == doctest::Approx(2.0 * base.max_ratio).epsilon(1e-12));

  // conditional expectation is an l2 contraction
  const auto ce_corpus = small_corpus(702, 12, 8);
  const auto ce = wonc::verify_weak_type(wonc::condexp_operator(3, 0), 2.0, ce_corpus);
  CHECK(ce.max_ratio <= 1.0 + 1e-9);

  // zero instances are skipped and counted
  auto with_zero = small_corpus(703, 3, 4);
  with_zero.push_back(TracialMatrix::zero(4, 0.25));
  const auto skip = wonc::verify_weak_type(id, 2.0, with_zero);
  CHECK(skip.skipped == 1);
}

TEST_CASE("averaging operator certificates hold out of sample") {
  const QuasilinearOperator hardy = wonc::hardy_average_operator();
  for (const wonc::CertifiedWeakType& wt : hardy.certified_weak_types) {
    const auto check = wonc::verify_weak_type(hardy, wt.p, small_corpus(711, 24, 6));
    CHECK(check.max_ratio <= wt.constant * (1.0 + 1e-9));
  }
}

TEST_CASE("interpolation ratios for exact operators") {
  const auto corpus = small_corpus(721, 16, 4);
  const auto id_out = wonc::verify_interpolation(wonc::identity_operator(), kPlog21, corpus);
  CHECK(id_out.max_ratio == 1.0);
  const auto adj_out = wonc::verify_interpolation(wonc::adjoint_operator(), kPlog21, corpus);
  CHECK(adj_out.max_ratio == 1.0);
  for (const auto& inst : id_out.instances)
    if (!inst.skipped) CHECK(inst.ratio == 1.0);
}

TEST_CASE("interpolation sandwich precondition") {
  const auto corpus = small_corpus(731, 4, 4);
  // plog:3,1 has indices (3, 4); the certified types {3/2, 4} do not bracket it
  CHECK_THROWS_AS(wonc::verify_interpolation(wonc::identity_operator(),
                                             OrliczFunction::power_log(3.0, 1.0), corpus),
                  std::invalid_argument);
}

TEST_CASE("interpolation over the averaging operator stays bounded") {
  const auto out =
      wonc::verify_interpolation(wonc::hardy_average_operator(), kPlog21, small_corpus(741, 32, 6));
  CHECK(out.max_ratio > 0.0);
  CHECK(std::isfinite(out.max_ratio));
  // the average dominates the input distribution pointwise
  CHECK(out.max_ratio >= 1.0 - 1e-12);
}

TEST_CASE("distribution split bound for linear operators") {
  const auto corpus = small_corpus(751, 24, 8);
  for (const QuasilinearOperator& op :
       {wonc::identity_operator(), wonc::condexp_operator(3, 1)}) {
    const auto out = wonc::verify_interpolation(op, kPlog21, corpus);
    for (const auto& inst : out.instances) {
      if (inst.skipped || inst.lamb1_ratio < 0.0) continue;
      CHECK(inst.lamb1_ratio <= 1.0);
    }
  }
}

TEST_CASE("scale invariance of power-family interpolation ratios") {
  const auto corpus = small_corpus(761, 6, 4);
  std::vector<TracialMatrix> doubled;
  for (const TracialMatrix& x : corpus) doubled.push_back(x.scaled(2.0));
  const OrliczFunction pow2 = OrliczFunction::power(2.0);
  const auto a = wonc::verify_interpolation(wonc::hardy_average_operator(), pow2, corpus);
  const auto b = wonc::verify_interpolation(wonc::hardy_average_operator(), pow2, doubled);
  REQUIRE(a.instances.size() == b.instances.size());
  for (size_t i = 0; i < a.instances.size(); ++i)
    CHECK(a.instances[i].ratio == doctest::Approx(b.instances[i].ratio).epsilon(1e-10));
}

TEST_CASE("scale robustness of the verdict for the log family") {
  // Per-instance ratios move under scaling for non-power phi, but the
  // corpus maximum stays within the envelope headroom across two octaves.
  const auto corpus = small_corpus(771, 24, 4);
  const QuasilinearOperator hardy = wonc::hardy_average_operator();
  const double base = wonc::verify_interpolation(hardy, kPlog21, corpus).max_ratio;
  for (double scale : {0.25, 4.0}) {
    std::vector<TracialMatrix> scaled;
    for (const TracialMatrix& x : corpus) scaled.push_back(x.scaled(scale));
    const double moved = wonc::verify_interpolation(hardy, kPlog21, scaled).max_ratio;
    CHECK(moved <= base * 1.5);
    CHECK(moved >= base / 1.5);
  }
}

TEST_CASE("proof decomposition delegates to the spectral split") {
  const TracialMatrix x = TracialMatrix::diagonal({3.0, 2.0, 1.0}, 1.0 / 3.0);
  auto [head, tail] = wonc::proof_decomposition(x, 1.5);
  CHECK(head.at(0, 0).real() == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(tail.at(2, 2) - 1.0) <= 1e-12);
}
