#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wonc/linalg.hpp"

namespace wonc {

// Threefry-2x64-20 block cipher used as a stateless counter-based generator:
// every drawn value is a pure function of (key, counter), so corpora can be
// produced in any order or on any worker count with identical bytes.
std::array<uint64_t, 2> threefry2x64(uint64_t k0, uint64_t k1, uint64_t c0, uint64_t c1);

// Uniform in [0,1) from 53 high bits.
double uniform_from_bits(uint64_t bits);

// Standard normal pair via Box-Muller from one cipher block.
std::array<double, 2> gaussian_pair(uint64_t k0, uint64_t k1, uint64_t c0, uint64_t c1);

enum class Ensemble { complex_ginibre, hermitian_gaussian, diagonal_loguniform, unitary };

const char* ensemble_name(Ensemble e);
Ensemble parse_ensemble(const std::string& name);

struct CorpusSpec {
  uint64_t seed = 0;
  int instances = 1;
  int dim = 2;
  Ensemble ensemble = Ensemble::complex_ginibre;
  double scale = 1.0;

  nlohmann::json to_json() const;
  static CorpusSpec from_json(const nlohmann::json& j);
};

// Matrix `slot` of instance `instance` under the spec. Entries are keyed by
// (seed, instance, slot * 2^32 + entry), so multi-matrix instances draw from
// disjoint counter ranges.
TracialMatrix generate_matrix(const CorpusSpec& spec, uint64_t instance, uint64_t slot = 0);

std::vector<TracialMatrix> generate_corpus(const CorpusSpec& spec);

}  // namespace wonc
