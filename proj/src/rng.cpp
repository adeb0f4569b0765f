#include "wonc/rng.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace wonc {

namespace {

constexpr uint64_t kParity = 0x1BD11BDAA9FC1A22ull;
constexpr int kRotations[8] = {16, 42, 12, 31, 16, 32, 24, 21};

inline uint64_t rotl64(uint64_t x, int r) { return (x << r) | (x >> (64 - r)); }

// Stream tag separating this generator's keys from any other use of the seed.
constexpr uint64_t kStreamTag = 0x574f4e4331ull;

}  // namespace

std::array<uint64_t, 2> threefry2x64(uint64_t k0, uint64_t k1, uint64_t c0, uint64_t c1) {
  const uint64_t ks[3] = {k0, k1, kParity ^ k0 ^ k1};
  uint64_t x0 = c0 + ks[0];
  uint64_t x1 = c1 + ks[1];
  for (int round = 0; round < 20; ++round) {
    x0 += x1;
    x1 = rotl64(x1, kRotations[round % 8]);
    x1 ^= x0;
    if ((round + 1) % 4 == 0) {
      const uint64_t s = static_cast<uint64_t>((round + 1) / 4);
      x0 += ks[s % 3];
      x1 += ks[(s + 1) % 3] + s;
    }
  }
  return {x0, x1};
}

double uniform_from_bits(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::array<double, 2> gaussian_pair(uint64_t k0, uint64_t k1, uint64_t c0, uint64_t c1) {
  const auto block = threefry2x64(k0, k1, c0, c1);
  // (0,1] for the log argument, [0,1) for the angle.
  const double u1 = static_cast<double>((block[0] >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform_from_bits(block[1]);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

const char* ensemble_name(Ensemble e) {
  switch (e) {
    case Ensemble::complex_ginibre: return "complex-ginibre";
    case Ensemble::hermitian_gaussian: return "hermitian-gaussian";
    case Ensemble::diagonal_loguniform: return "diagonal-loguniform";
    case Ensemble::unitary: return "unitary";
  }
  return "?";
}

Ensemble parse_ensemble(const std::string& name) {
  if (name == "complex-ginibre") return Ensemble::complex_ginibre;
  if (name == "hermitian-gaussian") return Ensemble::hermitian_gaussian;
  if (name == "diagonal-loguniform") return Ensemble::diagonal_loguniform;
  if (name == "unitary") return Ensemble::unitary;
  throw std::invalid_argument("unknown ensemble: " + name);
}

nlohmann::json CorpusSpec::to_json() const {
  return nlohmann::json{{"seed", seed},
                        {"instances", instances},
                        {"dim", dim},
                        {"ensemble", ensemble_name(ensemble)},
                        {"scale", scale}};
}

CorpusSpec CorpusSpec::from_json(const nlohmann::json& j) {
  CorpusSpec spec;
  spec.seed = j.at("seed").get<uint64_t>();
  spec.instances = j.at("instances").get<int>();
  spec.dim = j.at("dim").get<int>();
  spec.ensemble = parse_ensemble(j.at("ensemble").get<std::string>());
  spec.scale = j.contains("scale") ? j.at("scale").get<double>() : 1.0;
  if (spec.instances < 1 || spec.dim < 1 || !(spec.scale > 0.0))
    throw std::invalid_argument("corpus spec requires instances >= 1, dim >= 1, scale > 0");
  return spec;
}

namespace {

// One standard complex Gaussian (E|z|^2 = 1) per entry counter.
complexd complex_gaussian(uint64_t seed, uint64_t instance, uint64_t entry) {
  const auto g = gaussian_pair(seed, kStreamTag, instance, entry);
  return complexd(g[0], g[1]) * M_SQRT1_2;
}

TracialMatrix ginibre(const CorpusSpec& spec, uint64_t instance, uint64_t base) {
  const int n = spec.dim;
  TracialMatrix m(n, 1.0 / n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = complex_gaussian(spec.seed, instance,
                                    base + static_cast<uint64_t>(i) * n + static_cast<uint64_t>(j));
  return m;
}

TracialMatrix unitary_from_ginibre(TracialMatrix g) {
  // Modified Gram-Schmidt with a second orthogonalization pass. The diagonal
  // of R stays positive, which fixes the phase of every column.
  const int n = g.dim();
  TracialMatrix q(n, g.trace_weight());
  for (int j = 0; j < n; ++j) {
    std::vector<complexd> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = g.at(i, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < j; ++k) {
        complexd proj = 0.0;
        for (int i = 0; i < n; ++i) proj += std::conj(q.at(i, k)) * v[static_cast<size_t>(i)];
        for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] -= proj * q.at(i, k);
      }
    }
    double norm = 0.0;
    for (const complexd& z : v) norm += std::norm(z);
    norm = std::sqrt(norm);
    if (norm == 0.0) throw std::invalid_argument("degenerate unitary draw");
    for (int i = 0; i < n; ++i) q.at(i, j) = v[static_cast<size_t>(i)] / norm;
  }
  return q;
}

}  // namespace

TracialMatrix generate_matrix(const CorpusSpec& spec, uint64_t instance, uint64_t slot) {
  if (spec.instances < 1 || spec.dim < 1 || !(spec.scale > 0.0))
    throw std::invalid_argument("corpus spec requires instances >= 1, dim >= 1, scale > 0");
  const uint64_t base = slot << 32;
  const int n = spec.dim;
  TracialMatrix m(n, 1.0 / n);
  switch (spec.ensemble) {
    case Ensemble::complex_ginibre:
      m = ginibre(spec, instance, base);
      break;
    case Ensemble::hermitian_gaussian: {
      const TracialMatrix g = ginibre(spec, instance, base);
      m = (g + g.adjoint()).scaled(0.5);
      break;
    }
    case Ensemble::diagonal_loguniform: {
      for (int i = 0; i < n; ++i) {
        const auto block = threefry2x64(spec.seed, kStreamTag, instance, base + static_cast<uint64_t>(i));
        const double u = uniform_from_bits(block[0]);
        m.at(i, i) = std::pow(10.0, 6.0 * u - 3.0);
      }
      break;
    }
    case Ensemble::unitary:
      m = unitary_from_ginibre(ginibre(spec, instance, base));
      break;
  }
  // Scale multiplies the finished draw so doubled scale doubles every entry.
  return spec.scale == 1.0 ? m : m.scaled(spec.scale);
}

std::vector<TracialMatrix> generate_corpus(const CorpusSpec& spec) {
  std::vector<TracialMatrix> out;
  out.reserve(static_cast<size_t>(spec.instances));
  for (int i = 0; i < spec.instances; ++i)
    out.push_back(generate_matrix(spec, static_cast<uint64_t>(i)));
  return out;
}

}  // namespace wonc
