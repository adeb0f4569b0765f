#include "wonc/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wonc {

namespace {

nlohmann::json bounds_to_json(const RatioBounds& b) {
  nlohmann::json j = nlohmann::json::object();
  j["lo"] = b.lo ? nlohmann::json(*b.lo) : nlohmann::json(nullptr);
  j["hi"] = b.hi ? nlohmann::json(*b.hi) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json aggregate_to_json(const Aggregate& a) {
  return nlohmann::json{{"min", a.min}, {"max", a.max}, {"median", a.median}, {"count", a.count}};
}

Aggregate aggregate_from_json(const nlohmann::json& j) {
  Aggregate a;
  a.min = j.at("min").get<double>();
  a.max = j.at("max").get<double>();
  a.median = j.at("median").get<double>();
  a.count = j.at("count").get<int>();
  return a;
}

}  // namespace

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json recs = nlohmann::json::array();
  for (const Record& r : records) {
    nlohmann::json ratios = nlohmann::json::object();
    for (const auto& [name, value] : r.ratios) ratios[name] = value;
    recs.push_back(nlohmann::json{{"hash", r.hash}, {"skipped", r.skipped}, {"ratios", std::move(ratios)}});
  }
  nlohmann::json aggs = nlohmann::json::object();
  for (const auto& [name, a] : aggregates) aggs[name] = aggregate_to_json(a);
  nlohmann::json envs = nlohmann::json::object();
  for (const auto& [name, b] : envelopes) envs[name] = bounds_to_json(b);
  nlohmann::json prm = nlohmann::json::object();
  for (const auto& [k, v] : params) prm[k] = v;
  return nlohmann::json{{"suite", suite},
                        {"phi", phi},
                        {"corpus", corpus.to_json()},
                        {"params", std::move(prm)},
                        {"records", std::move(recs)},
                        {"aggregates", std::move(aggs)},
                        {"envelopes", std::move(envs)},
                        {"warnings", warnings},
                        {"verdict", verdict},
                        {"version", version}};
}

std::string VerificationReport::canonical() const { return to_json().dump(2) + "\n"; }

nlohmann::json CalibrationData::to_json() const {
  nlohmann::json ratios_json = nlohmann::json::object();
  for (const auto& [name, a] : ratios) ratios_json[name] = aggregate_to_json(a);
  return nlohmann::json{{"key", key}, {"ratios", std::move(ratios_json)}};
}

CalibrationData CalibrationData::from_json(const nlohmann::json& j) {
  CalibrationData c;
  c.key = j.at("key").get<std::string>();
  for (const auto& [name, a] : j.at("ratios").items()) c.ratios[name] = aggregate_from_json(a);
  return c;
}

std::map<std::string, Aggregate> aggregate_records(const std::vector<Record>& records) {
  std::map<std::string, std::vector<double>> by_name;
  for (const Record& r : records) {
    if (r.skipped) continue;
    for (const auto& [name, value] : r.ratios) by_name[name].push_back(value);
  }
  std::map<std::string, Aggregate> out;
  for (auto& [name, vals] : by_name) {
    std::sort(vals.begin(), vals.end());
    Aggregate a;
    a.count = static_cast<int>(vals.size());
    a.min = vals.front();
    a.max = vals.back();
    const size_t mid = vals.size() / 2;
    a.median = vals.size() % 2 ? vals[mid] : 0.5 * (vals[mid - 1] + vals[mid]);
    out[name] = a;
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
}

std::optional<std::string> read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace wonc
