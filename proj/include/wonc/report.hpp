#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wonc/rng.hpp"

namespace wonc {

struct RatioBounds {
  std::optional<double> lo;
  std::optional<double> hi;
  bool empty() const { return !lo && !hi; }
};

struct Record {
  std::string hash;
  bool skipped = false;
  std::map<std::string, double> ratios;
};

struct Aggregate {
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;
  int count = 0;
};

// Suite outcome with canonical serialization: object keys sorted, floats in
// shortest round-trip form, so identical inputs give identical bytes.
struct VerificationReport {
  std::string suite;
  std::string phi;
  CorpusSpec corpus;
  std::map<std::string, std::string> params;
  std::vector<Record> records;
  std::map<std::string, Aggregate> aggregates;  // per ratio name, skipped-free
  std::map<std::string, RatioBounds> envelopes;
  std::vector<std::string> warnings;
  std::string verdict;  // pass | fail | informative
  std::string version;

  nlohmann::json to_json() const;
  std::string canonical() const;  // pretty-printed, trailing newline
};

// Envelope sources distilled from a calibration run.
struct CalibrationData {
  std::string key;
  std::map<std::string, Aggregate> ratios;

  nlohmann::json to_json() const;
  static CalibrationData from_json(const nlohmann::json& j);
};

std::map<std::string, Aggregate> aggregate_records(const std::vector<Record>& records);

// Writes text to path atomically enough for our purposes (truncate + write).
void write_text_file(const std::string& path, const std::string& text);
std::optional<std::string> read_text_file(const std::string& path);

}  // namespace wonc
