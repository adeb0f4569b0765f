#pragma once

#include <string>
#include <vector>

#include "wonc/orlicz.hpp"
#include "wonc/report.hpp"
#include "wonc/rng.hpp"

namespace wonc {

struct SuiteOptions {
  std::string suite;  // norms | indices | interp | transform | stein | bg | khintchine | fourier
  OrliczFunction phi = OrliczFunction::power(2.0);
  CorpusSpec corpus;

  int levels = 3;        // martingale suites; corpus dim becomes 2^levels
  int k_vars = 4;        // khintchine
  int degree = 27;       // fourier
  int family_size = 3;   // fourier coefficient-family variant
  int search_budget = 48;  // decomposition searches
  std::string op = "hardy";     // interp: identity | adjoint | hardy | condexp:<k>
  std::string regime = "auto";  // bg / khintchine: auto | low | high
  double grid_min = 1e-12;      // indices
  double grid_max = 1e16;
  int grid_points = 4096;

  int workers = 1;
  std::string baseline_dir;        // empty: no calibrated envelopes
  bool write_calibration = false;  // distill this run into <key>.calib.json first
};

const std::vector<std::string>& known_suites();

// Stable identifier tying a run to its committed calibration file.
std::string baseline_key(const SuiteOptions& opts);

VerificationReport run_suite(const SuiteOptions& opts);

}  // namespace wonc
