// wonc: weak Orlicz norms over tracial matrix algebras, plus seeded
// verification suites with byte-stable JSON reports.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wonc/errors.hpp"
#include "wonc/norms.hpp"
#include "wonc/orlicz.hpp"
#include "wonc/report.hpp"
#include "wonc/rng.hpp"
#include "wonc/suites.hpp"
#include "wonc/version.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string env_baseline_dir() {
  const char* dir = std::getenv("WONC_BASELINE_DIR");
  return dir ? dir : "";
}

int run_norm(const std::string& phi_spec, const std::string& matrix_path,
             const std::string& form) {
  const wonc::OrliczFunction phi = wonc::OrliczFunction::parse(phi_spec);
  const auto text = wonc::read_text_file(matrix_path);
  if (!text) {
    std::cerr << "cannot read matrix file: " << matrix_path << "\n";
    return kExitUsage;
  }
  const wonc::TracialMatrix x = wonc::TracialMatrix::from_json(nlohmann::json::parse(*text));
  const wonc::SingularSpectrum s = wonc::singular_spectrum(x);

  wonc::NormResult result;
  if (form == "weak") {
    result = wonc::weak_orlicz_norm(s, phi);
  } else if (form == "lambda") {
    result = wonc::weak_orlicz_norm_lambda(s, phi);
  } else if (form == "moment") {
    result = wonc::phi_moment(s, phi);
  } else if (form == "luxemburg") {
    result = wonc::luxemburg_norm(s, phi);
  } else if (form == "banach") {
    const auto ix = phi.closed_form_indices().value_or(phi.estimate_indices());
    if (!(ix.lower > 1.0 && std::isfinite(ix.upper)))
      std::cerr << "warning: renorming assumes indices strictly between 1 and infinity\n";
    result = wonc::banach_renorm(s, phi);
  } else if (form.rfind("weak-lp:", 0) == 0) {
    result = wonc::weak_lp_norm(s, std::stod(form.substr(8)));
  } else {
    std::cerr << "unknown norm form: " << form << "\n";
    return kExitUsage;
  }
  nlohmann::json out{{"form", form},
                     {"value", result.value},
                     {"method", wonc::norm_method_name(result.method)}};
  std::cout << out.dump(2) << "\n";
  return kExitPass;
}

int run_indices(const std::string& phi_spec, double grid_min, double grid_max, int points) {
  const wonc::OrliczFunction phi = wonc::OrliczFunction::parse(phi_spec);
  const auto est = phi.estimate_indices(grid_min, grid_max, points);
  const auto d2 = phi.delta2();
  nlohmann::json out{{"phi", phi.descriptor()},
                     {"estimate",
                      {{"lower", est.lower},
                       {"upper", est.upper},
                       {"grid_min", est.grid_min},
                       {"grid_max", est.grid_max},
                       {"points", est.points}}},
                     {"delta2", {{"satisfied", d2.satisfied}, {"witness", d2.witness}}}};
  if (const auto cf = phi.closed_form_indices())
    out["closed_form"] = {{"lower", cf->lower}, {"upper", cf->upper}};
  else
    out["closed_form"] = nullptr;
  std::cout << out.dump(2) << "\n";
  return kExitPass;
}

void write_csv(const wonc::VerificationReport& report, const std::string& path) {
  std::vector<std::string> names;
  for (const auto& [name, agg] : report.aggregates) names.push_back(name);
  std::ostringstream csv;
  csv << "index,hash,skipped";
  for (const std::string& n : names) csv << "," << n;
  csv << "\n";
  for (size_t i = 0; i < report.records.size(); ++i) {
    const wonc::Record& r = report.records[i];
    csv << i << "," << r.hash << "," << (r.skipped ? 1 : 0);
    for (const std::string& n : names) {
      csv << ",";
      const auto it = r.ratios.find(n);
      if (it != r.ratios.end()) csv << nlohmann::json(it->second).dump();
    }
    csv << "\n";
  }
  wonc::write_text_file(path, csv.str());
}

int run_gen(const std::string& spec_path, const std::string& out_dir) {
  const auto text = wonc::read_text_file(spec_path);
  if (!text) {
    std::cerr << "cannot read corpus spec: " << spec_path << "\n";
    return kExitUsage;
  }
  const wonc::CorpusSpec spec = wonc::CorpusSpec::from_json(nlohmann::json::parse(*text));
  std::filesystem::create_directories(out_dir);
  for (int i = 0; i < spec.instances; ++i) {
    const wonc::TracialMatrix m = wonc::generate_matrix(spec, static_cast<uint64_t>(i));
    char name[64];
    std::snprintf(name, sizeof name, "matrix_%05d.json", i);
    wonc::write_text_file(out_dir + "/" + name, m.to_json().dump(2) + "\n");
  }
  std::cout << "wrote " << spec.instances << " matrices to " << out_dir << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weak Orlicz norm toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", wonc::kVersion);

  // norm
  auto* norm_cmd = app.add_subcommand("norm", "evaluate one functional of one matrix");
  std::string norm_phi, norm_matrix, norm_form = "weak";
  norm_cmd->add_option("--phi", norm_phi, "phi spec, e.g. pow:2 or plog:2,1")->required();
  norm_cmd->add_option("--matrix", norm_matrix, "matrix JSON file")->required();
  norm_cmd->add_option("--form", norm_form,
                       "weak|lambda|moment|luxemburg|banach|weak-lp:<p>");

  // indices
  auto* idx_cmd = app.add_subcommand("indices", "index interval and delta-2 data for phi");
  std::string idx_phi;
  double idx_min = 1e-12, idx_max = 1e16;
  int idx_points = 4096;
  idx_cmd->add_option("--phi", idx_phi)->required();
  idx_cmd->add_option("--grid-min", idx_min);
  idx_cmd->add_option("--grid-max", idx_max);
  idx_cmd->add_option("--points", idx_points);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  wonc::SuiteOptions opts;
  std::string suite, phi_spec = "pow:2", ensemble = "complex-ginibre";
  std::string out_path, csv_path;
  opts.baseline_dir = env_baseline_dir();
  uint64_t seed = 0;
  verify_cmd->add_option("suite", suite, "norms|indices|interp|transform|stein|bg|khintchine|fourier")
      ->required();
  verify_cmd->add_option("--phi", phi_spec);
  verify_cmd->add_option("--seed", seed);
  verify_cmd->add_option("--instances", opts.corpus.instances);
  verify_cmd->add_option("--dim", opts.corpus.dim);
  verify_cmd->add_option("--ensemble", ensemble);
  verify_cmd->add_option("--scale", opts.corpus.scale);
  verify_cmd->add_option("--levels", opts.levels);
  verify_cmd->add_option("--k", opts.k_vars);
  verify_cmd->add_option("--degree", opts.degree);
  verify_cmd->add_option("--op", opts.op);
  verify_cmd->add_option("--regime", opts.regime);
  verify_cmd->add_option("--budget", opts.search_budget);
  verify_cmd->add_option("--grid-min", opts.grid_min);
  verify_cmd->add_option("--grid-max", opts.grid_max);
  verify_cmd->add_option("--points", opts.grid_points);
  verify_cmd->add_option("--workers", opts.workers);
  verify_cmd->add_option("--baseline-dir", opts.baseline_dir);
  verify_cmd->add_flag("--calibrate", opts.write_calibration,
                       "write this run's aggregates as the calibration file");
  verify_cmd->add_option("--out", out_path, "report JSON path (default: stdout)");
  verify_cmd->add_option("--csv", csv_path, "per-instance CSV path");

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "write a corpus to disk");
  std::string gen_spec, gen_out;
  gen_cmd->add_option("--spec", gen_spec, "corpus spec JSON file")->required();
  gen_cmd->add_option("--out", gen_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (norm_cmd->parsed()) return run_norm(norm_phi, norm_matrix, norm_form);
    if (idx_cmd->parsed()) return run_indices(idx_phi, idx_min, idx_max, idx_points);
    if (gen_cmd->parsed()) return run_gen(gen_spec, gen_out);
    if (verify_cmd->parsed()) {
      opts.suite = suite;
      opts.phi = wonc::OrliczFunction::parse(phi_spec);
      opts.corpus.seed = seed;
      opts.corpus.ensemble = wonc::parse_ensemble(ensemble);
      const wonc::VerificationReport report = wonc::run_suite(opts);
      const std::string text = report.canonical();
      if (out_path.empty())
        std::cout << text;
      else
        wonc::write_text_file(out_path, text);
      if (!csv_path.empty()) write_csv(report, csv_path);
      if (report.verdict == "fail") {
        std::cerr << "verdict: fail\n";
        return kExitFail;
      }
      if (report.verdict == "informative") std::cerr << "verdict: informative\n";
      return kExitPass;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
