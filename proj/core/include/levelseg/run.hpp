#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "levelseg/models.hpp"

namespace levelseg {

/// One end-to-end invocation. Optional fields record whether the user set
/// them so that incompatible combinations can be reported.
struct RunConfig {
  std::string model;  // geodesic | chan-vese | modified | sweep
  std::optional<std::string> input;
  std::optional<std::string> phantom;  // disk | separated | embedded
  std::optional<std::uint64_t> seed;
  std::optional<std::string> init;
  double mu = 5.0;  // gray-level units
  double nu = 0.0;  // gray-level units
  std::optional<double> lambda;
  std::optional<double> alpha;
  std::optional<std::vector<double>> alphas;
  double eps = 1.0;
  std::optional<double> dt;
  int max_iters = EvolveParams{}.max_iters;
  double stop_tol = 1e-5;
  int reinit_every = 25;
  double plateau_tol = 0.02;
  std::string out_dir = ".";
  std::vector<std::string> emit;  // empty selects the defaults for the model
  unsigned threads = 0;           // sweep workers; 0 = thread_limit()
};

inline const std::vector<double> kDefaultSweepAlphas = {0.3, 0.4, 0.5, 0.6,
                                                        0.7, 0.8, 0.9};

/// Emit tokens: overlay, mask, contour, trace, sweep, phantom.
std::vector<std::string> default_emit(const std::string& model);

/// Every problem with the configuration, one message each.
std::vector<std::string> validate(const RunConfig& config);

/// Solver parameters in working units.
EvolveParams evolve_params(const RunConfig& config);

enum ExitCode : int {
  kExitOk = 0,
  kExitRuntimeError = 1,
  kExitConfigError = 2,
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::vector<std::string> files;  // emitted artifacts, summary excluded
  std::string summary_path;        // empty if the summary could not be written
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
};

/// Ingest, initialize, evolve (or sweep) and emit. Writes run_summary.json
/// to the output directory in every case the directory is writable.
RunOutcome run(const RunConfig& config);

}  // namespace levelseg
