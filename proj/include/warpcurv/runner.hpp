#ifndef WARPCURV_RUNNER_HPP
#define WARPCURV_RUNNER_HPP

#include <string>

#include "warpcurv/config.hpp"

namespace warpcurv {

/// CLI-level overrides applied on top of a parsed config.
struct RunOptions {
  bool include_timestamp = true;
  std::string out_path;  // empty = config value
  std::string format;    // empty = config value
  int resolution = 0;    // 0 = config value
  double tol = 0.0;      // 0 = config identity_rel
  int threads = 0;       // 0 = config value
  bool convergence_only = false;
};

struct RunResult {
  int exit_code = 0; // 0 pass, 1 verdict failure, 2 hypothesis/parse/config error
  std::string report;
  std::string format = "json";
  std::string out_path = "-";
};

/// Executes the configured checks and renders the report. Results are
/// independent of the thread count byte for byte; the timestamp is the only
/// run-dependent field and is dropped when include_timestamp is false.
RunResult run(const RunConfig& cfg, const RunOptions& opt = {});

/// run() plus writing to the chosen path ("-" = stdout). Returns the exit
/// code; I/O failures return 2.
int run_and_write(const RunConfig& cfg, const RunOptions& opt = {});

/// Eigen/Newton kernel smoke test on seeded random matrices (n = 2..7).
struct KernelReport {
  int samples = 0;
  double max_orthonormality_dev = 0.0;
  double max_reconstruction_dev = 0.0;
  double max_newton_closure_dev = 0.0;
  double max_trace_identity_dev = 0.0;
  bool pass = false;
};

KernelReport kernel_selftest(std::uint64_t seed);

/// The `selftest` subcommand: ambient curvature/potential identities plus the
/// kernel smoke test, rendered like a run report.
RunResult run_selftest(const WarpedAmbient& amb, int curvature_samples, int potential_samples, std::uint64_t seed,
                       bool include_timestamp, const Tolerances& tol);

} // namespace warpcurv

#endif
