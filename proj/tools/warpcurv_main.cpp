#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "warpcurv/config.hpp"
#include "warpcurv/errors.hpp"
#include "warpcurv/runner.hpp"

namespace {

int resolve_threads(int cli_threads) {
  if (cli_threads > 0) return cli_threads;
  if (const char* env = std::getenv("WARPCURV_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
      std::cerr << "warning: ignoring malformed WARPCURV_THREADS='" << env << "'\n";
    }
  }
  return 0; // fall back to the config value
}

std::string read_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw warpcurv::ConfigError("cannot read config file " + path);
  std::ostringstream os;
  os << file.rdbuf();
  return os.str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"warpcurv: curvature identities and inequalities for hypersurfaces of exponentially warped products"};
  app.require_subcommand(1);

  std::string config_path, out_path, format;
  int resolution = 0;
  double tol = 0.0;
  int threads = 0;
  bool no_timestamp = false;

  const auto add_common = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config) cmd->add_option("--config", config_path, "path to the JSON run configuration")->required();
    cmd->add_option("--out", out_path, "output path ('-' = stdout)");
    cmd->add_option("--format", format, "report format: json|csv");
    cmd->add_option("--resolution", resolution, "per-axis grid resolution override (>= 8)");
    cmd->add_option("--tol", tol, "identity tolerance override (relative to the V-integral scale)");
    cmd->add_flag("--no-timestamp", no_timestamp, "omit the timestamp from the report");
    cmd->add_option("--threads", threads, "worker threads (WARPCURV_THREADS is the fallback)");
  };

  CLI::App* verify = app.add_subcommand("verify", "run the configured verification checks");
  add_common(verify, true);

  CLI::App* convergence = app.add_subcommand("convergence", "run only the convergence:* checks (CSV by default)");
  add_common(convergence, true);

  CLI::App* selftest = app.add_subcommand("selftest", "ambient curvature/potential identities and kernel smoke test");
  int st_n = 2;
  int st_samples = 100;
  std::uint64_t st_seed = 42;
  selftest->add_option("--n", st_n, "fiber dimension (default 2)");
  selftest->add_option("--samples", st_samples, "curvature sample count (default 100)");
  selftest->add_option("--seed", st_seed, "sampling seed (default 42)");
  selftest->add_flag("--no-timestamp", no_timestamp, "omit the timestamp from the report");

  CLI::App* schema = app.add_subcommand("schema", "print the config schema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2; // command-line parse errors share the config-error exit code
  }

  try {
    if (schema->parsed()) {
      std::cout << warpcurv::config_schema_text();
      return 0;
    }
    if (selftest->parsed()) {
      const warpcurv::WarpedAmbient amb =
          warpcurv::WarpedAmbient::torus(st_n, std::vector<double>(st_n, 1.0));
      const warpcurv::RunResult result =
          warpcurv::run_selftest(amb, st_samples, 1000, st_seed, !no_timestamp, warpcurv::Tolerances{});
      std::cout << result.report;
      return result.exit_code;
    }

    const warpcurv::RunConfig cfg = warpcurv::parse_config(read_file(config_path));
    warpcurv::RunOptions opt;
    opt.include_timestamp = !no_timestamp;
    opt.out_path = out_path;
    opt.format = format;
    opt.resolution = resolution;
    opt.tol = tol;
    opt.threads = resolve_threads(threads);
    if (convergence->parsed()) {
      opt.convergence_only = true;
      if (format.empty() && cfg.output.format == "json") opt.format = "csv";
    }
    return warpcurv::run_and_write(cfg, opt);
  } catch (const warpcurv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
