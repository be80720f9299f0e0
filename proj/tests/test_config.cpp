#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "warpcurv/config.hpp"
#include "warpcurv/errors.hpp"
#include "warpcurv/runner.hpp"

using namespace warpcurv;

namespace {

std::string fixture(const std::string& name) {
  const std::string path = std::string(WARPCURV_CONFIG_DIR) + "/" + name;
  std::ifstream file(path);
  REQUIRE(file.good());
  std::ostringstream os;
  os << file.rdbuf();
  return os.str();
}

std::string error_of(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

const char* kMinimal = R"({
  "ambient": {"n": 2, "fiber": "torus", "periods": [1.0, 1.0]},
  "families": [{"name": "slice0", "kind": "slice", "s": 0.0}],
  "checks": ["hk"]
})";

} // namespace

TEST_CASE("parse_config: minimal config gets the documented defaults") {
  const RunConfig cfg = parse_config(kMinimal);
  CHECK(cfg.resolution == 64);
  CHECK(cfg.seed == 42);
  CHECK(cfg.threads == 1);
  CHECK(cfg.ambient.potential_scale == 1.0);
  CHECK(cfg.tolerances.identity_rel == 1e-8);
  CHECK(cfg.output.path == "-");
  CHECK(cfg.output.format == "json");
  REQUIRE(cfg.checks.size() == 1);
  CHECK(cfg.checks[0].kind == "hk");
  CHECK(cfg.checks[0].families.empty());
}

TEST_CASE("parse_config: family/fiber incompatibility names both keys") {
  const std::string err = error_of(R"({
    "ambient": {"n": 2, "fiber": "torus", "periods": [1.0, 1.0]},
    "families": [{"name": "s", "kind": "geodesic_sphere", "rho": 1.0}],
    "checks": ["hk"]
  })");
  CHECK(err.find("geodesic_sphere") != std::string::npos);
  CHECK(err.find("ambient.fiber") != std::string::npos);

  const std::string err2 = error_of(R"({
    "ambient": {"n": 2, "fiber": "euclidean"},
    "families": [{"name": "s", "kind": "slice", "s": 0.0}],
    "checks": ["hk"]
  })");
  CHECK(err2.find("slice") != std::string::npos);
  CHECK(err2.find("euclidean") != std::string::npos);
}

TEST_CASE("parse_config: unknown keys and bad values carry the key path") {
  CHECK(error_of(R"({"ambient": {"n": 2, "fiber": "torus", "periods": [1, 1], "warp": 2},
                     "families": [{"name": "s", "kind": "slice", "s": 0}], "checks": ["hk"]})")
            .find("$.ambient.warp") != std::string::npos);
  CHECK(error_of(R"({"ambient": {"n": 2, "fiber": "torus", "periods": [1, 1]},
                     "families": [{"name": "s", "kind": "slice", "s": "zero"}], "checks": ["hk"]})")
            .find("$.families[0].s") != std::string::npos);
  CHECK(error_of(R"({"ambient": {"n": 2, "fiber": "torus", "periods": [1, 1]},
                     "families": [{"name": "s", "kind": "slice", "s": 0}], "checks": ["hk"],
                     "resolution": 4})")
            .find("$.resolution") != std::string::npos);
  CHECK(error_of(R"({"ambient": {"n": 2, "fiber": "torus", "periods": [1, 1]},
                     "families": [{"name": "s", "kind": "slice", "s": 0}], "checks": ["spin"]})")
            .find("unknown check") != std::string::npos);
  CHECK(error_of(R"({"ambient": {"n": 2, "fiber": "torus", "periods": [1, 1]},
                     "families": [{"name": "s", "kind": "slice", "s": 0}],
                     "checks": [{"check": "hk", "families": ["ghost"]}]})")
            .find("unknown family") != std::string::npos);
  CHECK(error_of(R"({"ambient": {"n": 2, "fiber": "torus", "periods": [1, 1]},
                     "families": [{"name": "s", "kind": "slice", "s": 0}], "checks": ["minkowski:2"]})")
            .find("minkowski:2") != std::string::npos);
  CHECK(error_of(R"({"ambient": {"n": 2, "fiber": "torus", "periods": [1, 1]},
                     "families": [{"name": "s", "kind": "slice", "s": 0},
                                  {"name": "s", "kind": "slice", "s": 1}], "checks": ["hk"]})")
            .find("duplicate") != std::string::npos);
  CHECK(error_of("not json at all").find("not valid JSON") != std::string::npos);
}

TEST_CASE("parse_config: shipped demo parses to the 5 x 6 plan") {
  const RunConfig cfg = parse_config(fixture("demo_torus.json"));
  CHECK(cfg.families.size() == 5);
  CHECK(cfg.checks.size() == 6);
  CHECK(cfg.resolution == 64);
}

TEST_CASE("config round trip: parse -> serialize -> parse is the identity") {
  for (const char* name : {"demo_torus.json", "demo_sphere.json", "convergence_graph.json"}) {
    const RunConfig cfg = parse_config(fixture(name));
    const std::string canon = serialize_config(cfg);
    const RunConfig cfg2 = parse_config(canon);
    CHECK(serialize_config(cfg2) == canon);
  }
}

TEST_CASE("run: exit codes for pass, verdict failure, and hypothesis error") {
  RunOptions opt;
  opt.include_timestamp = false;

  const RunResult ok = run(parse_config(fixture("demo_torus.json")), opt);
  CHECK(ok.exit_code == 0);

  RunOptions quick = opt;
  quick.resolution = 16;
  const RunResult hyp = run(parse_config(fixture("err_lemma52.json")), quick);
  CHECK(hyp.exit_code == 2);
  CHECK(hyp.report.find("hypothesis") != std::string::npos);

  const RunResult tight = run(parse_config(fixture("tight_tol_sphere.json")), opt);
  CHECK(tight.exit_code == 1); // quadrature floor exceeds the forced 1e-15 bar
}

TEST_CASE("run: reports are byte-identical across thread counts") {
  const RunConfig cfg = parse_config(fixture("demo_torus.json"));
  RunOptions a, b;
  a.include_timestamp = b.include_timestamp = false;
  a.resolution = b.resolution = 16;
  a.threads = 1;
  b.threads = 5;
  CHECK(run(cfg, a).report == run(cfg, b).report);
}

TEST_CASE("run: csv is reserved for convergence tables") {
  RunOptions opt;
  opt.include_timestamp = false;
  opt.format = "csv";
  CHECK_THROWS_AS((void)run(parse_config(kMinimal), opt), ConfigError);

  const RunConfig conv = parse_config(fixture("convergence_graph.json"));
  RunOptions conv_opt;
  conv_opt.include_timestamp = false;
  const RunResult res = run(conv, conv_opt);
  CHECK(res.format == "csv");
  CHECK(res.report.rfind("check,family,resolution,residual,normalized", 0) == 0);
  CHECK(res.exit_code == 0);
}

TEST_CASE("run: convergence-only mode requires convergence checks") {
  RunOptions opt;
  opt.include_timestamp = false;
  opt.convergence_only = true;
  CHECK_THROWS_AS((void)run(parse_config(kMinimal), opt), ConfigError);
}

TEST_CASE("kernel_selftest passes on seeded matrices") {
  const KernelReport rep = kernel_selftest(42);
  CHECK(rep.pass);
  CHECK(rep.samples == 48);
}

TEST_CASE("run_selftest: report and exit code") {
  const RunResult res =
      run_selftest(WarpedAmbient::torus(2, {1.0, 1.0}), 50, 200, 42, false, Tolerances{});
  CHECK(res.exit_code == 0);
  CHECK(res.report.find("ambient-selftest") != std::string::npos);
  CHECK(res.report.find("kernel-selftest") != std::string::npos);
  CHECK(res.report.find("timestamp") == std::string::npos);
}
