#ifndef WARPCURV_CONFIG_HPP
#define WARPCURV_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "warpcurv/verifier.hpp"

namespace warpcurv {

struct FamilySpec {
  std::string name;
  SurfaceFamily family;
};

/// One entry of the checks list. Accepted forms in the config:
/// "hk" | "minkowski:k" | "garding" | "lemma52" | "alexandrov" |
/// "ambient-selftest" | "convergence:hk" | "convergence:minkowski:k",
/// either as a bare string (applies to all compatible families) or as an
/// object {"check": ..., "families": [...], "resolutions": [...]}.
struct CheckSpec {
  std::string raw;
  std::string kind; // "hk", "minkowski", "garding", "lemma52", "alexandrov", "ambient-selftest", "convergence"
  int k = -1;       // minkowski order when kind or sub is minkowski
  std::string sub;  // convergence target: "hk" or "minkowski:k"
  std::vector<std::string> families;  // empty = all families
  std::vector<int> resolutions;       // convergence ladder
};

struct OutputSpec {
  std::string path = "-"; // "-" = stdout
  std::string format = "json";
};

struct RunConfig {
  WarpedAmbient ambient;
  std::vector<FamilySpec> families;
  std::vector<CheckSpec> checks;
  int resolution = 64;
  Tolerances tolerances;
  std::uint64_t seed = 42;
  int threads = 1;
  bool allow_constant_curvature_minkowski = false;
  OutputSpec output;
};

/// Parses and validates a JSON config. Unknown keys, type mismatches and
/// family/fiber incompatibilities raise ConfigError naming the offending key
/// path. Defaults: resolution 64, the tolerance ladder of Tolerances{},
/// potential_scale 1, seed 42, threads 1.
RunConfig parse_config(const std::string& text);

/// Canonical serialization; parse(serialize(cfg)) reproduces cfg and
/// serialize is idempotent across the round trip.
std::string serialize_config(const RunConfig& cfg);

/// The documented schema, printed by the CLI `schema` subcommand.
std::string config_schema_text();

} // namespace warpcurv

#endif
