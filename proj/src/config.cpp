#include "warpcurv/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "warpcurv/errors.hpp"

namespace warpcurv {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError("config error at " + path + ": " + msg);
}

void expect_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) fail(path + "." + key, "unknown key");
  }
}

double get_number(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.contains(key)) fail(path + "." + key, "missing required key");
  if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
  return obj[key].get<double>();
}

double get_number_or(const json& obj, const std::string& path, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
  return obj[key].get<double>();
}

std::string get_string(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.contains(key)) fail(path + "." + key, "missing required key");
  if (!obj[key].is_string()) fail(path + "." + key, "expected a string");
  return obj[key].get<std::string>();
}

int parse_minkowski_order(const std::string& spec, const std::string& path) {
  const std::string digits = spec.substr(10); // past "minkowski:"
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    fail(path, "malformed minkowski order in '" + spec + "'");
  return std::stoi(digits);
}

CheckSpec parse_check_name(const std::string& name, const std::string& path) {
  CheckSpec spec;
  spec.raw = name;
  if (name == "hk" || name == "garding" || name == "lemma52" || name == "alexandrov" || name == "ambient-selftest") {
    spec.kind = name;
  } else if (name.rfind("minkowski:", 0) == 0) {
    spec.kind = "minkowski";
    spec.k = parse_minkowski_order(name, path);
  } else if (name.rfind("convergence:", 0) == 0) {
    spec.kind = "convergence";
    spec.sub = name.substr(12);
    if (spec.sub.rfind("minkowski:", 0) == 0)
      spec.k = parse_minkowski_order(spec.sub, path);
    else if (spec.sub != "hk")
      fail(path, "convergence target must be hk or minkowski:k, got '" + spec.sub + "'");
  } else {
    fail(path, "unknown check '" + name + "'");
  }
  return spec;
}

SurfaceFamily parse_family(const json& obj, const std::string& path, const WarpedAmbient& amb) {
  const std::string kind = get_string(obj, path, "kind");
  if (kind == "slice") {
    expect_keys(obj, path, {"name", "kind", "s"});
    if (amb.fiber != FiberKind::FlatTorus)
      fail(path + ".kind", "slice requires ambient.fiber = torus, but ambient.fiber = euclidean");
    return SliceFamily{get_number(obj, path, "s")};
  }
  if (kind == "torus_graph") {
    expect_keys(obj, path, {"name", "kind", "base", "modes"});
    if (amb.fiber != FiberKind::FlatTorus)
      fail(path + ".kind", "torus_graph requires ambient.fiber = torus, but ambient.fiber = euclidean");
    TorusGraphFamily g;
    g.base = get_number_or(obj, path, "base", 0.0);
    if (!obj.contains("modes") || !obj["modes"].is_array()) fail(path + ".modes", "expected an array of modes");
    int mi = 0;
    for (const json& mode : obj["modes"]) {
      const std::string mpath = path + ".modes[" + std::to_string(mi++) + "]";
      if (!mode.is_object()) fail(mpath, "expected an object");
      expect_keys(mode, mpath, {"k", "cos", "sin"});
      if (!mode.contains("k") || !mode["k"].is_array()) fail(mpath + ".k", "expected an integer array");
      FourierMode m;
      for (const json& ki : mode["k"]) {
        if (!ki.is_number_integer()) fail(mpath + ".k", "expected integers");
        m.k.push_back(ki.get<int>());
      }
      if (static_cast<int>(m.k.size()) != amb.n)
        fail(mpath + ".k", "wave vector needs " + std::to_string(amb.n) + " components");
      m.cos_coeff = get_number_or(mode, mpath, "cos", 0.0);
      m.sin_coeff = get_number_or(mode, mpath, "sin", 0.0);
      g.modes.push_back(std::move(m));
    }
    return g;
  }
  if (kind == "geodesic_sphere") {
    expect_keys(obj, path, {"name", "kind", "z0", "x0", "rho"});
    if (amb.fiber != FiberKind::Euclidean)
      fail(path + ".kind", "geodesic_sphere requires ambient.fiber = euclidean, but ambient.fiber = torus");
    GeodesicSphereFamily s;
    s.z0 = get_number_or(obj, path, "z0", 1.0);
    if (!(s.z0 > 0.0)) fail(path + ".z0", "must be positive");
    s.rho = get_number(obj, path, "rho");
    if (!(s.rho > 0.0)) fail(path + ".rho", "must be positive");
    if (obj.contains("x0")) {
      if (!obj["x0"].is_array()) fail(path + ".x0", "expected a number array");
      for (const json& v : obj["x0"]) {
        if (!v.is_number()) fail(path + ".x0", "expected numbers");
        s.x0.push_back(v.get<double>());
      }
    } else {
      s.x0.assign(amb.n, 0.0);
    }
    if (static_cast<int>(s.x0.size()) != amb.n)
      fail(path + ".x0", "center needs " + std::to_string(amb.n) + " coordinates");
    return s;
  }
  fail(path + ".kind", "unknown family kind '" + kind + "' (slice | torus_graph | geodesic_sphere)");
}

} // namespace

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config error at $: expected a JSON object");
  expect_keys(root, "$",
              {"ambient", "families", "checks", "resolution", "tolerances", "seed", "threads",
               "allow_constant_curvature_minkowski", "output"});

  RunConfig cfg;

  // ambient
  if (!root.contains("ambient") || !root["ambient"].is_object()) fail("$.ambient", "missing required object");
  {
    const json& amb = root["ambient"];
    expect_keys(amb, "$.ambient", {"n", "fiber", "periods", "potential_scale"});
    const double n_raw = get_number(amb, "$.ambient", "n");
    const int n = static_cast<int>(n_raw);
    if (n != n_raw || n < 2) fail("$.ambient.n", "fiber dimension must be an integer >= 2");
    const std::string fiber = get_string(amb, "$.ambient", "fiber");
    const double c = get_number_or(amb, "$.ambient", "potential_scale", 1.0);
    if (!(c > 0.0)) fail("$.ambient.potential_scale", "must be positive");
    if (fiber == "torus") {
      if (!amb.contains("periods") || !amb["periods"].is_array()) fail("$.ambient.periods", "torus fibers need a period array");
      std::vector<double> periods;
      for (const json& v : amb["periods"]) {
        if (!v.is_number()) fail("$.ambient.periods", "expected numbers");
        periods.push_back(v.get<double>());
      }
      if (static_cast<int>(periods.size()) != n) fail("$.ambient.periods", "need one period per fiber dimension");
      for (double L : periods)
        if (!(L > 0.0)) fail("$.ambient.periods", "periods must be positive");
      cfg.ambient = WarpedAmbient::torus(n, std::move(periods), c);
    } else if (fiber == "euclidean") {
      if (amb.contains("periods")) fail("$.ambient.periods", "euclidean fibers take no periods");
      cfg.ambient = WarpedAmbient::euclidean(n, c);
    } else {
      fail("$.ambient.fiber", "must be 'torus' or 'euclidean'");
    }
  }

  // families
  if (!root.contains("families") || !root["families"].is_array() || root["families"].empty())
    fail("$.families", "need a non-empty family array");
  {
    std::set<std::string> names;
    int fi = 0;
    for (const json& fam : root["families"]) {
      const std::string path = "$.families[" + std::to_string(fi++) + "]";
      if (!fam.is_object()) fail(path, "expected an object");
      FamilySpec spec;
      spec.name = get_string(fam, path, "name");
      if (spec.name.empty()) fail(path + ".name", "must not be empty");
      if (!names.insert(spec.name).second) fail(path + ".name", "duplicate family name '" + spec.name + "'");
      spec.family = parse_family(fam, path, cfg.ambient);
      cfg.families.push_back(std::move(spec));
    }
  }

  // checks
  if (!root.contains("checks") || !root["checks"].is_array() || root["checks"].empty())
    fail("$.checks", "need a non-empty check list");
  {
    int ci = 0;
    for (const json& chk : root["checks"]) {
      const std::string path = "$.checks[" + std::to_string(ci++) + "]";
      CheckSpec spec;
      if (chk.is_string()) {
        spec = parse_check_name(chk.get<std::string>(), path);
      } else if (chk.is_object()) {
        expect_keys(chk, path, {"check", "families", "resolutions"});
        spec = parse_check_name(get_string(chk, path, "check"), path);
        if (chk.contains("families")) {
          if (!chk["families"].is_array()) fail(path + ".families", "expected a string array");
          for (const json& f : chk["families"]) {
            if (!f.is_string()) fail(path + ".families", "expected strings");
            spec.families.push_back(f.get<std::string>());
          }
        }
        if (chk.contains("resolutions")) {
          if (spec.kind != "convergence") fail(path + ".resolutions", "only convergence checks take a resolution ladder");
          if (!chk["resolutions"].is_array()) fail(path + ".resolutions", "expected an integer array");
          for (const json& r : chk["resolutions"]) {
            if (!r.is_number_integer()) fail(path + ".resolutions", "expected integers");
            spec.resolutions.push_back(r.get<int>());
          }
          if (spec.resolutions.size() < 3) fail(path + ".resolutions", "need at least 3 resolutions");
          for (int r : spec.resolutions)
            if (r < 8) fail(path + ".resolutions", "resolutions must be >= 8");
        }
      } else {
        fail(path, "expected a string or an object");
      }
      if (spec.kind == "convergence" && spec.resolutions.empty()) spec.resolutions = {8, 16, 32, 64};
      for (const std::string& fname : spec.families) {
        bool found = false;
        for (const FamilySpec& f : cfg.families) found = found || f.name == fname;
        if (!found) fail(path + ".families", "unknown family '" + fname + "'");
      }
      if (spec.kind == "minkowski" || (spec.kind == "convergence" && spec.sub != "hk")) {
        if (spec.k + 1 > cfg.ambient.n)
          fail(path, "minkowski:" + std::to_string(spec.k) + " needs k + 1 <= n = " + std::to_string(cfg.ambient.n));
      }
      cfg.checks.push_back(std::move(spec));
    }
  }

  // scalars
  if (root.contains("resolution")) {
    if (!root["resolution"].is_number_integer()) fail("$.resolution", "expected an integer");
    cfg.resolution = root["resolution"].get<int>();
    if (cfg.resolution < 8) fail("$.resolution", "must be >= 8");
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer()) fail("$.seed", "expected an integer");
    cfg.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("threads")) {
    if (!root["threads"].is_number_integer()) fail("$.threads", "expected an integer");
    cfg.threads = root["threads"].get<int>();
    if (cfg.threads < 1) fail("$.threads", "must be >= 1");
  }
  if (root.contains("allow_constant_curvature_minkowski")) {
    if (!root["allow_constant_curvature_minkowski"].is_boolean())
      fail("$.allow_constant_curvature_minkowski", "expected a boolean");
    cfg.allow_constant_curvature_minkowski = root["allow_constant_curvature_minkowski"].get<bool>();
  }

  // tolerances
  if (root.contains("tolerances")) {
    const json& tol = root["tolerances"];
    if (!tol.is_object()) fail("$.tolerances", "expected an object");
    expect_keys(tol, "$.tolerances",
                {"identity_rel", "umbilic", "garding", "h2_spread", "lemma52_rel", "alexandrov_spread",
                 "height_spread", "linkage_rel", "sectional", "ricci", "scalar", "hess_closed", "hess_fd",
                 "potential_trace"});
    const auto pick = [&](const char* key, double& slot) {
      if (tol.contains(key)) {
        slot = get_number(tol, "$.tolerances", key);
        if (!(slot > 0.0)) fail(std::string("$.tolerances.") + key, "must be positive");
      }
    };
    pick("identity_rel", cfg.tolerances.identity_rel);
    pick("umbilic", cfg.tolerances.umbilic);
    pick("garding", cfg.tolerances.garding);
    pick("h2_spread", cfg.tolerances.h2_spread);
    pick("lemma52_rel", cfg.tolerances.lemma52_rel);
    pick("alexandrov_spread", cfg.tolerances.alexandrov_spread);
    pick("height_spread", cfg.tolerances.height_spread);
    pick("linkage_rel", cfg.tolerances.linkage_rel);
    pick("sectional", cfg.tolerances.sectional);
    pick("ricci", cfg.tolerances.ricci);
    pick("scalar", cfg.tolerances.scalar);
    pick("hess_closed", cfg.tolerances.hess_closed);
    pick("hess_fd", cfg.tolerances.hess_fd);
    pick("potential_trace", cfg.tolerances.potential_trace);
  }

  // output
  if (root.contains("output")) {
    const json& out = root["output"];
    if (!out.is_object()) fail("$.output", "expected an object");
    expect_keys(out, "$.output", {"path", "format"});
    if (out.contains("path")) cfg.output.path = get_string(out, "$.output", "path");
    if (out.contains("format")) {
      cfg.output.format = get_string(out, "$.output", "format");
      if (cfg.output.format != "json" && cfg.output.format != "csv")
        fail("$.output.format", "must be 'json' or 'csv'");
    }
  }

  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  json root;
  json amb;
  amb["n"] = cfg.ambient.n;
  amb["fiber"] = cfg.ambient.fiber == FiberKind::FlatTorus ? "torus" : "euclidean";
  if (cfg.ambient.fiber == FiberKind::FlatTorus) amb["periods"] = cfg.ambient.periods;
  amb["potential_scale"] = cfg.ambient.potential_scale;
  root["ambient"] = std::move(amb);

  root["families"] = json::array();
  for (const FamilySpec& spec : cfg.families) {
    json f;
    f["name"] = spec.name;
    if (const auto* slice = std::get_if<SliceFamily>(&spec.family)) {
      f["kind"] = "slice";
      f["s"] = slice->s;
    } else if (const auto* graph = std::get_if<TorusGraphFamily>(&spec.family)) {
      f["kind"] = "torus_graph";
      f["base"] = graph->base;
      f["modes"] = json::array();
      for (const FourierMode& m : graph->modes) {
        json mode;
        mode["k"] = m.k;
        mode["cos"] = m.cos_coeff;
        mode["sin"] = m.sin_coeff;
        f["modes"].push_back(std::move(mode));
      }
    } else {
      const auto& sph = std::get<GeodesicSphereFamily>(spec.family);
      f["kind"] = "geodesic_sphere";
      f["z0"] = sph.z0;
      f["x0"] = sph.x0;
      f["rho"] = sph.rho;
    }
    root["families"].push_back(std::move(f));
  }

  root["checks"] = json::array();
  for (const CheckSpec& spec : cfg.checks) {
    json c;
    c["check"] = spec.raw;
    if (!spec.families.empty()) c["families"] = spec.families;
    if (spec.kind == "convergence") c["resolutions"] = spec.resolutions;
    root["checks"].push_back(std::move(c));
  }

  root["resolution"] = cfg.resolution;
  json tol;
  tol["identity_rel"] = cfg.tolerances.identity_rel;
  tol["umbilic"] = cfg.tolerances.umbilic;
  tol["garding"] = cfg.tolerances.garding;
  tol["h2_spread"] = cfg.tolerances.h2_spread;
  tol["lemma52_rel"] = cfg.tolerances.lemma52_rel;
  tol["alexandrov_spread"] = cfg.tolerances.alexandrov_spread;
  tol["height_spread"] = cfg.tolerances.height_spread;
  tol["linkage_rel"] = cfg.tolerances.linkage_rel;
  tol["sectional"] = cfg.tolerances.sectional;
  tol["ricci"] = cfg.tolerances.ricci;
  tol["scalar"] = cfg.tolerances.scalar;
  tol["hess_closed"] = cfg.tolerances.hess_closed;
  tol["hess_fd"] = cfg.tolerances.hess_fd;
  tol["potential_trace"] = cfg.tolerances.potential_trace;
  root["tolerances"] = std::move(tol);
  root["seed"] = cfg.seed;
  root["threads"] = cfg.threads;
  root["allow_constant_curvature_minkowski"] = cfg.allow_constant_curvature_minkowski;
  json out;
  out["path"] = cfg.output.path;
  out["format"] = cfg.output.format;
  root["output"] = std::move(out);

  return root.dump(2) + "\n";
}

std::string config_schema_text() {
  return R"(warpcurv run configuration (JSON)

{
  "ambient": {
    "n": 2,                     // fiber dimension, integer >= 2
    "fiber": "torus",           // "torus" | "euclidean"
    "periods": [1.0, 1.0],      // torus only: n positive periods
    "potential_scale": 1.0      // optional, c in V = c e^t, default 1
  },
  "families": [                 // non-empty; names must be unique
    {"name": "slice0", "kind": "slice", "s": 0.0},
    {"name": "graphA", "kind": "torus_graph", "base": 0.0,
     "modes": [{"k": [1, 0], "cos": 0.3}, {"k": [0, 1], "sin": 0.1}]},
    {"name": "ball1", "kind": "geodesic_sphere", "z0": 1.0, "x0": [0.0, 0.0], "rho": 1.0}
  ],
  "checks": [                   // strings, or objects with a family filter
    "minkowski:0",
    {"check": "hk", "families": ["slice0"]},
    {"check": "convergence:minkowski:1", "families": ["graphA"],
     "resolutions": [8, 16, 32, 64]}
  ],
  "resolution": 64,             // optional, >= 8, default 64
  "tolerances": {               // optional overrides, all positive
    "identity_rel": 1e-8, "umbilic": 1e-8, "garding": 1e-12,
    "h2_spread": 1e-8, "lemma52_rel": 1e-9, "alexandrov_spread": 1e-8,
    "height_spread": 1e-8, "linkage_rel": 1e-9,
    "sectional": 1e-5, "ricci": 1e-5, "scalar": 1e-4,
    "hess_closed": 1e-12, "hess_fd": 1e-6, "potential_trace": 1e-12
  },
  "seed": 42,                   // optional, self-test sampling seed
  "threads": 1,                 // optional, >= 1 (CLI --threads and
                                // WARPCURV_THREADS take precedence)
  "allow_constant_curvature_minkowski": false, // optional: unlock minkowski:k
                                               // for k >= 2 (space-form identity)
  "output": {"path": "-", "format": "json"}    // optional; "-" = stdout;
                                               // csv is for convergence tables
}

Checks: hk | minkowski:k | garding | lemma52 | alexandrov | ambient-selftest
        | convergence:hk | convergence:minkowski:k
Slices and torus graphs require the torus fiber; geodesic spheres require the
euclidean fiber. A check without a family filter runs on every family.
Exit codes: 0 all verdicts pass, 1 some verdict failed, 2 parse or hypothesis
error.
)";
}

} // namespace warpcurv
