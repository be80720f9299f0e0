#include "warpcurv/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "warpcurv/errors.hpp"
#include "warpcurv/rng.hpp"

namespace warpcurv {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const HypothesisError*>(&e)) return "hypothesis";
  if (dynamic_cast<const ConfigError*>(&e)) return "config";
  if (dynamic_cast<const UnsupportedError*>(&e)) return "unsupported";
  if (dynamic_cast<const ChartError*>(&e)) return "chart";
  if (dynamic_cast<const DegenerateMetricError*>(&e)) return "degenerate-metric";
  if (dynamic_cast<const NumericalError*>(&e)) return "numerical";
  if (dynamic_cast<const ArgumentError*>(&e)) return "argument";
  return "error";
}

struct JobContext {
  const RunConfig* cfg;
  int threads;
  std::map<std::pair<int, int>, SurfaceSweep> sweeps; // (family index, resolution) -> sweep

  const SurfaceSweep& sweep(int family_index, int res) {
    const auto key = std::make_pair(family_index, res);
    auto it = sweeps.find(key);
    if (it == sweeps.end()) {
      const SurfaceFamily& fam = cfg->families[family_index].family;
      it = sweeps.emplace(key, sweep_family(fam, cfg->ambient, make_grid(fam, cfg->ambient, res), threads)).first;
    }
    return it->second;
  }
};

json family_params(const SurfaceFamily& fam) {
  json p;
  if (const auto* slice = std::get_if<SliceFamily>(&fam)) {
    p["kind"] = "slice";
    p["s"] = slice->s;
  } else if (const auto* graph = std::get_if<TorusGraphFamily>(&fam)) {
    p["kind"] = "torus_graph";
    p["base"] = graph->base;
    p["modes"] = json::array();
    for (const FourierMode& m : graph->modes) {
      json mode;
      mode["k"] = m.k;
      mode["cos"] = m.cos_coeff;
      mode["sin"] = m.sin_coeff;
      p["modes"].push_back(std::move(mode));
    }
  } else {
    const auto& sph = std::get<GeodesicSphereFamily>(fam);
    p["kind"] = "geodesic_sphere";
    p["z0"] = sph.z0;
    p["x0"] = sph.x0;
    p["rho"] = sph.rho;
  }
  return p;
}

std::vector<int> selected_families(const RunConfig& cfg, const CheckSpec& spec) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(cfg.families.size()); ++i) {
    if (spec.families.empty()) {
      out.push_back(i);
    } else {
      for (const std::string& name : spec.families)
        if (name == cfg.families[i].name) out.push_back(i);
    }
  }
  return out;
}

json hk_result(const std::string& family, int res, const HKReport& rep, const Tolerances& tol) {
  json r;
  r["check"] = "hk";
  r["family"] = family;
  r["resolution"] = res;
  json v;
  v["i1"] = rep.i1;
  v["i2"] = rep.i2;
  v["residual"] = rep.residual;
  v["normalized_residual"] = rep.normalized_residual;
  v["umbilicity_defect"] = rep.umbilicity_defect;
  v["corollary_lhs"] = rep.corollary_lhs;
  v["corollary_rhs"] = rep.corollary_rhs;
  v["linkage"] = rep.linkage;
  v["min_h"] = rep.min_h;
  v["scale"] = rep.scale;
  r["values"] = std::move(v);
  json t;
  t["identity_rel"] = tol.identity_rel;
  t["umbilic"] = tol.umbilic;
  t["linkage_rel"] = tol.linkage_rel;
  r["tolerances"] = std::move(t);
  r["verdict"] = rep.pass ? "pass" : "fail";
  return r;
}

json minkowski_result(const std::string& family, int res, const MinkowskiReport& rep, const Tolerances& tol) {
  json r;
  r["check"] = "minkowski:" + std::to_string(rep.k);
  r["family"] = family;
  r["resolution"] = res;
  json v;
  v["residual"] = rep.residual;
  v["normalized_residual"] = rep.normalized_residual;
  v["scale"] = rep.scale;
  r["values"] = std::move(v);
  json t;
  t["identity_rel"] = tol.identity_rel;
  r["tolerances"] = std::move(t);
  r["verdict"] = rep.pass ? "pass" : "fail";
  return r;
}

json garding_result(const std::string& family, int res, const GardingReport& rep, const Tolerances& tol) {
  json r;
  r["check"] = "garding";
  r["family"] = family;
  r["resolution"] = res;
  json v;
  v["min_margin"] = rep.min_margin;
  v["umbilicity_defect"] = rep.umbilicity_defect;
  r["values"] = std::move(v);
  json t;
  t["garding"] = tol.garding;
  r["tolerances"] = std::move(t);
  r["verdict"] = rep.pass ? "pass" : "fail";
  return r;
}

json lemma52_result(const std::string& family, int res, const Lemma52Report& rep, const Tolerances& tol) {
  json r;
  r["check"] = "lemma52";
  r["family"] = family;
  r["resolution"] = res;
  json v;
  v["integral"] = rep.integral;
  v["normalized"] = rep.normalized;
  v["h2_spread"] = rep.h2_spread;
  v["umbilicity_defect"] = rep.umbilicity_defect;
  v["scale"] = rep.scale;
  r["values"] = std::move(v);
  json t;
  t["identity_rel"] = tol.identity_rel;
  t["lemma52_rel"] = tol.lemma52_rel;
  t["umbilic"] = tol.umbilic;
  r["tolerances"] = std::move(t);
  r["verdict"] = rep.pass ? "pass" : "fail";
  return r;
}

json alexandrov_result(int res, const AlexandrovReport& rep, const Tolerances& tol) {
  json r;
  r["check"] = "alexandrov";
  r["family"] = rep.family;
  r["resolution"] = res;
  json v;
  v["scalar_spread"] = rep.scalar_spread;
  v["umbilicity_defect"] = rep.umbilicity_defect;
  v["height_spread"] = rep.height_spread;
  r["values"] = std::move(v);
  r["tag"] = rep.tag;
  json t;
  t["alexandrov_spread"] = tol.alexandrov_spread;
  t["height_spread"] = tol.height_spread;
  t["umbilic"] = tol.umbilic;
  r["tolerances"] = std::move(t);
  r["verdict"] = rep.pass ? "pass" : "fail";
  return r;
}

json ambient_result(const AmbientReport& rep, const Tolerances& tol) {
  json r;
  r["check"] = "ambient-selftest";
  json v;
  v["curvature_samples"] = rep.curvature.samples;
  v["max_sectional_dev"] = rep.curvature.max_sectional_dev;
  v["max_ricci_dev"] = rep.curvature.max_ricci_dev;
  v["max_scalar_dev"] = rep.curvature.max_scalar_dev;
  v["potential_samples"] = rep.potential.samples;
  v["max_hess_closed_dev"] = rep.potential.max_hess_closed_dev;
  v["max_hess_fd_dev"] = rep.potential.max_hess_fd_dev;
  v["max_trace_dev"] = rep.potential.max_trace_dev;
  r["values"] = std::move(v);
  json t;
  t["sectional"] = tol.sectional;
  t["ricci"] = tol.ricci;
  t["scalar"] = tol.scalar;
  t["hess_closed"] = tol.hess_closed;
  t["hess_fd"] = tol.hess_fd;
  t["potential_trace"] = tol.potential_trace;
  r["tolerances"] = std::move(t);
  r["verdict"] = rep.pass ? "pass" : "fail";
  return r;
}

json convergence_result(const std::string& raw, const std::string& family, const ConvergenceTable& table) {
  json r;
  r["check"] = raw;
  r["family"] = family;
  r["table"] = json::array();
  for (std::size_t i = 0; i < table.resolutions.size(); ++i) {
    json row;
    row["resolution"] = table.resolutions[i];
    row["residual"] = table.residuals[i];
    row["normalized"] = table.normalized[i];
    r["table"].push_back(std::move(row));
  }
  r["verdict"] = table.pass ? "pass" : "fail";
  return r;
}

std::string render_csv(const json& results) {
  std::ostringstream os;
  os << "check,family,resolution,residual,normalized\n";
  char buf[64];
  for (const json& r : results) {
    if (!r.contains("table")) continue; // error entries carry no table; the exit code reports them
    for (const json& row : r.at("table")) {
      os << r.at("check").get<std::string>() << "," << r.at("family").get<std::string>() << ","
         << row.at("resolution").get<int>();
      std::snprintf(buf, sizeof buf, ",%.17g", row.at("residual").get<double>());
      os << buf;
      std::snprintf(buf, sizeof buf, ",%.17g", row.at("normalized").get<double>());
      os << buf << "\n";
    }
  }
  return os.str();
}

} // namespace

KernelReport kernel_selftest(std::uint64_t seed) {
  Rng rng(seed);
  KernelReport rep;
  for (int n = 2; n <= 7; ++n) {
    for (int trial = 0; trial < 8; ++trial) {
      SymMatrix s(n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) s.set(i, j, rng.uniform(-2.0, 2.0));
      ++rep.samples;

      const Spectrum sp = sym_eigen(s);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          double dot = 0.0, rec = 0.0;
          for (int i = 0; i < n; ++i) dot += sp.vec(i, a) * sp.vec(i, b);
          rep.max_orthonormality_dev = std::max(rep.max_orthonormality_dev, std::abs(dot - (a == b ? 1.0 : 0.0)));
          for (int k = 0; k < n; ++k) rec += sp.vec(a, k) * sp.values[k] * sp.vec(b, k);
          rep.max_reconstruction_dev =
              std::max(rep.max_reconstruction_dev, std::abs(rec - s(a, b)) / std::max(1.0, s.inf_norm()));
        }

      const CurvatureProfile pr = newton_tensors(s);
      for (int k = 1; k < n; ++k) {
        const SymMatrix rhs = sub(scale(SymMatrix::identity(n), pr.sigma[k]), mul_sym(s, pr.newton[k - 1]));
        rep.max_newton_closure_dev = std::max(rep.max_newton_closure_dev, sub(rhs, pr.newton[k]).inf_norm());
        const double scale_k = std::max(1.0, std::abs(pr.sigma[k]));
        rep.max_trace_identity_dev =
            std::max(rep.max_trace_identity_dev, std::abs(trace(pr.newton[k]) - (n - k) * pr.sigma[k]) / scale_k);
        rep.max_trace_identity_dev = std::max(
            rep.max_trace_identity_dev, std::abs(trace_product(s, pr.newton[k - 1]) - k * pr.sigma[k]) / scale_k);
      }
    }
  }
  rep.pass = rep.max_orthonormality_dev < 1e-12 && rep.max_reconstruction_dev < 1e-10 &&
             rep.max_newton_closure_dev < 1e-12 && rep.max_trace_identity_dev < 1e-10;
  return rep;
}

RunResult run(const RunConfig& cfg0, const RunOptions& opt) {
  RunConfig cfg = cfg0;
  if (opt.resolution > 0) {
    if (opt.resolution < 8) throw ConfigError("resolution override must be >= 8");
    cfg.resolution = opt.resolution;
  }
  if (opt.tol > 0.0) cfg.tolerances.identity_rel = opt.tol;
  if (opt.threads > 0) cfg.threads = opt.threads;
  if (!opt.format.empty()) {
    if (opt.format != "json" && opt.format != "csv") throw ConfigError("format must be json or csv");
    cfg.output.format = opt.format;
  }
  if (!opt.out_path.empty()) cfg.output.path = opt.out_path;

  std::vector<CheckSpec> checks;
  for (const CheckSpec& spec : cfg.checks)
    if (!opt.convergence_only || spec.kind == "convergence") checks.push_back(spec);
  if (checks.empty()) throw ConfigError("no checks to run (convergence mode needs convergence:* entries)");
  if (cfg.output.format == "csv")
    for (const CheckSpec& spec : checks)
      if (spec.kind != "convergence")
        throw ConfigError("csv output is for convergence tables; check '" + spec.raw + "' needs json");

  JobContext ctx;
  ctx.cfg = &cfg;
  ctx.threads = cfg.threads;

  json results = json::array();
  bool any_fail = false;
  bool any_error = false;
  int jobs = 0;

  const auto record_error = [&](const std::string& check, const std::string& family, const std::exception& e) {
    json r;
    r["check"] = check;
    r["family"] = family;
    r["verdict"] = "error";
    r["error"] = error_kind(e);
    r["message"] = e.what();
    results.push_back(std::move(r));
    any_error = true;
  };

  for (const CheckSpec& spec : checks) {
    if (spec.kind == "ambient-selftest") {
      ++jobs;
      try {
        const AmbientReport rep = check_ambient(cfg.ambient, 100, 1000, cfg.seed, cfg.tolerances);
        any_fail = any_fail || !rep.pass;
        results.push_back(ambient_result(rep, cfg.tolerances));
      } catch (const Error& e) {
        record_error(spec.raw, "", e);
      }
      continue;
    }
    for (int fi : selected_families(cfg, spec)) {
      ++jobs;
      const std::string& name = cfg.families[fi].name;
      const SurfaceFamily& fam = cfg.families[fi].family;
      try {
        json result;
        if (spec.kind == "hk") {
          const HKReport rep = check_hk(ctx.sweep(fi, cfg.resolution), fam, cfg.ambient, cfg.resolution, cfg.tolerances);
          any_fail = any_fail || !rep.pass;
          result = hk_result(name, cfg.resolution, rep, cfg.tolerances);
        } else if (spec.kind == "minkowski") {
          const MinkowskiReport rep = check_minkowski(spec.k, ctx.sweep(fi, cfg.resolution), cfg.ambient,
                                                      cfg.tolerances, cfg.allow_constant_curvature_minkowski);
          any_fail = any_fail || !rep.pass;
          result = minkowski_result(name, cfg.resolution, rep, cfg.tolerances);
        } else if (spec.kind == "garding") {
          const GardingReport rep = check_garding(ctx.sweep(fi, cfg.resolution), cfg.tolerances);
          any_fail = any_fail || !rep.pass;
          result = garding_result(name, cfg.resolution, rep, cfg.tolerances);
        } else if (spec.kind == "lemma52") {
          const Lemma52Report rep = check_lemma52(ctx.sweep(fi, cfg.resolution), cfg.tolerances);
          any_fail = any_fail || !rep.pass;
          result = lemma52_result(name, cfg.resolution, rep, cfg.tolerances);
        } else if (spec.kind == "alexandrov") {
          const AlexandrovReport rep = alexandrov_classify(name, ctx.sweep(fi, cfg.resolution), cfg.tolerances);
          any_fail = any_fail || !rep.pass;
          result = alexandrov_result(cfg.resolution, rep, cfg.tolerances);
        } else if (spec.kind == "convergence") {
          const ConvergenceTable table =
              convergence_study(spec.sub, fam, cfg.ambient, spec.resolutions, cfg.threads, cfg.tolerances);
          any_fail = any_fail || !table.pass;
          result = convergence_result(spec.raw, name, table);
        } else {
          throw ConfigError("unhandled check kind '" + spec.kind + "'");
        }
        json ordered;
        for (const auto& [key, value] : result.items()) {
          ordered[key] = value;
          if (key == "family") ordered["params"] = family_params(fam);
        }
        results.push_back(std::move(ordered));
      } catch (const Error& e) {
        record_error(spec.raw, name, e);
      }
    }
  }

  RunResult out;
  out.format = cfg.output.format;
  out.out_path = cfg.output.path;
  if (cfg.output.format == "csv") {
    out.report = render_csv(results);
  } else {
    json root;
    json meta;
    meta["tool"] = "warpcurv";
    meta["version"] = kVersion;
    meta["resolution"] = cfg.resolution;
    meta["seed"] = cfg.seed;
    if (opt.include_timestamp) meta["timestamp"] = utc_timestamp();
    root["meta"] = std::move(meta);
    json plan;
    plan["families"] = cfg.families.size();
    plan["checks"] = checks.size();
    plan["jobs"] = jobs;
    root["plan"] = std::move(plan);
    root["results"] = std::move(results);
    out.report = root.dump(2) + "\n";
  }
  out.exit_code = any_error ? 2 : (any_fail ? 1 : 0);
  return out;
}

int run_and_write(const RunConfig& cfg, const RunOptions& opt) {
  RunResult result;
  try {
    result = run(cfg, opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (result.out_path == "-" || result.out_path.empty()) {
    std::cout << result.report;
  } else {
    std::ofstream file(result.out_path);
    if (!file) {
      std::cerr << "error: cannot open output file " << result.out_path << "\n";
      return 2;
    }
    file << result.report;
    if (!file.good()) {
      std::cerr << "error: write failed for " << result.out_path << "\n";
      return 2;
    }
  }
  return result.exit_code;
}

RunResult run_selftest(const WarpedAmbient& amb, int curvature_samples, int potential_samples, std::uint64_t seed,
                       bool include_timestamp, const Tolerances& tol) {
  json root;
  json meta;
  meta["tool"] = "warpcurv";
  meta["version"] = kVersion;
  meta["seed"] = seed;
  if (include_timestamp) meta["timestamp"] = utc_timestamp();
  root["meta"] = std::move(meta);

  json results = json::array();
  const AmbientReport amb_rep = check_ambient(amb, curvature_samples, potential_samples, seed, tol);
  results.push_back(ambient_result(amb_rep, tol));

  const KernelReport kern = kernel_selftest(seed);
  json kr;
  kr["check"] = "kernel-selftest";
  json kv;
  kv["samples"] = kern.samples;
  kv["max_orthonormality_dev"] = kern.max_orthonormality_dev;
  kv["max_reconstruction_dev"] = kern.max_reconstruction_dev;
  kv["max_newton_closure_dev"] = kern.max_newton_closure_dev;
  kv["max_trace_identity_dev"] = kern.max_trace_identity_dev;
  kr["values"] = std::move(kv);
  kr["verdict"] = kern.pass ? "pass" : "fail";
  results.push_back(std::move(kr));

  root["results"] = std::move(results);

  RunResult out;
  out.report = root.dump(2) + "\n";
  out.exit_code = amb_rep.pass && kern.pass ? 0 : 1;
  return out;
}

} // namespace warpcurv
