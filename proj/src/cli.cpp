#include "nkc/cli.hpp"

#include "nkc/errors.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace nkc {

std::map<std::string, double> ExperimentConfig::default_tolerances() {
  return {
      {"invariants", 1e-10},     // J² = −id, metric compatibility, ω = g(J·,·)
      {"type", 1e-6},            // (2,1)+(1,2) fraction of dω
      {"lambda_std", 1e-5},      // std(λ)/|mean(λ)|
      {"structure", 1e-5},       // structure-equation residuals
      {"metric", 1e-8},          // S³×S³ search residual
      {"cr", 1e-8},              // CR residual of a seed curve
      {"wirtinger", 1e-5},       // |area − volume| / area
      {"drift", 1e-8},           // relative volume drift when the type hypothesis holds
      {"violation_drift", 1e-2}, // drift expected when it fails
      {"stokes", 1e-5},          // relative to max(|lhs|, volume scale)
      {"budget", 1e-6},          // projection target for continued families
      {"step_bound", 0.25},      // Hausdorff bound between consecutive curves
  };
}

// ----------------------------------------------------------------- config

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["command"] = c.command;
  j["background"] = {{"name", c.background.name}, {"a", c.background.a}, {"b", c.background.b},
                     {"field", c.background.field}};
  j["resolution"] = c.resolution;
  j["steps"] = c.steps;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["tolerances"] = c.tolerances;
  j["out"] = c.out;
  j["family"] = c.family;
  j["magnitude"] = c.magnitude;
  j["angle"] = c.angle;
  j["triple"] = c.triple;
  j["triple_b"] = c.triple_b;
  j["b_interval"] = {c.b_lo, c.b_hi};
  j["quadrature"] = c.quadrature;
  j["meshes"] = c.meshes;
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw PreconditionError("config must be a JSON object");
  static const std::vector<std::string> known = {
      "command", "background", "resolution", "steps",  "seed",     "samples",    "tolerances", "out",
      "family",  "magnitude",  "angle",      "triple", "triple_b", "b_interval", "quadrature", "meshes"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw PreconditionError("unknown config key '" + key + "'");
    }
  }
  ExperimentConfig c;
  try {
    if (j.contains("command")) c.command = j.at("command").get<std::string>();
    if (j.contains("background")) {
      const Json& b = j.at("background");
      if (b.contains("name")) c.background.name = b.at("name").get<std::string>();
      if (b.contains("a")) c.background.a = b.at("a").get<double>();
      if (b.contains("b")) c.background.b = b.at("b").get<double>();
      if (b.contains("field")) c.background.field = b.at("field").get<std::string>();
    }
    if (j.contains("resolution")) c.resolution = j.at("resolution").get<int>();
    if (j.contains("steps")) c.steps = j.at("steps").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("samples")) c.samples = j.at("samples").get<int>();
    if (j.contains("tolerances")) {
      for (const auto& [k, v] : j.at("tolerances").items()) {
        if (!c.tolerances.count(k)) throw PreconditionError("unknown tolerance '" + k + "'");
        c.tolerances[k] = v.get<double>();
      }
    }
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("family")) c.family = j.at("family").get<std::string>();
    if (j.contains("magnitude")) c.magnitude = j.at("magnitude").get<double>();
    if (j.contains("angle")) c.angle = j.at("angle").get<double>();
    if (j.contains("triple")) c.triple = j.at("triple").get<std::array<int, 3>>();
    if (j.contains("triple_b")) c.triple_b = j.at("triple_b").get<std::array<int, 3>>();
    if (j.contains("b_interval")) {
      const auto iv = j.at("b_interval").get<std::vector<double>>();
      if (iv.size() != 2) throw PreconditionError("b_interval needs two values");
      c.b_lo = iv[0];
      c.b_hi = iv[1];
    }
    if (j.contains("quadrature")) c.quadrature = j.at("quadrature").get<std::string>();
    if (j.contains("meshes")) c.meshes = j.at("meshes").get<std::vector<std::string>>();
  } catch (const Json::exception& e) {
    throw PreconditionError(std::string("bad config value: ") + e.what());
  }
  return c;
}

// --------------------------------------------------------------- helpers

namespace {

struct Checks {
  Json list = Json::array();
  bool all_pass = true;

  void below(const std::string& name, double value, double tol) { add(name, value, tol, "<", value < tol); }
  void above(const std::string& name, double value, double tol) { add(name, value, tol, ">", value > tol); }

 private:
  void add(const std::string& name, double value, double tol, const char* rel, bool pass) {
    list.push_back({{"name", name}, {"value", value}, {"tolerance", tol}, {"relation", rel}, {"pass", pass}});
    all_pass = all_pass && pass;
  }
};

double tol(const ExperimentConfig& c, const std::string& name) { return c.tolerances.at(name); }

NKBackground make_background(const BackgroundSpec& s) {
  if (s.name == "s6") return s6_background();
  if (s.name == "s3s3") return s3s3_background({s.a, s.b, false});
  if (s.name == "torus") return torus_testbed(TrigPolynomial::parse(s.field));
  throw PreconditionError("unknown background '" + s.name + "' (expected s6, s3s3 or torus)");
}

Vec7 unit(int i) {
  if (i < 1 || i > 7) throw PreconditionError("triple indices must lie in 1..7");
  return ImOctonion::unit(i).vec();
}

int torus_cells(const ExperimentConfig& c) { return 1 << (c.resolution + 1); }

void check_resolution(const ExperimentConfig& c) {
  if (c.resolution < 0 || c.resolution > 7) throw PreconditionError("resolution must lie in 0..7");
}

CurveMesh sphere_from_triple(const NKBackground& bg, const std::array<int, 3>& t, int level) {
  const Vec7 f1 = unit(t[0]), f2 = unit(t[1]), f3 = unit(t[2]);
  if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) throw PreconditionError("triple indices must differ");
  if (associativity_residual(f1, f2, f3) < 1e-10) return great_sphere_curve(bg, f1, f2, f3, level);
  return round_sphere_curve(bg, f1, f2, f3, level);
}

CurveMesh seed_curve(const ExperimentConfig& c, const NKBackground& bg) {
  check_resolution(c);
  if (bg.name() == "s6") return sphere_from_triple(bg, c.triple, c.resolution);
  if (bg.name() == "torus") return subtorus_curve(bg, Eigen::Vector4d::Zero(), torus_cells(c));
  throw PreconditionError("no seed curve is available on background '" + bg.name() + "'");
}

PrismRule prism_rule(const std::string& q) {
  if (q == "centroid") return PrismRule::Centroid;
  if (q == "degree2") return PrismRule::Degree2;
  throw PreconditionError("unknown quadrature '" + q + "' (expected centroid or degree2)");
}

std::string jsonl(const std::vector<Json>& rows) {
  std::string s;
  for (const Json& r : rows) s += r.dump() + "\n";
  return s;
}

// ------------------------------------------------------------ subcommands

CommandResult verify_structure(const ExperimentConfig& c, Json& results) {
  CommandResult r;
  const NKBackground bg = make_background(c.background);
  if (c.samples < 1) throw PreconditionError("samples must be positive");
  const auto pts = bg.sample_points(c.samples, c.seed);
  Checks checks;
  results["background"] = background_descriptor(bg);

  const InvariantReport inv = check_invariants(bg, pts);
  results["invariants"] = {{"j_squared", inv.j_squared},
                           {"metric_compatibility", inv.metric_compatibility},
                           {"omega_consistency", inv.omega_consistency},
                           {"points", inv.points}};
  checks.below("j_squared", inv.j_squared, tol(c, "invariants"));
  checks.below("metric_compatibility", inv.metric_compatibility, tol(c, "invariants"));
  checks.below("omega_consistency", inv.omega_consistency, tol(c, "invariants"));

  std::vector<Json> spectra;
  double worst = 0.0;
  for (const Vec& p : pts) {
    const TypeSpectrum s = d_omega_spectrum(bg, p);
    spectra.push_back(type_spectrum_json(s));
    worst = std::max(worst, s.mixed_fraction());
  }
  r.extra_files["verify-structure.spectra.jsonl"] = jsonl(spectra);
  const bool holds = worst < tol(c, "type");
  results["type_residual"] = worst;
  results["d_omega_exact"] = bg.d_omega_is_exact();
  results["hypothesis"] = holds ? "holds" : "VIOLATED";
  checks.below("type_residual", worst, tol(c, "type"));

  try {
    const LambdaEstimate l = lambda_estimate(bg, pts);
    results["lambda"] = {{"mean", l.mean}, {"std", l.std}, {"max_residual", l.max_residual}, {"closed", l.closed}};
    if (!l.closed) {
      checks.below("lambda_relative_std", l.std / std::abs(l.mean), tol(c, "lambda_std"));
      checks.below("first_structure_equation", l.max_residual, tol(c, "structure"));
      const double second = second_structure_equation_residual(bg, pts, l.mean);
      results["second_structure_equation"] = second;
      checks.below("second_structure_equation", second, tol(c, "structure"));
    }
  } catch (const NotApplicableError& e) {
    results["lambda"] = std::string("not applicable: ") + e.what();
  }
  r.exit_code = checks.all_pass ? kExitPass : kExitCheckFailed;
  results["checks"] = checks.list;
  return r;
}

CommandResult find_metric(const ExperimentConfig& c, Json& results) {
  const MetricSearchResult m = find_nk_metric(c.b_lo, c.b_hi, tol(c, "metric"));
  Checks checks;
  results["b_star"] = m.b_star;
  results["residual"] = m.residual;
  results["iterations"] = m.iterations;
  results["residual_at_product_metric"] = s3s3_type_residual({1.0, 0.0, false});
  Json samples = Json::array();
  for (const auto& [b, v] : m.samples) samples.push_back({{"b", b}, {"residual", v}});
  results["samples"] = samples;
  checks.below("metric_residual", m.residual, tol(c, "metric"));
  results["checks"] = checks.list;
  CommandResult r;
  r.exit_code = checks.all_pass ? kExitPass : kExitCheckFailed;
  return r;
}

CommandResult curve_volume_cmd(const ExperimentConfig& c, Json& results) {
  if (c.meshes.size() > 1) throw PreconditionError("curve-volume takes at most one mesh");
  const CurveMesh curve = c.meshes.empty() ? seed_curve(c, make_background(c.background))
                                           : curve_from_json(read_json_file(c.meshes.front()));
  const double vol = curve_volume(curve);
  const double area = riemannian_area(curve);
  const CRResidualReport cr = cr_residual(curve);
  Checks checks;
  results["background"] = background_descriptor(curve.background());
  results["genus"] = curve.genus();
  results["vertices"] = curve.vertex_count();
  results["faces"] = curve.faces().size();
  results["volume"] = vol;
  results["abs_volume"] = std::abs(vol);
  results["area"] = area;
  results["cr_l2"] = cr.l2;
  results["cr_max"] = cr.max;
  const double gap = (area - vol) / area;
  results["wirtinger_gap"] = gap;
  checks.below("cr_residual", cr.l2, tol(c, "cr"));
  checks.below("wirtinger_gap", std::abs(gap), tol(c, "wirtinger"));
  results["checks"] = checks.list;
  CommandResult r;
  r.exit_code = checks.all_pass ? kExitPass : kExitCheckFailed;
  r.extra_files["curve-volume.mesh.json"] = curve_to_json(curve).dump() + "\n";
  return r;
}

struct BuiltFamily {
  FamilyPath path;
  std::vector<StepRecord> records;
  bool success = true;
  std::string failure;
};

BuiltFamily build_family(const ExperimentConfig& c, const NKBackground& bg) {
  if (c.steps < 1) throw PreconditionError("steps must be positive");
  BuiltFamily f;
  const bool s6 = bg.name() == "s6";
  const bool torus = bg.name() == "torus";
  ContinuationOptions opts;
  opts.steps = c.steps;
  opts.projection.budget = tol(c, "budget");
  opts.step_bound = tol(c, "step_bound");
  if (c.family == "g2-orbit" || c.family == "g2-drive") {
    if (!s6) throw PreconditionError("G2 families need the s6 background");
    const CurveMesh start = seed_curve(c, bg);
    const G2Path path(c.seed, c.angle);
    if (c.family == "g2-orbit") {
      f.path = g2_orbit_family(start, path, c.steps);
    } else {
      ContinuationResult res = continue_curve(start, G2PathDrive{path}, opts);
      f = {std::move(res.path), std::move(res.records), res.success, res.failure};
    }
  } else if (c.family == "perturbed") {
    const CurveMesh start = seed_curve(c, bg);
    ContinuationResult res = continue_curve(start, NormalPerturbationDrive{c.magnitude, c.seed}, opts);
    f = {std::move(res.path), std::move(res.records), res.success, res.failure};
  } else if (c.family == "subtorus") {
    if (!torus) throw PreconditionError("subtorus families need the torus background");
    check_resolution(c);
    f.path = subtorus_path(bg, Eigen::Vector4d(0.0, 0.0, 0.25, 0.0), torus_cells(c), c.steps);
  } else {
    throw PreconditionError("unknown family '" + c.family + "' (expected g2-orbit, g2-drive, perturbed or subtorus)");
  }
  return f;
}

CommandResult family_cmd(const ExperimentConfig& c, Json& results, bool full) {
  const NKBackground bg = make_background(c.background);
  const PrismRule rule = prism_rule(c.quadrature);
  const BuiltFamily f = build_family(c, bg);
  Checks checks;
  CommandResult r;
  results["background"] = background_descriptor(bg);
  results["provenance"] = f.path.provenance;
  results["success"] = f.success;
  if (!f.success) results["failure"] = f.failure;

  const double type = type_residual(bg, bg.sample_points(8, c.seed));
  const bool holds = type < tol(c, "type");
  results["type_residual"] = type;
  results["hypothesis"] = holds ? "holds" : "VIOLATED";

  const VolumeDrift drift = volume_drift(f.path);
  double scale = 0.0;
  for (double v : drift.volumes) scale = std::max(scale, std::abs(v));
  results["volume_scale"] = scale;

  if (full) {
    std::vector<double> residuals, steps(1, 0.0);
    for (const CurveMesh& m : f.path.curves) residuals.push_back(cr_residual(m).l2);
    for (std::size_t k = 1; k < f.path.curves.size(); ++k) {
      steps.push_back(hausdorff_distance(f.path.curves[k - 1], f.path.curves[k]));
    }
    std::ostringstream csv;
    csv << std::setprecision(17) << "t,volume,residual,hausdorff_step\n";
    Json rows = Json::array();
    for (std::size_t k = 0; k < f.path.curves.size(); ++k) {
      csv << f.path.times[k] << ',' << drift.volumes[k] << ',' << residuals[k] << ',' << steps[k] << '\n';
      rows.push_back({{"t", f.path.times[k]}, {"volume", drift.volumes[k]}, {"residual", residuals[k]},
                      {"hausdorff_step", steps[k]}});
    }
    r.extra_files["family.csv"] = csv.str();
    r.extra_files["family.path.json"] = family_to_json(f.path).dump() + "\n";
    results["rows"] = rows;
    results["max_drift"] = drift.max_drift;
    results["relative_drift"] = drift.relative_drift;
    Json recs = Json::array();
    for (const StepRecord& s : f.records) {
      recs.push_back({{"t", s.t}, {"iterations", s.iterations}, {"residual", s.residual},
                      {"hausdorff_step", s.hausdorff_step}, {"bisections", s.bisections}});
    }
    results["continuation"] = recs;
    double worst = 0.0;
    for (double v : residuals) worst = std::max(worst, v);
    checks.below("family_residual", worst, tol(c, "budget"));
    double worst_step = 0.0;
    for (double v : steps) worst_step = std::max(worst_step, v);
    checks.below("hausdorff_step", worst_step, tol(c, "step_bound"));
    if (holds) checks.below("relative_drift", drift.relative_drift, tol(c, "drift"));
    else checks.above("relative_drift_under_violation", drift.relative_drift, tol(c, "violation_drift"));
  }

  if (f.path.curves.size() >= 2) {
    const StokesReport s = stokes_check(f.path, rule);
    results["stokes"] = stokes_to_json(s);
    const double ref = std::max(std::abs(s.lhs), scale);
    checks.below("stokes_relative_residual", s.residual / ref, tol(c, "stokes"));
    if (holds) checks.below("chain_integral_relative", std::abs(s.rhs) / scale, tol(c, "stokes"));
  }
  results["checks"] = checks.list;
  if (!f.success) r.exit_code = kExitNumerical;
  else r.exit_code = checks.all_pass ? kExitPass : kExitCheckFailed;
  return r;
}

CommandResult hausdorff_cmd(const ExperimentConfig& c, Json& results) {
  std::vector<CurveMesh> curves;
  if (c.meshes.size() == 2) {
    for (const auto& m : c.meshes) curves.push_back(curve_from_json(read_json_file(m)));
  } else if (c.meshes.empty()) {
    const NKBackground bg = make_background(c.background);
    if (bg.name() != "s6") throw PreconditionError("default hausdorff spheres need the s6 background");
    check_resolution(c);
    curves.push_back(sphere_from_triple(bg, c.triple, c.resolution));
    curves.push_back(sphere_from_triple(bg, c.triple_b, c.resolution));
  } else {
    throw PreconditionError("hausdorff takes zero or two meshes");
  }
  if (curves[0].background().name() != curves[1].background().name()) {
    throw PreconditionError("meshes live on different backgrounds");
  }
  const double ab = hausdorff_distance(curves[0], curves[1]);
  const double ba = hausdorff_distance(curves[1], curves[0]);
  results["distance"] = ab;
  results["directed_ab"] = directed_hausdorff(curves[0].image(), curves[1].image());
  results["directed_ba"] = directed_hausdorff(curves[1].image(), curves[0].image());
  results["metric"] = curves[0].background().name() == "torus" ? "flat (wrapped) coordinates" : "chordal";
  Checks checks;
  checks.below("symmetry", std::abs(ab - ba), std::numeric_limits<double>::min());
  results["checks"] = checks.list;
  CommandResult r;
  r.exit_code = checks.all_pass ? kExitPass : kExitCheckFailed;
  return r;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

int exit_for(const Error& e) {
  if (dynamic_cast<const PreconditionError*>(&e) || dynamic_cast<const NotApplicableError*>(&e)) return kExitUsage;
  return kExitNumerical;
}

}  // namespace

CommandResult run_command(const ExperimentConfig& c, const std::string& timestamp) {
  Json results = Json::object();
  CommandResult r;
  if (c.command == "verify-structure") r = verify_structure(c, results);
  else if (c.command == "find-nk-metric") r = find_metric(c, results);
  else if (c.command == "curve-volume") r = curve_volume_cmd(c, results);
  else if (c.command == "family") r = family_cmd(c, results, true);
  else if (c.command == "stokes-check") r = family_cmd(c, results, false);
  else if (c.command == "hausdorff") r = hausdorff_cmd(c, results);
  else throw PreconditionError("unknown command '" + c.command + "'");
  r.report["schema_version"] = kReportSchemaVersion;
  r.report["command"] = c.command;
  r.report["timestamp"] = timestamp;
  r.report["config"] = config_to_json(c);
  r.report["checks"] = results["checks"];
  results.erase("checks");
  r.report["results"] = results;
  r.report["status"] = r.exit_code == kExitPass ? "pass" : r.exit_code == kExitCheckFailed ? "fail" : "numerical-failure";
  r.report["exit_code"] = r.exit_code;
  return r;
}

// ------------------------------------------------------------------- main

namespace {
std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}
}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"nkcurves: nearly Kaehler structures and pseudoholomorphic curve families"};
  ExperimentConfig cfg;
  if (const char* env = std::getenv(kOutEnv)) cfg.out = env;
  std::string config_file;
  std::string out_override;
  app.add_option("--config", config_file, "Regenerate a report from the config embedded in it");
  app.add_option("--out", out_override, "Output directory (overrides the config and " + std::string(kOutEnv) + ")");
  app.require_subcommand(0, 1);

  std::vector<int> triple, triple_b;
  std::vector<double> interval;
  std::map<std::string, double> tol_override;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--background", cfg.background.name, "s6 | s3s3 | torus");
    sub->add_option("--a", cfg.background.a, "S3xS3 metric scale");
    sub->add_option("--b", cfg.background.b, "S3xS3 mixing coefficient");
    sub->add_option("--field", cfg.background.field, "torus field, e.g. \"sin(x5)\"");
    sub->add_option("--resolution", cfg.resolution, "icosphere level (torus: 2^(r+1) cells)");
    sub->add_option("--steps", cfg.steps, "family time steps");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--samples", cfg.samples, "sample points");
    sub->add_option("--out", out_override, "output directory");
    sub->add_option("--family", cfg.family, "g2-orbit | g2-drive | perturbed | subtorus");
    sub->add_option("--magnitude", cfg.magnitude, "perturbed drive RMS per step");
    sub->add_option("--angle", cfg.angle, "G2 path angle");
    sub->add_option("--triple", triple, "seed sphere basis indices i j k")->expected(3);
    sub->add_option("--triple-b", triple_b, "second sphere for hausdorff")->expected(3);
    sub->add_option("--interval", interval, "b search interval lo hi")->expected(2);
    sub->add_option("--quadrature", cfg.quadrature, "centroid | degree2");
    sub->add_option("--mesh", cfg.meshes, "input mesh JSON (repeatable)");
    for (const auto& [name, value] : ExperimentConfig::default_tolerances()) {
      sub->add_option_function<double>(
          "--tol." + name, [&tol_override, n = name](double v) { tol_override[n] = v; },
          "tolerance (default " + short_number(value) + ")");
    }
  };
  const std::pair<const char*, const char*> commands[] = {
      {"verify-structure", "check J, g, omega, Omega and the structure equations at sample points"},
      {"find-nk-metric", "search the S3xS3 metric family for the nearly Kaehler member"},
      {"curve-volume", "volume, area and CR residual of a seed curve; writes its mesh"},
      {"family", "build or continue a family of curves and check volume constancy"},
      {"hausdorff", "Hausdorff distance between two curves"},
      {"stokes-check", "volume change versus the integral of d omega over the swept chain"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (!config_file.empty()) {
      if (!app.get_subcommands().empty()) throw PreconditionError("--config cannot be combined with a subcommand");
      const Json j = read_json_file(config_file);
      cfg = config_from_json(j.contains("config") ? j.at("config") : j);
    } else {
      if (app.get_subcommands().empty()) throw PreconditionError("a subcommand or --config is required");
      cfg.command = app.get_subcommands().front()->get_name();
      if (!triple.empty()) std::copy(triple.begin(), triple.end(), cfg.triple.begin());
      if (!triple_b.empty()) std::copy(triple_b.begin(), triple_b.end(), cfg.triple_b.begin());
      if (!interval.empty()) {
        cfg.b_lo = interval[0];
        cfg.b_hi = interval[1];
      }
      for (const auto& [k, v] : tol_override) cfg.tolerances[k] = v;
    }
    if (!out_override.empty()) cfg.out = out_override;

    const CommandResult r = run_command(cfg, utc_timestamp());
    std::filesystem::create_directories(cfg.out);
    const std::filesystem::path dir(cfg.out);
    write_text_file((dir / (cfg.command + ".json")).string(), r.report.dump(2) + "\n");
    for (const auto& [name, text] : r.extra_files) write_text_file((dir / name).string(), text);

    for (const Json& ch : r.report["checks"]) {
      std::cout << (ch["pass"].get<bool>() ? "ok   " : "FAIL ") << ch["name"].get<std::string>() << " = "
                << ch["value"].get<double>() << " (" << ch["relation"].get<std::string>() << ' '
                << ch["tolerance"].get<double>() << ")\n";
    }
    if (r.report["results"].contains("hypothesis")) {
      std::cout << "hypothesis dω ∈ (3,0)+(0,3): " << r.report["results"]["hypothesis"].get<std::string>() << '\n';
    }
    if (r.report["results"].contains("failure")) {
      std::cout << "continuation failure: " << r.report["results"]["failure"].get<std::string>() << '\n';
    }
    std::cout << r.report["status"].get<std::string>() << " -> " << (dir / (cfg.command + ".json")).string() << '\n';
    return r.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_for(e);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace nkc
