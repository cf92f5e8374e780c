// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "nkc/cli.hpp"
#include "nkc/errors.hpp"
#include "nkc/io.hpp"
#include "nkc/moduli.hpp"
#include "nkc/structure_checks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <sys/wait.h>

using namespace nkc;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "!") + what;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Vec7 e(int i) { return ImOctonion::unit(i).vec(); }

Octonion random_octonion(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  std::array<double, 8> c;
  for (double& x : c) x = n(rng);
  return Octonion(c);
}

Vec random_vec(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> n;
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = n(rng);
  return v;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// (e1 e2) e4 and e1 (e2 e4)
std::pair<Octonion, Octonion> e1_e2_e4() {
  const Octonion a = Octonion::unit(1), b = Octonion::unit(2), c = Octonion::unit(4);
  return {(a * b) * c, a * (b * c)};
}

// 1 ------------------------------------------------------------- octonions
Outcome octonion_suite() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  double norm = 0.0, alt = 0.0, moufang = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Octonion x = random_octonion(rng), y = random_octonion(rng), z = random_octonion(rng);
    const double nx = x.norm(), ny = y.norm(), nz = z.norm();
    norm = std::max(norm, std::abs((x * y).norm() - nx * ny) / (nx * ny));
    alt = std::max(alt, (x * (x * y) - (x * x) * y).norm() / (nx * nx * ny));
    alt = std::max(alt, ((y * x) * x - y * (x * x)).norm() / (nx * nx * ny));
    moufang = std::max(moufang, (z * (x * (z * y)) - ((z * x) * z) * y).norm() / (nz * nz * nx * ny));
  }
  const double witness = (e1_e2_e4().first - e1_e2_e4().second).norm();
  const double dt = seconds_since(t0);
  o.require(norm < 1e-12, "norm " + fmt(norm));
  o.require(alt < 1e-12, "alternativity " + fmt(alt));
  o.require(moufang < 1e-12, "moufang " + fmt(moufang));
  o.require(witness > 1.0, "(e1e2)e4 - e1(e2e4) = " + fmt(witness));
  o.require(dt < 5.0, "time " + fmt(dt) + "s");
  return o;
}

// 2 ---------------------------------------------------------- S⁶ structure
Outcome six_sphere_structure() {
  Outcome o;
  const NKBackground s6 = s6_background();
  const auto pts = s6.sample_points(1000, 202);
  const InvariantReport r = check_invariants(s6, pts);
  o.require(r.j_squared < 1e-10, "J^2 " + fmt(r.j_squared));
  o.require(r.metric_compatibility < 1e-10, "g(J,J) " + fmt(r.metric_compatibility));
  o.require(r.omega_consistency < 1e-10, "omega=g(J.,.) " + fmt(r.omega_consistency));
  std::mt19937_64 rng(203);
  double eq = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Mat7 m = random_g2(1000 + k).matrix();
    const Vec& p = pts[k];
    const Vec x = s6.project(p, random_vec(rng, 7)), y = s6.project(p, random_vec(rng, 7)),
              z = s6.project(p, random_vec(rng, 7));
    const Vec mp = m * p;
    eq = std::max(eq, std::abs(s6.omega()(mp, {Vec(m * x), Vec(m * y)}) - s6.omega()(p, {x, y})));
    eq = std::max(eq, std::abs(s6.re_omega()(mp, {Vec(m * x), Vec(m * y), Vec(m * z)}) -
                               s6.re_omega()(p, {x, y, z})));
  }
  o.require(eq < 1e-10, "G2-equivariance " + fmt(eq));
  return o;
}

// 3 --------------------------------------------------- theorem hypothesis
Outcome hypothesis_on_s6() {
  Outcome o;
  const auto t0 = Clock::now();
  const NKBackground s6 = s6_background();
  const auto pts = s6.sample_points(100, 303);
  const double type = type_residual(s6, pts);
  const LambdaEstimate l = lambda_estimate(s6, pts);
  const double second = second_structure_equation_residual(s6, pts, l.mean);
  const double dt = seconds_since(t0);
  o.require(type < 1e-6, "(2,1)+(1,2) fraction " + fmt(type));
  o.require(l.std / std::abs(l.mean) < 1e-5, "lambda " + fmt(l.mean) + " std/mean " + fmt(l.std / std::abs(l.mean)));
  o.require(l.max_residual < 1e-5, "d omega = 3 lambda ReOmega residual " + fmt(l.max_residual));
  o.require(second < 1e-5, "d ImOmega = -2 lambda omega^2 residual " + fmt(second));
  o.require(dt < 60.0, "time " + fmt(dt) + "s");
  return o;
}

// 4 ------------------------------------------------------------- S³×S³
Outcome s3s3() {
  Outcome o;
  const auto t0 = Clock::now();
  const NKBackground bg = s3s3_background({1.0, -0.5, false});
  // Exact Maurer–Cartan dω against an independent finite-difference derivative.
  const FormField fd = exterior_derivative(bg.omega());
  std::mt19937_64 rng(404);
  double mc = 0.0;
  for (const Vec& p : bg.sample_points(10, 405)) {
    const Vec a = bg.project(p, random_vec(rng, 8)), b = bg.project(p, random_vec(rng, 8)),
              c = bg.project(p, random_vec(rng, 8));
    mc = std::max(mc, std::abs(fd(p, {a, b, c}) - bg.d_omega()(p, {a, b, c})));
  }
  const double r0 = s3s3_type_residual({1.0, 0.0, false});
  const MetricSearchResult m = find_nk_metric(-0.95, 0.95);
  const double dt = seconds_since(t0);
  o.require(bg.d_omega_is_exact() && mc < 1e-7, "exact d omega vs differences " + fmt(mc));
  o.require(r0 > 0.01, "r(b=0) " + fmt(r0));
  o.require(m.residual < 1e-8, "b* " + fmt(m.b_star) + " r " + fmt(m.residual));
  o.require(dt < 10.0, "time " + fmt(dt) + "s");
  return o;
}

// 5 ----------------------------------------------------------------- curves
Outcome curves() {
  Outcome o;
  const NKBackground s6 = s6_background();
  const double cr5 = cr_residual(great_sphere_curve(s6, e(1), e(2), e(3), 5)).l2;
  o.require(cr5 < 1e-8, "CR level 5 " + fmt(cr5));
  std::vector<double> err;
  double wirt = 0.0;
  for (int level = 3; level <= 6; ++level) {
    const CurveMesh c = great_sphere_curve(s6, e(1), e(2), e(3), level);
    const double vol = curve_volume(c), area = riemannian_area(c);
    err.push_back(std::abs(vol / (4 * M_PI) - 1.0));
    wirt = std::max(wirt, std::abs(area - vol) / area);
  }
  double min_order = 1e300;
  for (std::size_t i = 1; i < err.size(); ++i) min_order = std::min(min_order, std::log2(err[i - 1] / err[i]));
  o.require(err.back() < 1e-5, "volume rel err level 6 " + fmt(err.back()));
  o.require(min_order >= 2.0, "min observed order " + std::to_string(min_order));
  o.require(wirt < 1e-5, "Wirtinger equality " + fmt(wirt));
  const CurveMesh n = round_sphere_curve(s6, e(1), e(2), e(4), 4);
  const double area = riemannian_area(n), gap = area - std::abs(curve_volume(n));
  o.require(gap > 1e-3, "Wirtinger gap off the locus " + fmt(gap));
  return o;
}

// 6 ------------------------------------------------------- main theorem
Outcome main_theorem() {
  Outcome o;
  const auto t0 = Clock::now();
  const NKBackground s6 = s6_background();
  const CurveMesh sphere = great_sphere_curve(s6, e(1), e(2), e(3), 3);

  // (a) isometric family
  const FamilyPath orbit = g2_orbit_family(sphere, G2Path(7, 1.0), 20);
  const double da = volume_drift(orbit).relative_drift;
  o.require(da < 1e-8, "(a) G2-orbit drift " + fmt(da));

  // (b) continued non-isometric family
  ContinuationOptions opts;
  opts.steps = 20;
  const ContinuationResult cont = continue_curve(sphere, NormalPerturbationDrive{1e-2, 1}, opts);
  double max_move = 0.0;
  for (const CurveMesh& c : cont.path.curves) max_move = std::max(max_move, hausdorff_distance(sphere, c));
  const double db = cont.success ? volume_drift(cont.path).relative_drift : 1e300;
  o.require(cont.success && cont.path.curves.size() == 21 && max_move > 1e-3,
            "(b) continuation " + std::string(cont.success ? "ok" : cont.failure) + ", moved " + fmt(max_move));
  o.require(db < 1e-4, "(b) continued drift " + fmt(db));

  // (c) hypothesis-violating torus family
  const NKBackground torus = torus_testbed(TrigPolynomial::parse("sin(x5)"));
  const Eigen::Vector4d shift(0, 0, 0.25, 0);
  const FamilyPath tf = subtorus_path(torus, shift, 8, 64);
  const double dc = volume_drift(tf).relative_drift;
  const StokesReport st = stokes_check(tf, PrismRule::Degree2);
  // Independent oracles: closed-form lhs and a dense rhs (double resolution in space and time).
  const double lhs_oracle = 4 * M_PI * M_PI * (std::exp(1.0) - 1.0);
  const StokesReport dense = stokes_check(subtorus_path(torus, shift, 16, 128), PrismRule::Degree2);
  o.require(dc > 1e-2, "(c) torus drift " + fmt(dc));
  o.require(st.residual < 1e-5 * std::abs(st.lhs), "(c) Stokes |lhs-rhs|/|lhs| " + fmt(st.residual / std::abs(st.lhs)));
  o.require(std::abs(st.lhs - lhs_oracle) < 1e-5 * lhs_oracle && std::abs(st.rhs - dense.rhs) < 1e-5 * lhs_oracle,
            "(c) vs oracles lhs " + fmt(std::abs(st.lhs - lhs_oracle) / lhs_oracle) + " rhs " +
                fmt(std::abs(st.rhs - dense.rhs) / lhs_oracle));

  // (d) pushforward vanishing on S⁶ (default midpoint rule)
  const double scale = 4 * M_PI;
  const double rhs_orbit = std::abs(stokes_check(orbit).rhs);
  const double rhs_cont = cont.success ? std::abs(stokes_check(cont.path).rhs) : 1e300;
  o.require(rhs_orbit < 1e-5 * scale && rhs_cont < 1e-5 * scale,
            "(d) |chain integral|/Vol orbit " + fmt(rhs_orbit / scale) + " continued " + fmt(rhs_cont / scale));
  const double dt = seconds_since(t0);
  o.require(dt < 300.0, "time " + fmt(dt) + "s");
  return o;
}

// 7 --------------------------------------------------------------- Hausdorff
Outcome hausdorff() {
  Outcome o;
  std::mt19937_64 rng(707);
  auto cloud = [&] {
    std::vector<Vec> c(1 + rng() % 15);
    for (Vec& v : c) v = random_vec(rng, 7);
    return c;
  };
  auto brute = [](const std::vector<Vec>& X, const std::vector<Vec>& Y) {
    double ab = 0.0, ba = 0.0;
    for (const Vec& x : X) {
      double m = 1e300;
      for (const Vec& y : Y) m = std::min(m, (x - y).norm());
      ab = std::max(ab, m);
    }
    for (const Vec& y : Y) {
      double m = 1e300;
      for (const Vec& x : X) m = std::min(m, (x - y).norm());
      ba = std::max(ba, m);
    }
    return std::max(ab, ba);
  };
  int bad_identity = 0, bad_symmetry = 0, bad_positive = 0, bad_triangle = 0, bad_oracle = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto X = cloud(), Y = cloud(), Z = cloud();
    const double xy = hausdorff_distance(X, Y), yz = hausdorff_distance(Y, Z), xz = hausdorff_distance(X, Z);
    bad_identity += hausdorff_distance(X, X) != 0.0;
    bad_symmetry += xy != hausdorff_distance(Y, X);
    bad_positive += !(xy > 0.0);  // distinct random samples
    bad_triangle += xz > xy + yz + 1e-12;
    bad_oracle += xy != brute(X, Y);
  }
  o.require(bad_identity + bad_symmetry + bad_positive + bad_triangle + bad_oracle == 0,
            "axiom violations " + std::to_string(bad_identity) + "/" + std::to_string(bad_symmetry) + "/" +
                std::to_string(bad_positive) + "/" + std::to_string(bad_triangle) + "/" + std::to_string(bad_oracle));
  const NKBackground s6 = s6_background();
  const CurveMesh a = great_sphere_curve(s6, e(1), e(2), e(3), 3);
  const CurveMesh b = great_sphere_curve(s6, e(1), e(4), e(5), 3);
  const double d = hausdorff_distance(a, b), bf = brute(a.image(), b.image());
  o.require(std::abs(d - bf) < 1e-12, "orthogonal associative spheres d_H " + fmt(d) + " vs brute force " + fmt(bf));
  return o;
}

// 8 ---------------------------------------------------------- reproducibility
int run(const std::string& args) {
  const std::string cmd = std::string(NKCURVES_EXE) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string without_timestamp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.find("\"timestamp\":") == std::string::npos) out += line + "\n";
  }
  return out;
}

Outcome reproducibility() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "nkc_acceptance_repro";
  fs::remove_all(root);
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"verify-structure", "verify-structure --samples 30"},
      {"verify-structure", "verify-structure --background torus --field \"sin(x5)\" --samples 10"},
      {"find-nk-metric", "find-nk-metric"},
      {"curve-volume", "curve-volume --resolution 4"},
      {"family", "family --family perturbed --resolution 2 --steps 4"},
      {"family", "family --background torus --family subtorus"},
      {"hausdorff", "hausdorff"},
      {"stokes-check", "stokes-check"},
  };
  int identical = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const fs::path dir = root / std::to_string(k);
    const int code = run(runs[k].second + " --out " + dir.string());
    std::map<std::string, std::string> before;
    for (const auto& f : fs::directory_iterator(dir)) before[f.path().filename().string()] = without_timestamp(f.path());
    const int again = run("--config " + (dir / (runs[k].first + ".json")).string());
    bool same = code == again && !before.empty();
    for (const auto& [name, text] : before) same = same && without_timestamp(dir / name) == text;
    // The timestamp must be the only line that was dropped from the report.
    same = same && before[runs[k].first + ".json"].find("\"config\"") != std::string::npos;
    identical += same;
    if (!same) o.require(false, runs[k].second);
  }
  o.require(identical == static_cast<int>(runs.size()),
            std::to_string(identical) + "/" + std::to_string(runs.size()) + " reports regenerate bit-identically");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 octonion suite", octonion_suite},
      {"2 S6 structure", six_sphere_structure},
      {"3 theorem hypothesis on S6", hypothesis_on_s6},
      {"4 S3xS3 metric search", s3s3},
      {"5 curves", curves},
      {"6 volume constancy and Stokes", main_theorem},
      {"7 Hausdorff distance", hausdorff},
      {"8 reproducibility", reproducibility},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome r;
    try {
      r = fn();
    } catch (const std::exception& ex) {
      r.pass = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    failed += !r.pass;
    std::cout << (r.pass ? "PASS " : "FAIL ") << name << " -- " << r.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
