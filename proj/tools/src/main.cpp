// Command-line front end: constructs codes, runs EXIT measurements and the
// exact verification suite, estimates thresholds, sweeps code families, and
// writes CSV/JSON/SVG artifacts with a digest manifest per run directory.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <functional>
#include <memory>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <set>
#include <utility>
#include <string>
#include <vector>

#include "rmexit/channel.hpp"
#include "rmexit/codes.hpp"
#include "rmexit/exit.hpp"
#include "rmexit/rng.hpp"
#include "rmexit/symmetry.hpp"
#include "rmexit/threshold.hpp"
#include "rmexit/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rmexit;

namespace {

// Exit statuses: 0 success/pass, 1 usage, 2 check failure, 3 size cap hit.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kCheckFailed = 2;
constexpr int kResourceCap = 3;

std::vector<double> parse_grid(const std::string& spec) {
  double lo = 0, hi = 0;
  unsigned steps = 0;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%u%c", &lo, &hi, &steps, &tail) != 3)
    throw std::invalid_argument("eps grid '" + spec + "': expected lo:hi:steps");
  if (!(lo >= 0.0 && hi <= 1.0 && lo < hi))
    throw std::invalid_argument("eps grid '" + spec + "': need 0 <= lo < hi <= 1");
  if (steps < 2) throw std::invalid_argument("eps grid '" + spec + "': need at least 2 steps");
  std::vector<double> grid(steps);
  for (unsigned k = 0; k < steps; ++k)
    grid[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
  return grid;
}

// "rm:3,1" -> "rm3_1"; generator file paths keep only a sanitized basename.
std::string sanitize_label(const std::string& label) {
  std::string base = label;
  const auto slash = base.find_last_of('/');
  if (slash != std::string::npos) base = base.substr(slash + 1);
  std::string out;
  for (char ch : base) {
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_')
      out += ch;
    else if (ch != ':')
      out += '_';
  }
  return out.empty() ? "code" : out;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

// One run directory: emitted files are recorded with content digests and
// summarized in manifest.json alongside the effective configuration.
class RunDir {
 public:
  RunDir(const std::string& dir, std::string verb, json config)
      : dir_(dir), verb_(std::move(verb)), config_(std::move(config)),
        start_(std::chrono::steady_clock::now()) {
    fs::create_directories(dir_);
  }

  void write(const std::string& name, const std::string& content) {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
    out << content;
    outputs_.push_back({{"file", name}, {"sha256", sha256_hex(content)}});
  }

  void finalize() {
    const auto wall =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              start_);
    json manifest;
    manifest["version"] = kVersion;
    manifest["verb"] = verb_;
    manifest["config"] = config_;
    manifest["wall_ms"] = wall.count();
    manifest["outputs"] = outputs_;
    std::ofstream out(dir_ / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << "\n";
    std::printf("wrote %zu file(s) + manifest.json to %s\n", outputs_.size(),
                dir_.string().c_str());
  }

 private:
  fs::path dir_;
  std::string verb_;
  json config_;
  std::chrono::steady_clock::time_point start_;
  json outputs_ = json::array();
};

// ---------------------------------------------------------------------------
// SVG overlay plot: one polyline per curve, dashed vertical line at each
// code's capacity 1-R, axes with 0/0.25/../1 ticks, legend. No dependencies.

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string svg_overlay(const std::vector<const ExitCurve*>& curves,
                        const std::vector<double>& capacities) {
  const double left = 70, top = 30, plot_w = 430, plot_h = 390;
  const double width = 720, height = 480;
  auto px = [&](double eps) { return left + eps * plot_w; };
  auto py = [&](double h) { return top + (1.0 - h) * plot_h; };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt2(width) + "\" height=\"" +
       fmt2(height) + "\" viewBox=\"0 0 " + fmt2(width) + " " + fmt2(height) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes and grid ticks.
  s += "<g stroke=\"#444\" stroke-width=\"1\" fill=\"none\">\n";
  s += "<rect x=\"" + fmt2(left) + "\" y=\"" + fmt2(top) + "\" width=\"" + fmt2(plot_w) +
       "\" height=\"" + fmt2(plot_h) + "\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double f = t / 4.0;
    s += "<line x1=\"" + fmt2(px(f)) + "\" y1=\"" + fmt2(top + plot_h) + "\" x2=\"" +
         fmt2(px(f)) + "\" y2=\"" + fmt2(top + plot_h + 6) + "\"/>\n";
    s += "<line x1=\"" + fmt2(left - 6) + "\" y1=\"" + fmt2(py(f)) + "\" x2=\"" + fmt2(left) +
         "\" y2=\"" + fmt2(py(f)) + "\"/>\n";
  }
  s += "</g>\n";
  s += "<g font-family=\"sans-serif\" font-size=\"13\" fill=\"#222\">\n";
  for (int t = 0; t <= 4; ++t) {
    const double f = t / 4.0;
    s += "<text x=\"" + fmt2(px(f)) + "\" y=\"" + fmt2(top + plot_h + 22) +
         "\" text-anchor=\"middle\">" + fmt2(f) + "</text>\n";
    s += "<text x=\"" + fmt2(left - 10) + "\" y=\"" + fmt2(py(f) + 4) +
         "\" text-anchor=\"end\">" + fmt2(f) + "</text>\n";
  }
  s += "<text x=\"" + fmt2(left + plot_w / 2) + "\" y=\"" + fmt2(height - 14) +
       "\" text-anchor=\"middle\">erasure probability</text>\n";
  s += "<text x=\"18\" y=\"" + fmt2(top + plot_h / 2) +
       "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " + fmt2(top + plot_h / 2) +
       ")\">extrinsic erasure rate</text>\n";
  s += "</g>\n";

  // Curves, capacity markers, legend.
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = kPalette[c % (sizeof kPalette / sizeof *kPalette)];
    std::string pts;
    for (const auto& p : curves[c]->points)
      pts += fmt2(px(p.eps)) + "," + fmt2(py(p.h)) + " ";
    s += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
         "\" stroke-width=\"1.8\" points=\"" + pts + "\"/>\n";
    const double cap = capacities[c];
    s += "<line x1=\"" + fmt2(px(cap)) + "\" y1=\"" + fmt2(top) + "\" x2=\"" + fmt2(px(cap)) +
         "\" y2=\"" + fmt2(top + plot_h) + "\" stroke=\"" + color +
         "\" stroke-width=\"1\" stroke-dasharray=\"6 3\"/>\n";

    const double ly = top + 16 + 22 * static_cast<double>(c);
    s += "<line x1=\"" + fmt2(left + plot_w + 16) + "\" y1=\"" + fmt2(ly) + "\" x2=\"" +
         fmt2(left + plot_w + 44) + "\" y2=\"" + fmt2(ly) + "\" stroke=\"" + color +
         "\" stroke-width=\"2\"/>\n";
    s += "<text font-family=\"sans-serif\" font-size=\"13\" fill=\"#222\" x=\"" +
         fmt2(left + plot_w + 50) + "\" y=\"" + fmt2(ly + 4) + "\">" + curves[c]->code_label +
         "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

// ---------------------------------------------------------------------------

ExitCurve exact_curve_on_grid(const LinearCode& code, const ExitPolynomial& poly,
                              const std::vector<double>& grid) {
  ExitCurve curve;
  curve.code_label = code.label;
  curve.length = code.length;
  curve.focus = poly.focus;
  curve.seed = 0;
  for (double eps : grid) curve.points.push_back({eps, poly.eval(eps), 0.0, 0});
  return curve;
}

struct ExitOpts {
  std::string code;
  std::string grid_spec = "0:1:33";
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  bool exact = false;
  std::int64_t focus = -1;  // -1 = average over bits
  std::string out = ".";
};

int cmd_exit(const ExitOpts& o) {
  const LinearCode code = code_from_spec(o.code);
  const std::vector<double> grid = parse_grid(o.grid_spec);
  std::optional<std::size_t> focus;
  if (o.focus >= 0) focus = static_cast<std::size_t>(o.focus);

  json config{{"code", o.code},     {"eps_grid", o.grid_spec}, {"trials", o.trials},
              {"seed", o.seed},     {"workers", o.workers},    {"exact", o.exact},
              {"focus", o.focus}};
  RunDir run(o.out, "exit", config);
  const std::string stem = sanitize_label(code.label);

  if (o.exact) {
    const ExitPolynomial poly =
        focus ? exit_exact(code, *focus) : exit_average_exact(code);
    run.write(stem + "_exit.csv", curve_to_csv(exact_curve_on_grid(code, poly, grid)));
    run.write(stem + "_exit_poly.json", poly_to_json(poly));
  } else {
    MonteCarloOptions mc;
    mc.trials = o.trials;
    mc.seed = o.seed;
    mc.threads = o.workers;
    run.write(stem + "_exit.csv", curve_to_csv(exit_monte_carlo(code, focus, grid, mc)));
  }
  run.finalize();
  return kOk;
}

int cmd_code_info(const std::string& spec) {
  const LinearCode code = code_from_spec(spec);
  std::printf("label: %s\n", code.label.c_str());
  std::printf("N:     %zu\n", code.length);
  std::printf("K:     %zu\n", code.dim);
  std::printf("rate:  %s\n", code.rate().str().c_str());
  if (code.rm && code.dim > 20) {
    std::printf("d:     %zu (formula)\n", code.rm->distance());
  } else if (code.dim <= 20) {
    const std::size_t d = min_distance_bruteforce(code);
    if (code.rm)
      std::printf("d:     %zu (formula, exhaustively confirmed)\n", d);
    else
      std::printf("d:     %zu (exhaustive)\n", d);
  } else {
    std::printf("d:     unknown (K = %zu too large for exhaustive search)\n", code.dim);
  }
  return kOk;
}

// Exact verification suite: Area Theorem, per-bit EXIT equality, monotone
// failure sets (structural + randomized), automorphism invariance.
int cmd_verify(const std::string& spec, std::uint64_t seed, const std::string& out) {
  const LinearCode code = code_from_spec(spec);
  json config{{"code", spec}, {"seed", seed}};
  RunDir run(out, "verify", config);

  std::vector<CheckResult> checks;
  const AreaTheoremReport area = verify_area_theorem(code);
  checks.insert(checks.end(), area.checks.begin(), area.checks.end());

  {
    CheckResult c;
    c.name = "per-bit EXIT profiles identical";
    c.pass = all_exit_profiles_equal(code);
    c.detail = std::to_string(code.length) + " exact profiles compared";
    checks.push_back(std::move(c));
  }
  {
    CheckResult c;
    c.name = "normalized level densities nondecreasing";
    c.pass = exit_average_exact(code).normalized_densities_nondecreasing();
    c.detail = "average profile over " + std::to_string(code.length) + " bits";
    checks.push_back(std::move(c));
  }
  {
    // Randomized dominance: a failing pattern stays failing when widened.
    const std::size_t red_len = code.length - 1;
    const RngStream stream{seed, 0xd0};
    std::size_t violations = 0, exercised = 0;
    Gf2Span ws(code.dim);
    for (std::uint64_t t = 0; t < 2000; ++t) {
      const std::uint64_t key = stream.trial_key(t);
      const std::uint64_t mask = mix64(key) & ((std::uint64_t{1} << red_len) - 1);
      const std::size_t focus = static_cast<std::size_t>(mix64(key ^ 1) % code.length);
      BitVector pat = BitVector::from_mask(mask, red_len);
      if (!in_failure_set(code, focus, pat, ws)) continue;
      ++exercised;
      BitVector wider = pat;
      for (int extra = 0; extra < 2; ++extra)
        wider.set(static_cast<std::size_t>(mix64(key ^ (2 + extra)) % red_len), true);
      if (!in_failure_set(code, focus, wider, ws)) ++violations;
    }
    CheckResult c;
    c.name = "failure sets monotone under widening";
    c.pass = violations == 0;
    c.detail = std::to_string(exercised) + " failing patterns widened, " +
               std::to_string(violations) + " violations";
    checks.push_back(std::move(c));
  }
  if (code.rm) {
    // Automorphisms fixing bit 0 must permute the failure set onto itself.
    const std::size_t red_len = code.length - 1;
    std::size_t mismatches = 0;
    Gf2Span ws(code.dim);
    const unsigned autos = 12;
    for (unsigned a = 0; a < autos; ++a) {
      const Permutation sigma =
          to_coordinate_permutation(random_affine_automorphism(code.rm->n, seed + a, 0));
      const Permutation red = reduced_permutation(sigma, 0, 0);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << red_len); ++mask) {
        const BitVector q = BitVector::from_mask(mask, red_len);
        if (in_failure_set(code, 0, q, ws) != in_failure_set(code, 0, red.apply(q), ws))
          ++mismatches;
      }
    }
    CheckResult c;
    c.name = "failure set invariant under stabilizer automorphisms";
    c.pass = mismatches == 0;
    c.detail = std::to_string(autos) + " automorphisms, exhaustive patterns, " +
               std::to_string(mismatches) + " mismatches";
    checks.push_back(std::move(c));
  }

  bool all_pass = true;
  json jchecks = json::array();
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    jchecks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    std::printf("%s %s (%s)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
  }
  json report{{"label", code.label}, {"N", code.length},  {"K", code.dim},
              {"area", area.area.str()}, {"rate", area.rate.str()},
              {"checks", jchecks},   {"all_pass", all_pass}};
  run.write(sanitize_label(code.label) + "_verify.json", report.dump(2) + "\n");
  run.finalize();
  return all_pass ? kOk : kCheckFailed;
}

int cmd_symmetry_verify(const std::string& spec, std::uint64_t quads, std::uint64_t seed,
                        const std::string& out) {
  const LinearCode code = code_from_spec(spec);
  if (!code.rm)
    throw std::invalid_argument("symmetry verify: '" + spec + "' is not a Reed-Muller code");
  const unsigned n = code.rm->n;
  const std::size_t size = code.length;
  if (size < 2)
    throw std::invalid_argument("symmetry verify: need block length >= 2");

  json config{{"code", spec}, {"quads", quads}, {"seed", seed}};
  RunDir run(out, "symmetry", config);

  const RngStream stream{seed, 0x2b};
  std::uint64_t witness_failures = 0, closure_failures = 0;
  for (std::uint64_t q = 0; q < quads; ++q) {
    const std::uint64_t key = stream.trial_key(q);
    const std::size_t a = static_cast<std::size_t>(mix64(key ^ 1) % size);
    std::size_t b = static_cast<std::size_t>(mix64(key ^ 2) % size);
    for (std::uint64_t salt = 3; b == a; ++salt)
      b = static_cast<std::size_t>(mix64(key ^ salt) % size);
    const std::size_t c = static_cast<std::size_t>(mix64(key ^ 0x10) % size);
    std::size_t d = static_cast<std::size_t>(mix64(key ^ 0x20) % size);
    for (std::uint64_t salt = 0x21; d == c; ++salt)
      d = static_cast<std::size_t>(mix64(key ^ salt) % size);

    const AffinePermutation ap = two_transitive_witness(n, a, b, c, d);
    if (ap.map_point(a) != c || ap.map_point(b) != d) {
      ++witness_failures;
      continue;
    }
    if (!is_automorphism(code, to_coordinate_permutation(ap))) ++closure_failures;
  }

  const bool pass = witness_failures == 0 && closure_failures == 0;
  json report{{"label", code.label},
              {"n", n},
              {"quads", quads},
              {"witness_failures", witness_failures},
              {"closure_failures", closure_failures},
              {"pass", pass}};
  run.write(sanitize_label(code.label) + "_symmetry.json", report.dump(2) + "\n");
  run.finalize();
  std::printf("%s %llu quadruples, %llu witness failures, %llu closure failures\n",
              pass ? "PASS" : "FAIL", static_cast<unsigned long long>(quads),
              static_cast<unsigned long long>(witness_failures),
              static_cast<unsigned long long>(closure_failures));
  return pass ? kOk : kCheckFailed;
}

struct ThresholdOpts {
  std::string code;
  std::string grid_spec = "0:1:33";
  double delta = 0.05;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  bool exact = false;
  std::string out = ".";
};

int cmd_threshold(const ThresholdOpts& o) {
  const LinearCode code = code_from_spec(o.code);
  const std::vector<double> grid = parse_grid(o.grid_spec);
  json config{{"code", o.code},   {"eps_grid", o.grid_spec}, {"delta", o.delta},
              {"trials", o.trials}, {"seed", o.seed},        {"workers", o.workers},
              {"exact", o.exact}};
  RunDir run(o.out, "threshold", config);
  const std::string stem = sanitize_label(code.label);
  const double capacity = 1.0 - code.rate().convert_to<double>();

  if (o.exact) {
    const ExitPolynomial poly = exit_average_exact(code);
    const ThresholdReport rep = estimate_crossings(poly, o.delta, capacity, code.label);
    run.write(stem + "_exit.csv", curve_to_csv(exact_curve_on_grid(code, poly, grid)));
    run.write(stem + "_threshold.json", threshold_to_json(rep));
  } else {
    MonteCarloOptions mc;
    mc.trials = o.trials;
    mc.seed = o.seed;
    mc.threads = o.workers;
    const ThresholdMeasurement m = measure_threshold(code, o.delta, grid, mc);
    run.write(stem + "_exit.csv", curve_to_csv(m.curve));
    run.write(stem + "_threshold.json", threshold_to_json(m.report));
  }
  run.finalize();
  return kOk;
}

struct SweepOpts {
  std::vector<std::string> codes;
  std::string grid_spec = "0:1:33";
  std::vector<double> deltas = {0.05};
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string out = ".";
};

int cmd_sweep(const SweepOpts& o) {
  const std::vector<double> grid = parse_grid(o.grid_spec);
  for (double d : o.deltas)
    if (!(d > 0 && d < 0.5))
      throw std::invalid_argument("crossing level must lie in (0, 1/2)");
  json config{{"codes", o.codes}, {"eps_grid", o.grid_spec}, {"deltas", o.deltas},
              {"trials", o.trials}, {"seed", o.seed},        {"workers", o.workers}};
  RunDir run(o.out, "sweep", config);

  MonteCarloOptions mc;
  mc.trials = o.trials;
  mc.seed = o.seed;
  mc.threads = o.workers;

  std::vector<ExitCurve> curves;
  std::vector<double> capacities;
  std::vector<ThresholdReport> reports;
  json jreports = json::array();
  json errors = json::array();

  for (const auto& spec : o.codes) {
    try {
      const LinearCode code = code_from_spec(spec);
      const double capacity = 1.0 - code.rate().convert_to<double>();
      // One measurement per code: refinement brackets the first level's
      // crossings; further levels are read off the same merged curve.
      const ThresholdMeasurement m = measure_threshold(code, o.deltas.front(), grid, mc);
      run.write(sanitize_label(code.label) + "_exit.csv", curve_to_csv(m.curve));
      curves.push_back(m.curve);
      capacities.push_back(capacity);
      jreports.push_back(json::parse(threshold_to_json(m.report)));
      reports.push_back(m.report);
      for (std::size_t k = 1; k < o.deltas.size(); ++k) {
        const ThresholdReport extra = estimate_crossings(m.curve, o.deltas[k], capacity);
        jreports.push_back(json::parse(threshold_to_json(extra)));
        reports.push_back(extra);
      }
    } catch (const std::exception& e) {
      // One broken spec must not sink the rest of the sweep.
      errors.push_back({{"code", spec}, {"error", e.what()}});
      std::fprintf(stderr, "sweep: %s: %s\n", spec.c_str(), e.what());
    }
  }

  json table{{"deltas", o.deltas}, {"reports", jreports}, {"errors", errors}};
  // Width-vs-length fit, per level: needs two distinct lengths with widths.
  json fits = json::array();
  for (double d : o.deltas) {
    std::vector<ThresholdReport> fit_input;
    std::set<std::size_t> lengths;
    for (const auto& r : reports)
      if (r.delta == d && r.width) {
        fit_input.push_back(r);
        lengths.insert(r.length);
      }
    if (fit_input.size() >= 2 && lengths.size() >= 2) {
      const WidthFit fit = fit_width_constant(fit_input);
      fits.push_back({{"delta", d}, {"c", fit.c}, {"residuals", fit.residuals}});
    } else {
      fits.push_back({{"delta", d}, {"c", nullptr}, {"residuals", json::array()}});
    }
  }
  table["width_fit"] = fits;
  run.write("thresholds.json", table.dump(2) + "\n");

  if (!curves.empty()) {
    std::vector<const ExitCurve*> refs;
    for (const auto& c : curves) refs.push_back(&c);
    run.write("sweep.svg", svg_overlay(refs, capacities));
  }
  run.finalize();
  return errors.empty() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reed-Muller EXIT analysis over the binary erasure channel"};
  app.require_subcommand(1);

  // A verb named both on the command line and as a config-file section is
  // triggered twice by the parser; each verb body must still run only once.
  const auto once = [](std::function<void()> fn) {
    return [fn = std::move(fn), done = std::make_shared<bool>(false)] {
      if (!std::exchange(*done, true)) fn();
    };
  };
  app.set_config("--config", "", "Plain-text key=value run configuration");
  app.get_config_formatter_base()->comment('#');

  int rc = kOk;

  std::string info_spec;
  auto* info = app.add_subcommand("code-info", "Print N, K, d and the exact rate of a code");
  info->add_option("code,--code", info_spec, "Code spec: rm:n,r or a generator file path")
      ->required();
  info->callback(once([&] { rc = cmd_code_info(info_spec); }));

  ExitOpts eo;
  auto* exit_cmd = app.add_subcommand("exit", "Measure or exactly evaluate an EXIT curve");
  exit_cmd->add_option("code,--code", eo.code, "Code spec")->required();
  exit_cmd->add_option("--eps-grid", eo.grid_spec, "Erasure grid lo:hi:steps")
      ->capture_default_str();
  exit_cmd->add_option("--trials", eo.trials, "Monte Carlo trials per grid point")
      ->check(CLI::PositiveNumber)->capture_default_str();
  exit_cmd->add_option("--seed", eo.seed, "Base RNG seed")->capture_default_str();
  exit_cmd->add_option("--workers", eo.workers, "Worker threads")
      ->check(CLI::PositiveNumber)->capture_default_str();
  exit_cmd->add_flag("--exact", eo.exact, "Exact enumeration (block length <= 16)");
  exit_cmd->add_option("--focus", eo.focus, "Focus bit index (-1 = average over bits)")
      ->capture_default_str();
  exit_cmd->add_option("--out", eo.out, "Output directory")->capture_default_str();
  exit_cmd->callback(once([&] { rc = cmd_exit(eo); }));

  std::string verify_spec, verify_out = ".";
  std::uint64_t verify_seed = 1;
  auto* verify = app.add_subcommand("verify", "Run the exact verification suite on one code");
  verify->add_option("code,--code", verify_spec, "Code spec")->required();
  verify->add_option("--seed", verify_seed, "Seed for randomized spot checks")
      ->capture_default_str();
  verify->add_option("--out", verify_out, "Output directory")->capture_default_str();
  verify->callback(once([&] { rc = cmd_verify(verify_spec, verify_seed, verify_out); }));

  std::string sym_spec, sym_out = ".";
  std::uint64_t sym_quads = 1000, sym_seed = 1;
  auto* symmetry = app.add_subcommand("symmetry", "Symmetry-group checks");
  auto* sym_verify =
      symmetry->add_subcommand("verify", "Check transitivity witnesses and code closure");
  sym_verify->add_option("code,--code", sym_spec, "Reed-Muller code spec rm:n,r")->required();
  sym_verify->add_option("--quads", sym_quads, "Number of random position quadruples")
      ->check(CLI::PositiveNumber)->capture_default_str();
  sym_verify->add_option("--seed", sym_seed, "RNG seed")->capture_default_str();
  sym_verify->add_option("--out", sym_out, "Output directory")->capture_default_str();
  symmetry->require_subcommand(1);
  sym_verify->callback(once([&] { rc = cmd_symmetry_verify(sym_spec, sym_quads, sym_seed, sym_out); }));

  ThresholdOpts to;
  auto* threshold = app.add_subcommand("threshold", "Estimate EXIT crossing points of one code");
  threshold->add_option("code,--code", to.code, "Code spec")->required();
  threshold->add_option("--eps-grid", to.grid_spec, "Erasure grid lo:hi:steps")
      ->capture_default_str();
  threshold->add_option("--delta", to.delta, "Crossing level (in (0, 1/2))")
      ->capture_default_str();
  threshold->add_option("--trials", to.trials, "Monte Carlo trials per grid point")
      ->check(CLI::PositiveNumber)->capture_default_str();
  threshold->add_option("--seed", to.seed, "Base RNG seed")->capture_default_str();
  threshold->add_option("--workers", to.workers, "Worker threads")
      ->check(CLI::PositiveNumber)->capture_default_str();
  threshold->add_flag("--exact", to.exact, "Exact polynomial route (block length <= 16)");
  threshold->add_option("--out", to.out, "Output directory")->capture_default_str();
  threshold->callback(once([&] { rc = cmd_threshold(to); }));

  SweepOpts so;
  auto* sweep = app.add_subcommand("sweep", "Threshold-measure a list of codes; overlay plot");
  sweep->add_option("--code,--codes", so.codes, "Code specs (space-separated or repeated)")
      ->required()->take_all();
  sweep->add_option("--eps-grid", so.grid_spec, "Erasure grid lo:hi:steps")
      ->capture_default_str();
  sweep->add_option("--delta", so.deltas,
                    "Crossing levels in (0, 1/2); refinement targets the first")
      ->capture_default_str();
  sweep->add_option("--trials", so.trials, "Monte Carlo trials per grid point")
      ->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--seed", so.seed, "Base RNG seed")->capture_default_str();
  sweep->add_option("--workers", so.workers, "Worker threads")
      ->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--out", so.out, "Output directory")->capture_default_str();
  sweep->callback(once([&] { rc = cmd_sweep(so); }));

  // A verb's flags may be recorded in a config-file section under the verb's
  // name, and --config itself may appear after the verb on the command line.
  for (CLI::App* sub : {info, exit_cmd, verify, symmetry, sym_verify, threshold, sweep})
    sub->fallthrough();
  for (CLI::App* sub : {info, exit_cmd, verify, sym_verify, threshold, sweep})
    sub->configurable();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const SizeError& e) {
    std::fprintf(stderr, "size cap: %s\n", e.what());
    return kResourceCap;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return rc;
}
