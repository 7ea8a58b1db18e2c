#include "rmexit/threshold.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace rmexit {

namespace {

std::string format_double_json(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// First eps where the piecewise-linear interpolant through (x_k, f_k)
// reaches `level`; absent when the data never brackets it.
std::optional<double> invert_monotone(const std::vector<double>& x, const std::vector<double>& f,
                                      double level) {
  if (x.empty() || f.front() > level || f.back() < level) return std::nullopt;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (f[k] >= level) {
      if (f[k] == level || k == 0) return x[k];
      const double run = f[k] - f[k - 1];
      assert(run > 0);
      return x[k - 1] + (level - f[k - 1]) / run * (x[k] - x[k - 1]);
    }
  }
  return std::nullopt;
}

// Bracketing interval [x_a, x_b] around the crossing in the fitted data.
std::optional<std::pair<double, double>> bracket_of(const std::vector<double>& x,
                                                    const std::vector<double>& f, double level) {
  if (x.empty() || f.front() > level || f.back() < level) return std::nullopt;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (f[k] >= level) return std::make_pair(x[k == 0 ? 0 : k - 1], x[k]);
  return std::nullopt;
}

void finish_report(ThresholdReport& rep) {
  if (rep.eps_lower && rep.eps_upper) rep.width = *rep.eps_upper - *rep.eps_lower;
}

}  // namespace

std::vector<double> isotonic_fit(const std::vector<double>& y, const std::vector<double>& weight) {
  assert(weight.empty() || weight.size() == y.size());
  // Pool adjacent violators: maintain blocks of (weighted mean, weight,
  // count); merge backwards whenever the last two means are out of order.
  struct Block {
    double mean, weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  blocks.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double w = weight.empty() ? 1.0 : weight[i];
    blocks.push_back({y[i], w, 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean > blocks.back().mean) {
      const Block b = blocks.back();
      blocks.pop_back();
      Block& a = blocks.back();
      const double tw = a.weight + b.weight;
      a.mean = (a.mean * a.weight + b.mean * b.weight) / tw;
      a.weight = tw;
      a.count += b.count;
    }
  }
  std::vector<double> fit;
  fit.reserve(y.size());
  for (const auto& b : blocks) fit.insert(fit.end(), b.count, b.mean);
  return fit;
}

ThresholdReport estimate_crossings(const ExitCurve& curve, double delta, double capacity) {
  if (!(delta > 0 && delta < 0.5))
    throw std::invalid_argument("estimate_crossings: delta must lie in (0, 1/2)");
  std::vector<double> x, y, w;
  for (const auto& p : curve.points) {
    x.push_back(p.eps);
    y.push_back(p.h);
    w.push_back(static_cast<double>(p.trials ? p.trials : 1));
  }
  const std::vector<double> fit = isotonic_fit(y, w);

  ThresholdReport rep;
  rep.code_label = curve.code_label;
  rep.length = curve.length;
  rep.delta = delta;
  rep.capacity = capacity;
  rep.eps_lower = invert_monotone(x, fit, delta);
  rep.eps_mid = invert_monotone(x, fit, 0.5);
  rep.eps_upper = invert_monotone(x, fit, 1.0 - delta);
  finish_report(rep);
  return rep;
}

ThresholdReport estimate_crossings(const ExitPolynomial& poly, double delta, double capacity,
                                   const std::string& code_label) {
  if (!(delta > 0 && delta < 0.5))
    throw std::invalid_argument("estimate_crossings: delta must lie in (0, 1/2)");
  const double h0 = poly.eval(0.0);
  const double h1 = poly.eval(1.0);
  if (h0 > h1) throw std::logic_error("estimate_crossings: polynomial decreases over [0, 1]");

  auto solve = [&](double level) -> std::optional<double> {
    if (h0 > level || h1 < level) return std::nullopt;
    double lo = 0.0, hi = 1.0;
    double flo = h0;
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      const double fm = poly.eval(mid);
      if (fm < flo - 1e-12)
        throw std::logic_error("estimate_crossings: polynomial not monotone (corrupted input)");
      if (fm >= level)
        hi = mid;
      else
        lo = mid, flo = fm;
    }
    return 0.5 * (lo + hi);
  };

  ThresholdReport rep;
  rep.code_label = code_label;
  rep.length = poly.length;
  rep.delta = delta;
  rep.capacity = capacity;
  rep.eps_lower = solve(delta);
  rep.eps_mid = solve(0.5);
  rep.eps_upper = solve(1.0 - delta);
  finish_report(rep);
  return rep;
}

double sharp_threshold_width_bound(std::size_t length, double delta, double c) {
  if (!(delta > 0 && delta < 0.5))
    throw std::invalid_argument("sharp_threshold_width_bound: delta must lie in (0, 1/2)");
  if (!(c > 0)) throw std::invalid_argument("sharp_threshold_width_bound: c must be positive");
  if (length < 2) throw std::invalid_argument("sharp_threshold_width_bound: N must be >= 2");
  return c * std::log(1.0 / (2.0 * delta)) / std::log(static_cast<double>(length));
}

double capacity_gap_bound(const BoundParams& p) {
  if (!(p.delta > 0 && p.delta < 0.5))
    throw std::invalid_argument("capacity_gap_bound: delta must lie in (0, 1/2)");
  if (!(p.c > 0)) throw std::invalid_argument("capacity_gap_bound: c must be positive");
  if (p.length < 3) throw std::invalid_argument("capacity_gap_bound: N must be >= 3");
  return 1.0 - p.rate - p.delta - p.rate_gap -
         p.c * std::log(1.0 / (2.0 * p.delta)) / std::log(static_cast<double>(p.length - 1));
}

WidthFit fit_width_constant(const std::vector<ThresholdReport>& reports) {
  if (reports.size() < 2)
    throw std::invalid_argument("fit_width_constant: need at least two reports");
  const double delta = reports.front().delta;
  std::set<std::size_t> lengths;
  std::vector<double> xs, ws;
  for (const auto& r : reports) {
    if (r.delta != delta)
      throw std::invalid_argument("fit_width_constant: all reports must share one delta");
    if (!r.width)
      throw std::invalid_argument("fit_width_constant: report for '" + r.code_label +
                                  "' has no measured width");
    if (r.length < 3) throw std::invalid_argument("fit_width_constant: N must be >= 3");
    lengths.insert(r.length);
    xs.push_back(std::log(1.0 / (2.0 * delta)) / std::log(static_cast<double>(r.length - 1)));
    ws.push_back(*r.width);
  }
  if (lengths.size() < 2)
    throw std::invalid_argument("fit_width_constant: need two or more distinct block lengths");
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += xs[k] * xs[k];
    sxy += xs[k] * ws[k];
  }
  WidthFit fit;
  fit.c = sxy / sxx;
  for (std::size_t k = 0; k < xs.size(); ++k) fit.residuals.push_back(ws[k] - fit.c * xs[k]);
  return fit;
}

ThresholdMeasurement measure_threshold(const LinearCode& code, double delta,
                                       const std::vector<double>& grid,
                                       const MonteCarloOptions& opts) {
  const double capacity = 1.0 - code.rate().convert_to<double>();
  ExitCurve base = exit_monte_carlo(code, std::nullopt, grid, opts);

  // One refinement pass: 8 interior points per bracketed crossing level.
  std::vector<double> x, y, w;
  for (const auto& p : base.points) {
    x.push_back(p.eps);
    y.push_back(p.h);
    w.push_back(static_cast<double>(p.trials));
  }
  const std::vector<double> fit = isotonic_fit(y, w);
  std::set<double> extra;
  for (double level : {delta, 0.5, 1.0 - delta}) {
    const auto br = bracket_of(x, fit, level);
    if (!br || br->second <= br->first) continue;
    const double step = (br->second - br->first) / 9.0;
    for (int k = 1; k <= 8; ++k) extra.insert(br->first + step * static_cast<double>(k));
  }
  for (double e : x) extra.erase(e);  // keep the merged grid strictly increasing

  ExitCurve merged = base;
  if (!extra.empty()) {
    MonteCarloOptions ropts = opts;
    ropts.stream_base = opts.stream_base + grid.size();  // fresh, deterministic streams
    const std::vector<double> refine_grid(extra.begin(), extra.end());
    const ExitCurve refined = exit_monte_carlo(code, std::nullopt, refine_grid, ropts);
    merged.points.insert(merged.points.end(), refined.points.begin(), refined.points.end());
    std::sort(merged.points.begin(), merged.points.end(),
              [](const ExitCurvePoint& a, const ExitCurvePoint& b) { return a.eps < b.eps; });
  }

  ThresholdReport report = estimate_crossings(merged, delta, capacity);
  return ThresholdMeasurement{std::move(merged), std::move(report)};
}

std::string threshold_to_json(const ThresholdReport& rep) {
  auto opt = [](const std::optional<double>& v) {
    return v ? format_double_json(*v) : std::string("null");
  };
  std::string label;
  for (char ch : rep.code_label) {  // minimal JSON string escaping
    if (ch == '"' || ch == '\\') label += '\\';
    label += ch;
  }
  std::string out = "{\n";
  out += "  \"label\": \"" + label + "\",\n";
  out += "  \"N\": " + std::to_string(rep.length) + ",\n";
  out += "  \"delta\": " + format_double_json(rep.delta) + ",\n";
  out += "  \"eps_lower\": " + opt(rep.eps_lower) + ",\n";
  out += "  \"eps_mid\": " + opt(rep.eps_mid) + ",\n";
  out += "  \"eps_upper\": " + opt(rep.eps_upper) + ",\n";
  out += "  \"width\": " + opt(rep.width) + ",\n";
  out += "  \"capacity\": " + format_double_json(rep.capacity) + "\n";
  out += "}\n";
  return out;
}

}  // namespace rmexit
