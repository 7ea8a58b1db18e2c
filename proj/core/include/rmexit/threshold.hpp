#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmexit/exit.hpp"

namespace rmexit {

/// Where an EXIT curve crosses the levels delta, 1/2 and 1-delta.
/// A crossing the data cannot bracket is reported absent, never fabricated.
struct ThresholdReport {
  std::string code_label;
  std::size_t length = 0;  // N
  double delta = 0;
  std::optional<double> eps_lower;  // h = delta
  std::optional<double> eps_mid;    // h = 1/2
  std::optional<double> eps_upper;  // h = 1 - delta
  std::optional<double> width;      // eps_upper - eps_lower
  double capacity = 0;              // 1 - R

  bool complete() const { return eps_lower && eps_mid && eps_upper; }
};

/// Weighted least-squares fit of a nondecreasing step function
/// (pool-adjacent-violators).  Returns the fitted values.
std::vector<double> isotonic_fit(const std::vector<double>& y, const std::vector<double>& weight);

/// Crossings of a Monte Carlo curve: isotonic regression over the estimates
/// (weighted by trial count), then inverse linear interpolation on the
/// piecewise-linear interpolant through the fitted grid values.
ThresholdReport estimate_crossings(const ExitCurve& curve, double delta, double capacity);

/// Crossings of an exact EXIT polynomial: bisection to |interval| <= 1e-10.
/// The polynomial is provably nondecreasing; detecting a decreasing bracket
/// indicates a corrupted input and throws std::logic_error.
ThresholdReport estimate_crossings(const ExitPolynomial& poly, double delta, double capacity,
                                   const std::string& code_label);

/// Sharp-threshold width bound c * ln(1/(2 delta)) / ln(N) for a monotone
/// boundary property with a transitive symmetry group.  Natural logarithms;
/// c absorbs the base change and defaults to 1 (no sharper constant is
/// claimed here).
double sharp_threshold_width_bound(std::size_t length, double delta, double c = 1.0);

struct BoundParams {
  double c = 1.0;
  double delta = 0.05;     // in (0, 1/2)
  double rate_gap = 0.0;   // realized-rate excess over the target rate
  std::size_t length = 0;  // N
  double rate = 0.0;       // target rate R
};

/// Lower-bound distance from the lower threshold crossing to capacity:
///   1 - R - delta - rate_gap - c * ln(1/(2 delta)) / ln(N - 1).
/// (The reduced, (N-1)-point pattern space drives the log term.)
double capacity_gap_bound(const BoundParams& p);

struct WidthFit {
  double c = 0;                   // least-squares slope through the origin
  std::vector<double> residuals;  // width_k - c * x_k
};

/// Fit width ~ c * ln(1/(2 delta)) / ln(N-1) across reports sharing one
/// delta at two or more distinct block lengths.
WidthFit fit_width_constant(const std::vector<ThresholdReport>& reports);

/// Monte Carlo threshold measurement: estimate the curve on `grid`, then
/// one refinement pass adding 8 points inside each crossing's bracketing
/// interval, re-estimate on the merged data.
struct ThresholdMeasurement {
  ExitCurve curve;  // merged (base + refinement) curve
  ThresholdReport report;
};
ThresholdMeasurement measure_threshold(const LinearCode& code, double delta,
                                       const std::vector<double>& grid,
                                       const MonteCarloOptions& opts);

/// JSON object for a ThresholdReport (absent crossings serialize as null).
std::string threshold_to_json(const ThresholdReport& rep);

}  // namespace rmexit
