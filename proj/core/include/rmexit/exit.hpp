#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmexit/channel.hpp"
#include "rmexit/codes.hpp"
#include "rmexit/rational.hpp"

namespace rmexit {

// Exact enumeration walks all 2^(N-1) reduced erasure patterns; past this
// block length that is no longer a desk-side computation.
inline constexpr std::size_t kMaxExactLength = 16;

/// Extrinsic erasure-rate function of one bit (or the average over all
/// bits), stored by pattern weight: counts[w] is the number of weight-w
/// reduced erasure patterns for which decoding fails, summed over `denom`
/// focus bits.  The function value is
///   h(eps) = (1/denom) * sum_w counts[w] eps^w (1-eps)^(N-1-w).
struct ExitPolynomial {
  std::size_t length = 0;             // N; counts has N entries (w = 0..N-1)
  std::optional<std::size_t> focus;   // bit index, or nullopt for average
  std::vector<BigInt> counts;
  BigInt denom = 1;

  double eval(double eps) const;
  Rational eval_exact(const Rational& eps) const;

  /// Normalized level densities counts[w]/C(N-1,w) are nondecreasing in w
  /// for any monotone failure set (each weight-w failing pattern has all
  /// N-1-w of its upward neighbours failing; counting edges between levels
  /// gives the bound).  Exposed as a checkable predicate.
  bool normalized_densities_nondecreasing() const;
};

/// One Monte Carlo estimate of h(eps).
struct ExitCurvePoint {
  double eps = 0;
  double h = 0;
  double half_width = 0;  // 1.96 * sqrt(h(1-h)/trials); 0 for exact points
  std::uint64_t trials = 0;
};

/// Estimated (or exactly evaluated) EXIT curve on an eps grid.
struct ExitCurve {
  std::string code_label;
  std::size_t length = 0;            // block length N of the measured code
  std::optional<std::size_t> focus;  // nullopt = average
  std::uint64_t seed = 0;
  std::vector<ExitCurvePoint> points;  // eps strictly increasing
};

/// Exact EXIT polynomial of one focus bit, by enumerating all 2^(N-1)
/// reduced erasure patterns.  Throws SizeError above max_length, pointing
/// the caller at the Monte Carlo path.
ExitPolynomial exit_exact(const LinearCode& code, std::size_t focus,
                          std::size_t max_length = kMaxExactLength);

/// Exact average EXIT polynomial (1/N) sum_i h_i, enumerated for every
/// focus bit -- no symmetry assumption.
ExitPolynomial exit_average_exact(const LinearCode& code,
                                  std::size_t max_length = kMaxExactLength);

struct MonteCarloOptions {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t stream_base = 0;  // offsets RNG streams (grid point index adds to it)
};

/// Monte Carlo estimate of the EXIT curve on the given eps grid.
/// focus = nullopt means the average curve; for a transitive-by-design
/// Reed-Muller code that is measured at bit 0 (all bits agree), otherwise
/// every bit of every sampled pattern is decoded.
ExitCurve exit_monte_carlo(const LinearCode& code, std::optional<std::size_t> focus,
                           const std::vector<double>& eps_grid, const MonteCarloOptions& opts);

/// Exact integral over [0, 1]: sum_w counts[w] * w!(N-1-w)!/N! / denom.
Rational area_exact(const ExitPolynomial& poly);

/// Exact integral over [0, eps].
Rational partial_area_exact(const ExitPolynomial& poly, const Rational& eps);

/// Exact conditional entropy H(X|Y)/1 at a rational erasure probability:
/// sum over all 2^N erasure patterns of mu(pattern) * (K - rank of the
/// generator columns at non-erased positions).
Rational conditional_entropy_exact(const LinearCode& code, const Rational& eps,
                                   std::size_t max_length = kMaxExactLength);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct AreaTheoremReport {
  std::string code_label;
  Rational area;   // integral of the average EXIT function
  Rational rate;   // K/N
  std::vector<CheckResult> checks;
  bool all_pass = false;
};

/// Verifies, exactly: (1) the average EXIT area equals the code rate;
/// (2) at eps in {1/4, 1/2, 3/4}, N * integral_0^eps of the average EXIT
/// function equals H(X|Y) computed independently from rank deficiencies.
AreaTheoremReport verify_area_theorem(const LinearCode& code,
                                      std::size_t max_length = kMaxExactLength);

/// JSON object {"N": .., "i": index-or-"average", "denom": "..", "A": ["..", ..]}
/// with exact counts as decimal strings.
std::string poly_to_json(const ExitPolynomial& poly);

/// CSV with header epsilon,h,half_width,trials; floats at 17 significant
/// digits so values round-trip bit-exactly.
std::string curve_to_csv(const ExitCurve& curve);

}  // namespace rmexit
