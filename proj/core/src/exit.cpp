#include "rmexit/exit.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace rmexit {

namespace {

void require_exact_size(const LinearCode& code, std::size_t max_length, const char* what) {
  // Hard ceiling independent of the configurable cap: the enumerations walk
  // 2^N patterns as 64-bit masks.
  constexpr std::size_t kHardCeiling = 32;
  if (code.length > max_length || code.length > kHardCeiling)
    throw SizeError(std::string(what) + ": N = " + std::to_string(code.length) +
                    " exceeds the exact-enumeration max " +
                    std::to_string(std::min(max_length, kHardCeiling)) +
                    "; use the Monte Carlo path instead");
}

// Accumulate the failure-count-by-weight profile of one focus bit.
void accumulate_profile(const LinearCode& code, std::size_t focus, std::vector<BigInt>& counts) {
  const std::size_t red_len = code.length - 1;
  assert(red_len < kWordBits);
  BitVector reduced(red_len);
  Gf2Span span(code.dim);
  const std::uint64_t total = std::uint64_t{1} << red_len;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (red_len) reduced.words()[0] = mask;
    if (in_failure_set(code, focus, reduced, span))
      counts[static_cast<std::size_t>(std::popcount(mask))] += 1;
  }
}

double z_half_width(double h, std::uint64_t trials) {
  if (trials == 0) return 0.0;
  return 1.96 * std::sqrt(h * (1.0 - h) / static_cast<double>(trials));
}

// Fixed-size work units so the trial->chunk mapping is independent of the
// worker count; chunk results are combined in index order.
constexpr std::uint64_t kChunkTrials = 4096;

std::uint64_t count_failures(const LinearCode& code, std::optional<std::size_t> focus, double eps,
                             RngStream stream, std::uint64_t t0, std::uint64_t t1) {
  std::uint64_t failures = 0;
  Gf2Span span(code.dim);
  if (focus || code.rm) {
    const std::size_t bit = focus.value_or(0);
    for (std::uint64_t t = t0; t < t1; ++t) {
      const ErasurePattern p = sample_erasures(code.length, eps, stream, t);
      if (in_failure_set(code, bit, p.reduced(bit), span)) ++failures;
    }
  } else {
    // No transitivity to lean on: decode every bit of every pattern.
    for (std::uint64_t t = t0; t < t1; ++t) {
      const ErasurePattern p = sample_erasures(code.length, eps, stream, t);
      const DecodeReport rep = bit_map_decode(code, p);
      for (auto s : rep.extrinsic)
        if (s == BitStatus::failed) ++failures;
    }
  }
  return failures;
}

}  // namespace

double ExitPolynomial::eval(double eps) const {
  const std::size_t top = length - 1;
  double sum = 0;
  for (std::size_t w = 0; w < counts.size(); ++w) {
    if (counts[w] == 0) continue;
    sum += counts[w].convert_to<double>() * std::pow(eps, static_cast<double>(w)) *
           std::pow(1.0 - eps, static_cast<double>(top - w));
  }
  return sum / denom.convert_to<double>();
}

Rational ExitPolynomial::eval_exact(const Rational& eps) const {
  const std::size_t top = length - 1;
  Rational sum = 0;
  for (std::size_t w = 0; w < counts.size(); ++w) {
    if (counts[w] == 0) continue;
    sum += Rational(counts[w]) * pow_rational(eps, w) * pow_rational(1 - eps, top - w);
  }
  return sum / Rational(denom);
}

bool ExitPolynomial::normalized_densities_nondecreasing() const {
  const std::size_t top = length - 1;
  Rational prev = 0;
  for (std::size_t w = 0; w < counts.size(); ++w) {
    const Rational density(counts[w], binomial(top, w));
    if (density < prev) return false;
    prev = density;
  }
  return true;
}

ExitPolynomial exit_exact(const LinearCode& code, std::size_t focus, std::size_t max_length) {
  require_exact_size(code, max_length, "exit_exact");
  if (focus >= code.length) throw std::invalid_argument("exit_exact: focus out of range");
  ExitPolynomial poly;
  poly.length = code.length;
  poly.focus = focus;
  poly.counts.assign(code.length, 0);
  accumulate_profile(code, focus, poly.counts);
  return poly;
}

ExitPolynomial exit_average_exact(const LinearCode& code, std::size_t max_length) {
  require_exact_size(code, max_length, "exit_average_exact");
  ExitPolynomial poly;
  poly.length = code.length;
  poly.counts.assign(code.length, 0);
  poly.denom = code.length;
  for (std::size_t i = 0; i < code.length; ++i) accumulate_profile(code, i, poly.counts);
  return poly;
}

ExitCurve exit_monte_carlo(const LinearCode& code, std::optional<std::size_t> focus,
                           const std::vector<double>& eps_grid, const MonteCarloOptions& opts) {
  if (focus && *focus >= code.length)
    throw std::invalid_argument("exit_monte_carlo: focus out of range");
  if (opts.trials == 0) throw std::invalid_argument("exit_monte_carlo: trials must be positive");
  for (std::size_t g = 1; g < eps_grid.size(); ++g)
    if (!(eps_grid[g - 1] < eps_grid[g]))
      throw std::invalid_argument("exit_monte_carlo: eps grid must be strictly increasing");
  for (double e : eps_grid)
    if (!(e >= 0.0 && e <= 1.0))
      throw std::invalid_argument("exit_monte_carlo: eps values must lie in [0, 1]");

  ExitCurve curve;
  curve.code_label = code.label;
  curve.length = code.length;
  curve.focus = focus;
  curve.seed = opts.seed;
  curve.points.reserve(eps_grid.size());

  const std::uint64_t denom_per_trial = (focus || code.rm) ? 1 : code.length;
  const unsigned threads = std::max(1u, opts.threads);

  for (std::size_t g = 0; g < eps_grid.size(); ++g) {
    const double eps = eps_grid[g];
    const RngStream stream{opts.seed, opts.stream_base + g};
    const std::uint64_t nchunks = (opts.trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<std::uint64_t> chunk_fail(nchunks, 0);

    if (threads == 1 || nchunks == 1) {
      for (std::uint64_t c = 0; c < nchunks; ++c)
        chunk_fail[c] = count_failures(code, focus, eps, stream, c * kChunkTrials,
                                       std::min(opts.trials, (c + 1) * kChunkTrials));
    } else {
      std::atomic<std::uint64_t> next{0};
      auto worker = [&] {
        for (std::uint64_t c = next.fetch_add(1); c < nchunks; c = next.fetch_add(1))
          chunk_fail[c] = count_failures(code, focus, eps, stream, c * kChunkTrials,
                                         std::min(opts.trials, (c + 1) * kChunkTrials));
      };
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }

    std::uint64_t failures = 0;
    for (auto f : chunk_fail) failures += f;
    const double h = static_cast<double>(failures) /
                     static_cast<double>(opts.trials * denom_per_trial);
    curve.points.push_back({eps, h, z_half_width(h, opts.trials), opts.trials});
  }
  return curve;
}

Rational area_exact(const ExitPolynomial& poly) {
  const std::size_t top = poly.length - 1;
  Rational sum = 0;
  for (std::size_t w = 0; w < poly.counts.size(); ++w) {
    if (poly.counts[w] == 0) continue;
    // integral of x^w (1-x)^(top-w) over [0,1] = 1 / ((top+1) * C(top, w))
    sum += Rational(poly.counts[w], BigInt(top + 1) * binomial(top, w));
  }
  return sum / Rational(poly.denom);
}

Rational partial_area_exact(const ExitPolynomial& poly, const Rational& eps) {
  const std::size_t top = poly.length - 1;  // M: reduced pattern length
  Rational sum = 0;
  for (std::size_t w = 0; w < poly.counts.size(); ++w) {
    if (poly.counts[w] == 0) continue;
    // integral_0^t of the Bernstein basis polynomial b_{w,M} is
    // (1/(M+1)) sum_{j>w} b_{j,M+1}(t); divide by C(M,w) for the bare
    // monomial-pair form used in counts.
    Rational inner = 0;
    for (std::size_t j = w + 1; j <= top + 1; ++j)
      inner += Rational(binomial(top + 1, j)) * pow_rational(eps, j) *
               pow_rational(1 - eps, top + 1 - j);
    sum += Rational(poly.counts[w]) * inner / Rational(BigInt(top + 1) * binomial(top, w));
  }
  return sum / Rational(poly.denom);
}

Rational conditional_entropy_exact(const LinearCode& code, const Rational& eps,
                                   std::size_t max_length) {
  require_exact_size(code, max_length, "conditional_entropy_exact");
  if (eps < 0 || eps > 1)
    throw std::invalid_argument("conditional_entropy_exact: eps must lie in [0, 1]");
  const std::size_t size = code.length;
  assert(size <= kWordBits);
  // Count patterns by (erased weight, rank deficiency); the entropy is a
  // small weighted sum afterwards.
  std::vector<std::vector<std::uint64_t>> by_weight_deficiency(
      size + 1, std::vector<std::uint64_t>(code.dim + 1, 0));
  Gf2Span span(code.dim);
  const std::uint64_t total = std::uint64_t{1} << size;
  for (std::uint64_t pat = 0; pat < total; ++pat) {
    span.reset();
    for (std::size_t j = 0; j < size; ++j) {
      if ((pat >> j) & 1u) continue;  // erased
      span.add(code.generator_t.row_words(j));
      if (span.full()) break;
    }
    const std::size_t deficiency = code.dim - span.rank();
    if (deficiency)
      by_weight_deficiency[static_cast<std::size_t>(std::popcount(pat))][deficiency] += 1;
  }
  Rational sum = 0;
  for (std::size_t w = 0; w <= size; ++w) {
    const Rational mu = pow_rational(eps, w) * pow_rational(1 - eps, size - w);
    for (std::size_t d = 1; d <= code.dim; ++d)
      if (by_weight_deficiency[w][d])
        sum += Rational(BigInt(by_weight_deficiency[w][d]) * d) * mu;
  }
  return sum;
}

AreaTheoremReport verify_area_theorem(const LinearCode& code, std::size_t max_length) {
  AreaTheoremReport rep;
  rep.code_label = code.label;
  const ExitPolynomial avg = exit_average_exact(code, max_length);
  rep.area = area_exact(avg);
  rep.rate = code.rate();

  {
    CheckResult c;
    c.name = "area equals rate";
    c.pass = rep.area == rep.rate;
    c.detail = "area = " + rep.area.str() + ", rate = " + rep.rate.str();
    rep.checks.push_back(std::move(c));
  }
  for (const auto& eps : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
    const Rational lhs = Rational(code.length) * partial_area_exact(avg, eps);
    const Rational rhs = conditional_entropy_exact(code, eps, max_length);
    CheckResult c;
    c.name = "partial area equals conditional entropy at eps = " + eps.str();
    c.pass = lhs == rhs;
    c.detail = "N * integral = " + lhs.str() + ", H(X|Y) = " + rhs.str();
    rep.checks.push_back(std::move(c));
  }
  rep.all_pass = true;
  for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
  return rep;
}

std::string poly_to_json(const ExitPolynomial& poly) {
  std::string out = "{\n  \"N\": " + std::to_string(poly.length) + ",\n  \"i\": ";
  out += poly.focus ? std::to_string(*poly.focus) : std::string("\"average\"");
  out += ",\n  \"denom\": \"" + poly.denom.str() + "\",\n  \"A\": [";
  for (std::size_t w = 0; w < poly.counts.size(); ++w) {
    if (w) out += ", ";
    out += "\"" + poly.counts[w].str() + "\"";
  }
  out += "]\n}\n";
  return out;
}

std::string curve_to_csv(const ExitCurve& curve) {
  std::string out = "epsilon,h,half_width,trials\n";
  char buf[128];
  for (const auto& p : curve.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%llu\n", p.eps, p.h, p.half_width,
                  static_cast<unsigned long long>(p.trials));
    out += buf;
  }
  return out;
}

}  // namespace rmexit
