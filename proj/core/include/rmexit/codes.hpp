#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rmexit/gf2.hpp"
#include "rmexit/rational.hpp"

namespace rmexit {

/// Parameters of the Reed-Muller code RM(n, r): block length 2^n, order r.
struct RmParams {
  unsigned n = 0;
  unsigned r = 0;

  std::size_t length() const { return std::size_t{1} << n; }
  std::size_t dimension() const;           // sum_{i<=r} C(n,i)
  std::size_t distance() const { return std::size_t{1} << (n - r); }
  std::string label() const;               // "rm:n,r"

  friend bool operator==(const RmParams&, const RmParams&) = default;
};

/// Validates 0 <= r <= n and n <= max_n; throws std::invalid_argument /
/// SizeError otherwise.
RmParams make_rm_params(unsigned n, unsigned r, unsigned max_n = kMaxLogBlockLength);

/// A binary linear code presented by a full-row-rank generator matrix.
/// The transpose is cached because the decoder consumes columns of the
/// generator as contiguous vectors.
struct LinearCode {
  BitMatrix generator;    // K x N, rank K
  BitMatrix generator_t;  // N x K
  std::size_t length = 0;     // N
  std::size_t dim = 0;        // K
  std::string label;
  std::optional<RmParams> rm;  // set when built as a Reed-Muller code

  Rational rate() const { return Rational(dim, length); }
};

/// Wrap a generator matrix; validates full row rank.
LinearCode make_code(BitMatrix generator, std::string label);

/// The Reed-Muller code RM(n, r): generator rows are exactly the rows of
/// hadamard_power(n) of weight >= 2^(n-r), in ascending row-index order.
/// Rows are synthesized directly (row i has ones where the column index is a
/// bit-subset of i), so no N x N matrix is ever materialized.
LinearCode rm_code(RmParams p);
inline LinearCode rm_code(unsigned n, unsigned r) { return rm_code(make_rm_params(n, r)); }

/// Exact rate K/N of RM(n, r).
Rational rm_rate(RmParams p);

/// Visit all 2^K codewords exactly once (Gray-code walk: one row XOR per
/// step).  Throws SizeError when K exceeds max_k.
void enumerate_codewords(const LinearCode& code, const std::function<void(const BitVector&)>& fn,
                         std::size_t max_k = 24);

/// Minimum Hamming weight over all nonzero codewords, by full enumeration.
std::size_t min_distance_bruteforce(const LinearCode& code, std::size_t max_k = 24);

/// One member of a rate-targeted code family.
struct SequenceMember {
  RmParams params;
  Rational rate;      // realized rate K/N
  Rational rate_gap;  // max(rate - target, 0)
};

/// Reed-Muller codes approaching a target rate from above.
struct CodeSequence {
  Rational target_rate;  // in (0, 1)
  std::vector<SequenceMember> members;
};

/// For each n in ns, pick the smallest r with rate(RM(n,r)) >= target.
/// Rates are compared exactly; ties cannot occur since rates strictly
/// increase with r.
CodeSequence sequence_for_rate(const Rational& target, const std::vector<unsigned>& ns);

/// Parse a code spec: "rm:n,r" or a path to a plain-text generator file
/// (one row of '0'/'1' characters per line).
LinearCode code_from_spec(const std::string& spec);

/// Load a generator matrix from a plain-text file; rejects ragged rows,
/// characters other than 0/1, and linearly dependent rows.
LinearCode load_generator_file(const std::string& path);

}  // namespace rmexit
