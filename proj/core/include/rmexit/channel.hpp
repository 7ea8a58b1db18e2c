#pragma once

#include <cstdint>
#include <vector>

#include "rmexit/codes.hpp"
#include "rmexit/gf2.hpp"
#include "rmexit/rng.hpp"

namespace rmexit {

/// Which positions of a length-N word the erasure channel wiped out.
struct ErasurePattern {
  BitVector erased;  // bit j set <=> position j erased

  std::size_t length() const { return erased.size(); }

  /// The (N-1)-bit view that drops position `focus` (the extrinsic
  /// observation for that bit keeps every other position's status).
  BitVector reduced(std::size_t focus) const;
};

/// Insert position `focus` (not erased) into a reduced (N-1)-bit pattern.
ErasurePattern pattern_from_reduced(const BitVector& reduced, std::size_t focus,
                                    bool focus_erased = false);

/// Each position erased independently with probability eps.  Pure function
/// of (stream, trial): identical results for any worker layout.
ErasurePattern sample_erasures(std::size_t length, double eps, RngStream stream,
                               std::uint64_t trial);

enum class BitStatus : std::uint8_t { known, recovered, failed };

/// Outcome of bit-MAP decoding one erasure pattern (all-zero codeword
/// transmitted; over the BEC the decodable set does not depend on the
/// transmitted word, so this is fully general).
struct DecodeReport {
  /// Status using the full observation: non-erased bits are always `known`;
  /// erased bits are `recovered` or `failed`.
  std::vector<BitStatus> ordinary;
  /// Status using only the other N-1 positions (position i's own
  /// observation withheld): `recovered` or `failed`, never `known`.
  std::vector<BitStatus> extrinsic;
  /// True iff the whole word is pinned down, i.e. no ordinary bit failed.
  bool block_success = false;
};

/// True iff bit-MAP decoding of bit `focus` fails when the positions set in
/// `reduced` (an (N-1)-bit pattern over the other positions) are erased:
/// equivalently, generator column g_focus is NOT in the GF(2) span of the
/// columns at non-erased positions.  This set of patterns is monotone
/// upward: erasing more can only keep a failing bit failing.
bool in_failure_set(const LinearCode& code, std::size_t focus, const BitVector& reduced);

/// Same test with a caller-owned workspace (reused basis storage) for hot
/// loops; `span` only needs to be constructed once per code dimension.
bool in_failure_set(const LinearCode& code, std::size_t focus, const BitVector& reduced,
                    Gf2Span& span);

/// Decode every bit, reporting both ordinary and extrinsic status.
DecodeReport bit_map_decode(const LinearCode& code, const ErasurePattern& pattern);

/// True iff block-MAP decoding succeeds: the generator columns at non-erased
/// positions have full rank K (no nonzero codeword is confined to the
/// erased positions).
bool block_map_decode(const LinearCode& code, const ErasurePattern& pattern);

}  // namespace rmexit
