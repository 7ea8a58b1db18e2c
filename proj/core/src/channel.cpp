#include "rmexit/channel.hpp"

#include <cassert>
#include <stdexcept>

namespace rmexit {

BitVector ErasurePattern::reduced(std::size_t focus) const {
  const std::size_t size = erased.size();
  assert(focus < size);
  BitVector out(size - 1);
  for (std::size_t j = 0; j < size; ++j) {
    if (j == focus) continue;
    if (erased.get(j)) out.set(j < focus ? j : j - 1, true);
  }
  return out;
}

ErasurePattern pattern_from_reduced(const BitVector& reduced, std::size_t focus,
                                    bool focus_erased) {
  const std::size_t size = reduced.size() + 1;
  if (focus >= size) throw std::invalid_argument("pattern_from_reduced: focus out of range");
  ErasurePattern p{BitVector(size)};
  for (std::size_t k = 0; k < reduced.size(); ++k)
    if (reduced.get(k)) p.erased.set(k < focus ? k : k + 1, true);
  if (focus_erased) p.erased.set(focus, true);
  return p;
}

ErasurePattern sample_erasures(std::size_t length, double eps, RngStream stream,
                               std::uint64_t trial) {
  ErasurePattern p{BitVector(length)};
  const std::uint64_t key = stream.trial_key(trial);
  for (std::size_t j = 0; j < length; ++j)
    if (uniform_at(key, j) < eps) p.erased.set(j, true);
  return p;
}

bool in_failure_set(const LinearCode& code, std::size_t focus, const BitVector& reduced) {
  Gf2Span span(code.dim);
  return in_failure_set(code, focus, reduced, span);
}

bool in_failure_set(const LinearCode& code, std::size_t focus, const BitVector& reduced,
                    Gf2Span& span) {
  const std::size_t size = code.length;
  if (focus >= size) throw std::invalid_argument("in_failure_set: focus out of range");
  if (reduced.size() != size - 1)
    throw std::invalid_argument("in_failure_set: reduced pattern must have length N-1");
  span.reset();
  // Columns of the generator are rows of the cached transpose.
  for (std::size_t j = 0; j < size; ++j) {
    if (j == focus) continue;
    const std::size_t k = j < focus ? j : j - 1;
    if (reduced.get(k)) continue;  // erased -> not observed
    span.add(code.generator_t.row_words(j));
    if (span.full()) return false;  // every column already reachable
  }
  return !span.contains(code.generator_t.row_words(focus));
}

DecodeReport bit_map_decode(const LinearCode& code, const ErasurePattern& pattern) {
  const std::size_t size = code.length;
  if (pattern.erased.size() != size)
    throw std::invalid_argument("bit_map_decode: pattern length mismatch");
  DecodeReport rep;
  rep.ordinary.resize(size);
  rep.extrinsic.resize(size);

  // One span over all non-erased columns serves every erased focus: for
  // erased i the extrinsic column set is exactly the non-erased ones.
  Gf2Span all_span(code.dim);
  for (std::size_t j = 0; j < size; ++j)
    if (!pattern.erased.get(j)) all_span.add(code.generator_t.row_words(j));

  Gf2Span scratch(code.dim);
  bool any_failed = false;
  for (std::size_t i = 0; i < size; ++i) {
    bool fail;
    if (pattern.erased.get(i)) {
      fail = !(all_span.full() || all_span.contains(code.generator_t.row_words(i)));
      rep.ordinary[i] = fail ? BitStatus::failed : BitStatus::recovered;
      any_failed = any_failed || fail;
    } else {
      // Extrinsic view must exclude column i itself.
      fail = in_failure_set(code, i, pattern.reduced(i), scratch);
      rep.ordinary[i] = BitStatus::known;
    }
    rep.extrinsic[i] = fail ? BitStatus::failed : BitStatus::recovered;
  }
  rep.block_success = !any_failed;
  return rep;
}

bool block_map_decode(const LinearCode& code, const ErasurePattern& pattern) {
  if (pattern.erased.size() != code.length)
    throw std::invalid_argument("block_map_decode: pattern length mismatch");
  Gf2Span span(code.dim);
  for (std::size_t j = 0; j < code.length; ++j) {
    if (pattern.erased.get(j)) continue;
    span.add(code.generator_t.row_words(j));
    if (span.full()) return true;
  }
  return span.rank() == code.dim;
}

}  // namespace rmexit
