#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rmexit/codes.hpp"
#include "rmexit/gf2.hpp"

namespace rmexit {

/// A permutation of {0, .., N-1}, stored as its image array.
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> image);  // validates bijection

  std::size_t size() const { return image_.size(); }
  std::size_t operator()(std::size_t k) const { return image_[k]; }
  const std::vector<std::size_t>& image() const { return image_; }

  Permutation inverse() const;
  /// (a.then(b))(k) = b(a(k)).
  Permutation then(const Permutation& b) const;

  /// Pull-back action on a length-N bit pattern: out[k] = in[perm(k)].
  BitVector apply(const BitVector& v) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> image_;
};

/// Invertible affine map x -> Ax + b on GF(2)^n.  Points are encoded as
/// masks: codeword position k corresponds to the point whose coordinate c
/// is bit c of k (least-significant bit first).
class AffinePermutation {
 public:
  AffinePermutation(BitMatrix a, BitVector b);  // rejects singular A

  unsigned log_dim() const { return n_; }
  const BitMatrix& linear() const { return a_; }
  const BitVector& offset() const { return b_; }

  /// Image of a point (as a position mask).
  std::size_t map_point(std::size_t x) const;

 private:
  unsigned n_ = 0;
  BitMatrix a_;   // n x n, invertible
  BitVector b_;   // length n
};

/// The permutation of the 2^n codeword positions induced by an affine map.
Permutation to_coordinate_permutation(const AffinePermutation& ap);

/// An affine map sending position a -> c and b -> d (a != b, c != d).
/// Deterministic: the difference vectors are extended to bases greedily with
/// standard basis vectors.  Always constructible for n >= 1.
AffinePermutation two_transitive_witness(unsigned n, std::size_t a, std::size_t b, std::size_t c,
                                         std::size_t d);

/// True iff permuting codeword positions by `perm` maps the code onto
/// itself (exact row-space equality of the column-permuted generator).
bool is_automorphism(const LinearCode& code, const Permutation& perm);

/// The permutation of the N-1 reduced positions induced by a position
/// permutation with perm(i) = j: reduced index k maps through
/// insert-at-i, perm, delete-at-j.  Precondition: perm(i) == j.
Permutation reduced_permutation(const Permutation& perm, std::size_t i, std::size_t j);

/// True iff all N exact per-bit EXIT polynomials are identical
/// (integer-level equality of the weight profiles).  Exact-size codes only.
bool all_exit_profiles_equal(const LinearCode& code, std::size_t max_length = 16);

/// Uniformly-seeded invertible linear map + offset (rejection sampling on
/// the determinant); when `fix` is given, the offset is chosen so the map
/// fixes that position.
AffinePermutation random_affine_automorphism(unsigned n, std::uint64_t seed,
                                             std::optional<std::size_t> fix = std::nullopt);

}  // namespace rmexit
