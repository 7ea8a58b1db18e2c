#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rmexit {

inline constexpr std::size_t kWordBits = 64;
// Practical ceiling for 2^n-length codes: beyond this a K x 2^n generator no
// longer fits in memory for interesting K.
inline constexpr unsigned kMaxLogBlockLength = 24;

inline constexpr std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

/// Dense GF(2) vector, bit-packed into 64-bit words.
/// Bit i lives in word i/64 at bit position i%64 (little-endian within a
/// word).  Pad bits past size() are kept zero by every mutator, so whole-word
/// operations (weight, equality, XOR) never need masking.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t len) : len_(len), w_(words_for(len), 0) {}

  /// Low `len` bits of `mask` (len <= 64).
  static BitVector from_mask(std::uint64_t mask, std::size_t len);
  /// Parse a string of '0'/'1' characters, index 0 first.
  static BitVector parse(std::string_view s);

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool get(std::size_t i) const { return (w_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (i % kWordBits);
    if (v)
      w_[i / kWordBits] |= m;
    else
      w_[i / kWordBits] &= ~m;
  }
  void flip(std::size_t i) { w_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits); }

  std::size_t weight() const {
    std::size_t n = 0;
    for (auto w : w_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  /// Componentwise <=: every set bit of *this is set in y.
  bool dominated_by(const BitVector& y) const;

  BitVector& operator^=(const BitVector& o);
  BitVector& operator&=(const BitVector& o);

  std::optional<std::size_t> first_set() const;

  std::span<const std::uint64_t> words() const { return w_; }
  std::span<std::uint64_t> words() { return w_; }

  std::string to_string() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t len_ = 0;
  std::vector<std::uint64_t> w_;
};

/// Dense GF(2) matrix, rows bit-packed with a common word stride.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), w_(rows * stride_, 0) {}

  static BitMatrix identity(std::size_t n);
  static BitMatrix from_rows(const std::vector<BitVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }

  bool get(std::size_t r, std::size_t c) const {
    return (w_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (c % kWordBits);
    if (v)
      w_[r * stride_ + c / kWordBits] |= m;
    else
      w_[r * stride_ + c / kWordBits] &= ~m;
  }

  std::span<const std::uint64_t> row_words(std::size_t r) const {
    return {w_.data() + r * stride_, stride_};
  }
  std::span<std::uint64_t> row_words(std::size_t r) { return {w_.data() + r * stride_, stride_}; }

  BitVector row(std::size_t r) const;
  void set_row(std::size_t r, const BitVector& v);
  BitVector column(std::size_t c) const;

  void xor_rows(std::size_t dst, std::size_t src);  // row[dst] ^= row[src]
  void swap_rows(std::size_t a, std::size_t b);

  BitMatrix transposed() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<std::uint64_t> w_;
};

struct RowReduceResult {
  BitMatrix reduced;                    // reduced row-echelon form
  std::vector<std::size_t> pivot_cols;  // ascending, one per nonzero row
  std::size_t rank = 0;
};

/// Reduced row-echelon form over GF(2).  Pivot columns are eliminated both
/// above and below, so the result is the canonical representative of the row
/// space: row_reduce is idempotent and two matrices of equal shape have equal
/// row spaces iff their reduced forms are identical.
RowReduceResult row_reduce(const BitMatrix& m);

std::size_t rank(const BitMatrix& m);

/// True iff A and B (same column count) span the same row space.
bool row_space_equal(const BitMatrix& a, const BitMatrix& b);

/// n-fold Kronecker power of (1 0; 1 1): the 2^n x 2^n lower-triangular
/// matrix with entry (i,j) = 1 iff the bits of j are a subset of the bits
/// of i.  Row i has weight 2^popcount(i).
/// Throws SizeError when n exceeds max_n (the full matrix is N^2 bits).
BitMatrix hadamard_power(unsigned n, unsigned max_n = kMaxLogBlockLength);

/// Incrementally built basis for a span of GF(2) vectors of fixed dimension,
/// kept in row-echelon form (strictly decreasing leading-bit positions are
/// not required; leading positions are simply pairwise distinct).  Build the
/// elimination once, then run any number of membership queries against it --
/// the decoder does this once per erasure pattern and asks about many
/// columns.
class Gf2Span {
 public:
  explicit Gf2Span(std::size_t dim);

  /// Add a vector (as packed words, words_for(dim) of them).
  /// Returns true if it enlarged the span.
  bool add(std::span<const std::uint64_t> vec);
  bool add(const BitVector& v) { return add(v.words()); }

  bool contains(std::span<const std::uint64_t> vec) const;
  bool contains(const BitVector& v) const { return contains(v.words()); }

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return leads_.size(); }
  bool full() const { return rank() == dim_; }

  void reset();

 private:
  std::size_t dim_ = 0;
  std::size_t wpv_ = 0;                 // words per vector
  std::vector<std::uint64_t> basis_;    // rank() consecutive vectors
  std::vector<std::size_t> leads_;      // leading bit position per basis vector
  mutable std::vector<std::uint64_t> scratch_;

  // Reduce scratch_ against the basis; returns leading position if nonzero.
  std::optional<std::size_t> reduce_scratch() const;
};

/// True iff column `target` of m lies in the GF(2) span of the columns
/// indexed by `selected`.  Precondition: target is not in `selected`.
bool in_column_span(const BitMatrix& m, std::span<const std::size_t> selected, std::size_t target);

}  // namespace rmexit
