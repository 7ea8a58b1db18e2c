#include "rmexit/symmetry.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "rmexit/exit.hpp"
#include "rmexit/rng.hpp"

namespace rmexit {

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (auto v : image_) {
    if (v >= image_.size() || seen[v])
      throw std::invalid_argument("Permutation: image is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(image_.size());
  for (std::size_t k = 0; k < image_.size(); ++k) inv[image_[k]] = k;
  return Permutation(std::move(inv));
}

Permutation Permutation::then(const Permutation& b) const {
  assert(size() == b.size());
  std::vector<std::size_t> out(image_.size());
  for (std::size_t k = 0; k < image_.size(); ++k) out[k] = b.image_[image_[k]];
  return Permutation(std::move(out));
}

BitVector Permutation::apply(const BitVector& v) const {
  assert(v.size() == size());
  BitVector out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v.get(image_[k])) out.set(k, true);
  return out;
}

AffinePermutation::AffinePermutation(BitMatrix a, BitVector b)
    : n_(static_cast<unsigned>(a.rows())), a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() != a_.cols() || b_.size() != a_.rows())
    throw std::invalid_argument("AffinePermutation: shape mismatch");
  if (rank(a_) != a_.rows())
    throw std::invalid_argument("AffinePermutation: linear part is singular");
}

std::size_t AffinePermutation::map_point(std::size_t x) const {
  std::size_t y = 0;
  for (unsigned row = 0; row < n_; ++row) {
    // parity of <A row, x> -- rows fit one word for n <= 64
    const std::uint64_t overlap = a_.row_words(row)[0] & static_cast<std::uint64_t>(x);
    const bool bit = (static_cast<unsigned>(std::popcount(overlap)) & 1u) ^
                     static_cast<unsigned>(b_.get(row));
    if (bit) y |= std::size_t{1} << row;
  }
  return y;
}

Permutation to_coordinate_permutation(const AffinePermutation& ap) {
  const std::size_t size = std::size_t{1} << ap.log_dim();
  std::vector<std::size_t> image(size);
  for (std::size_t k = 0; k < size; ++k) image[k] = ap.map_point(k);
  return Permutation(std::move(image));
}

namespace {

// Greedily extend {v} (v != 0) to an ordered basis of GF(2)^n using standard
// basis vectors; deterministic.
std::vector<std::size_t> extend_to_basis(unsigned n, std::size_t v) {
  std::vector<std::size_t> basis{v};
  Gf2Span span(n);
  BitVector vec(n);
  vec.words()[0] = v;
  span.add(vec);
  for (unsigned e = 0; e < n && basis.size() < n; ++e) {
    BitVector unit(n);
    unit.words()[0] = std::size_t{1} << e;
    if (span.add(unit)) basis.push_back(std::size_t{1} << e);
  }
  assert(basis.size() == n);
  return basis;
}

// Matrix with given columns (as masks).
BitMatrix matrix_from_columns(unsigned n, const std::vector<std::size_t>& cols) {
  BitMatrix m(n, n);
  for (unsigned c = 0; c < n; ++c)
    for (unsigned r = 0; r < n; ++r)
      if ((cols[c] >> r) & 1u) m.set(r, c, true);
  return m;
}

// Solve M X = I over GF(2) for square invertible M (Gauss-Jordan on [M | I]).
BitMatrix inverse_matrix(const BitMatrix& m) {
  const std::size_t n = m.rows();
  BitMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.set(r, c, m.get(r, c));
    aug.set(r, n + r, true);
  }
  const auto rr = row_reduce(aug);
  if (rr.rank != n || rr.pivot_cols.back() >= n)
    throw std::invalid_argument("inverse_matrix: matrix is singular");
  BitMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.set(r, c, rr.reduced.get(r, n + c));
  return inv;
}

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
  assert(a.cols() == b.rows());
  // Row-accumulation form: out.row(r) = xor of b.row(k) over set bits (r,k).
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto dst = out.row_words(r);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (!a.get(r, k)) continue;
      const auto src = b.row_words(k);
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
    }
  }
  return out;
}

}  // namespace

AffinePermutation two_transitive_witness(unsigned n, std::size_t a, std::size_t b, std::size_t c,
                                         std::size_t d) {
  const std::size_t size = std::size_t{1} << n;
  if (a >= size || b >= size || c >= size || d >= size)
    throw std::invalid_argument("two_transitive_witness: position out of range");
  if (a == b || c == d)
    throw std::invalid_argument("two_transitive_witness: need a != b and c != d");
  const std::size_t u = a ^ b;  // difference to move
  const std::size_t v = c ^ d;  // difference to hit
  // Linear part maps the basis extending {u} onto the basis extending {v}:
  // A = V U^{-1} where the basis vectors are columns.
  const BitMatrix mat_u = matrix_from_columns(n, extend_to_basis(n, u));
  const BitMatrix mat_v = matrix_from_columns(n, extend_to_basis(n, v));
  BitMatrix lin = multiply(mat_v, inverse_matrix(mat_u));
  // Offset pins a -> c.
  AffinePermutation probe(lin, BitVector(n));
  const std::size_t img_a = probe.map_point(a);
  BitVector off(n);
  off.words()[0] = img_a ^ c;
  return AffinePermutation(std::move(lin), std::move(off));
}

bool is_automorphism(const LinearCode& code, const Permutation& perm) {
  if (perm.size() != code.length)
    throw std::invalid_argument("is_automorphism: permutation size mismatch");
  BitMatrix permuted(code.dim, code.length);
  for (std::size_t r = 0; r < code.dim; ++r)
    for (std::size_t k = 0; k < code.length; ++k)
      if (code.generator.get(r, perm(k))) permuted.set(r, k, true);
  return row_space_equal(code.generator, permuted);
}

Permutation reduced_permutation(const Permutation& perm, std::size_t i, std::size_t j) {
  const std::size_t size = perm.size();
  if (i >= size || j >= size) throw std::invalid_argument("reduced_permutation: index out of range");
  if (perm(i) != j)
    throw std::invalid_argument("reduced_permutation: requires perm(i) == j");
  std::vector<std::size_t> image(size - 1);
  for (std::size_t k = 0; k + 1 < size; ++k) {
    const std::size_t full = k < i ? k : k + 1;  // insert at i
    const std::size_t mapped = perm(full);       // never equals j here
    assert(mapped != j);
    image[k] = mapped < j ? mapped : mapped - 1;  // delete at j
  }
  return Permutation(std::move(image));
}

bool all_exit_profiles_equal(const LinearCode& code, std::size_t max_length) {
  const ExitPolynomial first = exit_exact(code, 0, max_length);
  for (std::size_t i = 1; i < code.length; ++i)
    if (exit_exact(code, i, max_length).counts != first.counts) return false;
  return true;
}

AffinePermutation random_affine_automorphism(unsigned n, std::uint64_t seed,
                                             std::optional<std::size_t> fix) {
  const RngStream stream{seed, 0x5eed5eedull};
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t key = stream.trial_key(attempt);
    BitMatrix lin(n, n);
    for (unsigned r = 0; r < n; ++r) {
      const std::uint64_t word = mix64(key ^ (r * 0x9e3779b97f4a7c15ull));
      lin.row_words(r)[0] = word & ((std::uint64_t{1} << n) - 1);
    }
    if (rank(lin) != n) continue;  // ~28.8% of uniform matrices are invertible
    BitVector off(n);
    if (fix) {
      // b = p + A p so that A p + b = p.
      AffinePermutation probe(lin, BitVector(n));
      off.words()[0] = *fix ^ probe.map_point(*fix);
    } else {
      off.words()[0] = mix64(key ^ 0xffeeddccbbaa0099ull) & ((std::uint64_t{1} << n) - 1);
    }
    return AffinePermutation(std::move(lin), std::move(off));
  }
}

}  // namespace rmexit
