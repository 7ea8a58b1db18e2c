#include "rmexit/gf2.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "rmexit/rational.hpp"

namespace rmexit {

BitVector BitVector::from_mask(std::uint64_t mask, std::size_t len) {
  assert(len <= kWordBits);
  BitVector v(len);
  if (len) v.w_[0] = len == kWordBits ? mask : (mask & ((std::uint64_t{1} << len) - 1));
  return v;
}

BitVector BitVector::parse(std::string_view s) {
  BitVector v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      v.set(i, true);
    else if (s[i] != '0')
      throw std::invalid_argument("BitVector::parse: expected only '0'/'1'");
  }
  return v;
}

bool BitVector::dominated_by(const BitVector& y) const {
  assert(len_ == y.len_);
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & ~y.w_[i]) return false;
  return true;
}

BitVector& BitVector::operator^=(const BitVector& o) {
  assert(len_ == o.len_);
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& o) {
  assert(len_ == o.len_);
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}

std::optional<std::size_t> BitVector::first_set() const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i]) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(w_[i]));
  return std::nullopt;
}

std::string BitVector::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVector>& rows) {
  if (rows.empty()) return {};
  BitMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

BitVector BitMatrix::row(std::size_t r) const {
  BitVector v(cols_);
  std::copy_n(w_.begin() + static_cast<std::ptrdiff_t>(r * stride_), stride_, v.words().begin());
  return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
  assert(v.size() == cols_);
  std::copy_n(v.words().begin(), stride_, w_.begin() + static_cast<std::ptrdiff_t>(r * stride_));
}

BitVector BitMatrix::column(std::size_t c) const {
  BitVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    if (get(r, c)) v.set(r, true);
  return v;
}

void BitMatrix::xor_rows(std::size_t dst, std::size_t src) {
  auto* d = w_.data() + dst * stride_;
  const auto* s = w_.data() + src * stride_;
  for (std::size_t i = 0; i < stride_; ++i) d[i] ^= s[i];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  auto* pa = w_.data() + a * stride_;
  auto* pb = w_.data() + b * stride_;
  for (std::size_t i = 0; i < stride_; ++i) std::swap(pa[i], pb[i]);
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    // walk set bits only
    for (std::size_t wi = 0; wi < stride_; ++wi) {
      std::uint64_t w = w_[r * stride_ + wi];
      while (w) {
        const auto b = static_cast<std::size_t>(std::countr_zero(w));
        t.set(wi * kWordBits + b, r, true);
        w &= w - 1;
      }
    }
  }
  return t;
}

RowReduceResult row_reduce(const BitMatrix& m) {
  RowReduceResult out{m, {}, 0};
  BitMatrix& a = out.reduced;
  std::size_t next_row = 0;
  for (std::size_t col = 0; col < a.cols() && next_row < a.rows(); ++col) {
    std::size_t piv = next_row;
    while (piv < a.rows() && !a.get(piv, col)) ++piv;
    if (piv == a.rows()) continue;
    a.swap_rows(next_row, piv);
    // Clear the pivot column everywhere else (full reduction -> canonical).
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (r != next_row && a.get(r, col)) a.xor_rows(r, next_row);
    out.pivot_cols.push_back(col);
    ++next_row;
  }
  out.rank = next_row;
  return out;
}

std::size_t rank(const BitMatrix& m) { return row_reduce(m).rank; }

bool row_space_equal(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.cols()) return false;
  const auto ra = row_reduce(a);
  const auto rb = row_reduce(b);
  if (ra.rank != rb.rank) return false;
  for (std::size_t r = 0; r < ra.rank; ++r)
    if (ra.reduced.row(r) != rb.reduced.row(r)) return false;
  return true;
}

BitMatrix hadamard_power(unsigned n, unsigned max_n) {
  if (n > max_n)
    throw SizeError("hadamard_power: n = " + std::to_string(n) + " exceeds the configured max " +
                    std::to_string(max_n));
  const std::size_t size = std::size_t{1} << n;
  BitMatrix h(size, size);
  h.set(0, 0, true);
  // Double in place: (1 0; 1 1) tensor H_k = (H_k 0; H_k H_k).
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t r = 0; r < half; ++r) {
      const auto src = h.row_words(r);
      auto lo = h.row_words(half + r);
      std::copy(src.begin(), src.end(), lo.begin());
      if (half >= kWordBits) {
        const std::size_t off = half / kWordBits;
        for (std::size_t i = 0; i < words_for(half); ++i) lo[off + i] = src[i];
      } else {
        lo[0] |= src[0] << half;
      }
    }
  }
  return h;
}

Gf2Span::Gf2Span(std::size_t dim) : dim_(dim), wpv_(words_for(dim)), scratch_(wpv_, 0) {}

void Gf2Span::reset() {
  basis_.clear();
  leads_.clear();
}

std::optional<std::size_t> Gf2Span::reduce_scratch() const {
  for (std::size_t b = 0; b < leads_.size(); ++b) {
    const std::size_t lead = leads_[b];
    if ((scratch_[lead / kWordBits] >> (lead % kWordBits)) & 1u) {
      const auto* bw = basis_.data() + b * wpv_;
      for (std::size_t i = 0; i < wpv_; ++i) scratch_[i] ^= bw[i];
    }
  }
  for (std::size_t i = 0; i < wpv_; ++i)
    if (scratch_[i]) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(scratch_[i]));
  return std::nullopt;
}

bool Gf2Span::add(std::span<const std::uint64_t> vec) {
  assert(vec.size() >= wpv_);
  std::copy_n(vec.begin(), wpv_, scratch_.begin());
  const auto lead = reduce_scratch();
  if (!lead) return false;
  basis_.insert(basis_.end(), scratch_.begin(), scratch_.end());
  leads_.push_back(*lead);
  return true;
}

bool Gf2Span::contains(std::span<const std::uint64_t> vec) const {
  assert(vec.size() >= wpv_);
  std::copy_n(vec.begin(), wpv_, scratch_.begin());
  return !reduce_scratch().has_value();
}

bool in_column_span(const BitMatrix& m, std::span<const std::size_t> selected, std::size_t target) {
  if (target >= m.cols()) throw std::invalid_argument("in_column_span: target out of range");
  for (auto c : selected) {
    if (c >= m.cols()) throw std::invalid_argument("in_column_span: selected column out of range");
    if (c == target) throw std::invalid_argument("in_column_span: target must not be selected");
  }
  Gf2Span span(m.rows());
  for (auto c : selected) {
    span.add(m.column(c));
    if (span.full()) return true;  // span is all of GF(2)^rows
  }
  return span.contains(m.column(target));
}

}  // namespace rmexit
