#include "rmexit/codes.hpp"

#include <bit>
#include <cassert>
#include <fstream>
#include <stdexcept>

namespace rmexit {

std::size_t RmParams::dimension() const {
  BigInt k = 0;
  for (unsigned i = 0; i <= r; ++i) k += binomial(n, i);
  return static_cast<std::size_t>(k);
}

std::string RmParams::label() const {
  return "rm:" + std::to_string(n) + "," + std::to_string(r);
}

RmParams make_rm_params(unsigned n, unsigned r, unsigned max_n) {
  if (r > n) throw std::invalid_argument("rm: order r must satisfy 0 <= r <= n");
  if (n > max_n)
    throw SizeError("rm: n = " + std::to_string(n) + " exceeds the configured max " +
                    std::to_string(max_n));
  return RmParams{n, r};
}

LinearCode make_code(BitMatrix generator, std::string label) {
  LinearCode c;
  c.length = generator.cols();
  c.dim = generator.rows();
  if (c.dim == 0 || c.length == 0)
    throw std::invalid_argument("code '" + label + "': empty generator");
  if (rank(generator) != c.dim)
    throw std::invalid_argument("code '" + label + "': generator rows are linearly dependent");
  c.generator_t = generator.transposed();
  c.generator = std::move(generator);
  c.label = std::move(label);
  return c;
}

LinearCode rm_code(RmParams p) {
  p = make_rm_params(p.n, p.r);  // revalidate: p may be aggregate-built
  const std::size_t size = p.length();
  BitMatrix g(p.dimension(), size);
  std::size_t row = 0;
  for (std::size_t i = 0; i < size; ++i) {
    if (static_cast<unsigned>(std::popcount(i)) < p.n - p.r) continue;
    // Row i of the Hadamard power: ones at every column j with j subset of i.
    // Enumerate submasks of i directly.
    std::size_t j = i;
    while (true) {
      g.set(row, j, true);
      if (j == 0) break;
      j = (j - 1) & i;
    }
    ++row;
  }
  assert(row == g.rows());
  LinearCode c = make_code(std::move(g), p.label());
  c.rm = p;
  return c;
}

Rational rm_rate(RmParams p) { return Rational(p.dimension(), p.length()); }

void enumerate_codewords(const LinearCode& code, const std::function<void(const BitVector&)>& fn,
                         std::size_t max_k) {
  if (code.dim > max_k)
    throw SizeError("enumerate_codewords: K = " + std::to_string(code.dim) +
                    " exceeds the configured max " + std::to_string(max_k));
  BitVector cw(code.length);
  fn(cw);  // zero word first
  const std::uint64_t total = std::uint64_t{1} << code.dim;
  for (std::uint64_t k = 1; k < total; ++k) {
    // Gray walk: step k flips message bit ctz(k).
    const auto bit = static_cast<std::size_t>(std::countr_zero(k));
    const auto src = code.generator.row_words(bit);
    auto dst = cw.words();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
    fn(cw);
  }
}

std::size_t min_distance_bruteforce(const LinearCode& code, std::size_t max_k) {
  std::size_t best = code.length + 1;
  bool first = true;
  enumerate_codewords(
      code,
      [&](const BitVector& cw) {
        if (first) {  // skip the zero codeword
          first = false;
          return;
        }
        best = std::min(best, cw.weight());
      },
      max_k);
  return best;
}

CodeSequence sequence_for_rate(const Rational& target, const std::vector<unsigned>& ns) {
  if (target <= 0 || target >= 1)
    throw std::invalid_argument("sequence_for_rate: target rate must lie in (0, 1)");
  CodeSequence seq;
  seq.target_rate = target;
  for (unsigned n : ns) {
    RmParams p{n, 0};
    while (rm_rate(p) < target) ++p.r;  // terminates: rate(RM(n,n)) = 1 > target
    const Rational rn = rm_rate(p);
    seq.members.push_back({p, rn, rn > target ? rn - target : Rational(0)});
  }
  return seq;
}

LinearCode code_from_spec(const std::string& spec) {
  if (spec.rfind("rm:", 0) == 0) {
    const auto comma = spec.find(',', 3);
    if (comma == std::string::npos)
      throw std::invalid_argument("code spec '" + spec + "': expected rm:n,r");
    unsigned n = 0, r = 0;
    try {
      std::size_t used_n = 0, used_r = 0;
      const std::string ns = spec.substr(3, comma - 3), rs = spec.substr(comma + 1);
      n = static_cast<unsigned>(std::stoul(ns, &used_n));
      r = static_cast<unsigned>(std::stoul(rs, &used_r));
      if (used_n != ns.size() || used_r != rs.size() || ns.empty() || rs.empty())
        throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("code spec '" + spec + "': expected rm:n,r with integers n, r");
    }
    return rm_code(make_rm_params(n, r));
  }
  return load_generator_file(spec);
}

LinearCode load_generator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open generator file '" + path + "'");
  std::vector<BitVector> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    BitVector row;
    try {
      row = BitVector::parse(line);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": generator rows must contain only '0'/'1'");
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": ragged row (length differs from first row)");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument(path + ": no generator rows found");
  return make_code(BitMatrix::from_rows(rows), path);
}

}  // namespace rmexit
