#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>

namespace rmexit {

// Exact arithmetic used everywhere a result is an identity, not an estimate:
// code rates, EXIT areas, conditional entropies.  Backed by header-only
// arbitrary-precision integers so nothing silently saturates.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Resource-cap violation (problem size beyond the configured limit).
/// CLI maps this to its own exit status, distinct from check failures.
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact binomial coefficient; zero outside 0 <= k <= n.
inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt out = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    out *= n - i;
    out /= i + 1;  // exact: product of j consecutive integers divides by j!
  }
  return out;
}

inline Rational pow_rational(const Rational& base, std::uint64_t e) {
  Rational out = 1;
  Rational b = base;
  while (e) {
    if (e & 1) out *= b;
    b *= b;
    e >>= 1;
  }
  return out;
}

}  // namespace rmexit
