#pragma once

// Exact arithmetic used on every verification path. Nothing in the library
// compares floating point values.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace bhk {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p", "p/q", and the power shorthand "b^e" (e.g. "2^256").
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// Canonical decimal form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer ceil(const Rational& q);
Integer floor(const Rational& q);
Rational pow(const Rational& base, unsigned long exponent);
Integer factorial(unsigned long n);

/// Number of binary digits of n >= 0, i.e. ceil(log2(n + 1)).
unsigned long bit_length(const Integer& n);

inline Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Deterministic random source. Bounded draws use rejection sampling on the
/// raw 64-bit stream so that a seed reproduces identical sequences on every
/// standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  long uniform(long lo, long hi);
  bool coin() { return (engine_() >> 63) != 0; }

  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }

  /// Derives an independent stream, keyed by `salt`.
  Rng fork(std::uint64_t salt) { return Rng(engine_() ^ (salt * 0x9e3779b97f4a7c15ULL)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bhk
