#pragma once

// Exact rationals and the combinatorics of the middle-thirds Cantor set.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fanforge {

/// Arbitrary-precision rational, always canonical (lowest terms, positive
/// denominator). Every coordinate in the construction is one of these.
using Rational = mpq_class;

/// Parses "p/q" or "p". Throws Error(kInvalidArgument) on malformed input or
/// a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms; zero is "0/1".
std::string to_string(const Rational& q);

/// 3^n and 2^n as exact integers.
mpz_class pow3(int n);
mpz_class pow2(int n);

/// 3^-n and 2^-n.
Rational inv_pow3(int n);
Rational inv_pow2(int n);

/// Ceiling of a rational as an integer.
mpz_class ceil(const Rational& q);

/// A finite binary word sigma, addressing the basic clopen set B(sigma).
/// Ordering is length first, then lexicographic.
class Address {
 public:
  static constexpr int kMaxLength = 62;

  Address() = default;

  /// Parses a string of '0'/'1' characters; "" is the empty word.
  static Address parse(std::string_view bits);
  static Address from_bits(std::uint64_t bits, int length);

  /// All 2^n words of length n in lexicographic order.
  static std::vector<Address> all_of_length(int n);

  int length() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }
  int bit(int k) const;
  std::uint64_t bits() const noexcept { return bits_; }

  Address child(int bit) const;
  Address prefix(int length) const;
  bool is_prefix_of(const Address& other) const noexcept;

  std::string to_string() const;

  friend bool operator==(const Address&, const Address&) = default;
  friend std::strong_ordering operator<=>(const Address& a, const Address& b) {
    if (auto c = a.length_ <=> b.length_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  // Bit k of the word sits at position (length - 1 - k), so lexicographic
  // order on equal-length words is numeric order on bits_.
  std::uint64_t bits_ = 0;
  int length_ = 0;
};

/// 0(sigma) = sum_{k<n} 2 sigma(k) / 3^{k+1}.
Rational endpoint_zero(const Address& sigma);

/// 1(sigma) = 0(sigma) + 3^-n.
Rational endpoint_one(const Address& sigma);

struct BasicInterval {
  Address address;
  Rational left;
  Rational right;

  bool contains(const Rational& q) const { return left <= q && q <= right; }
};

BasicInterval basic_interval(const Address& sigma);

/// Exact decision of q in C via the eventually periodic ternary expansion.
/// Throws Error(kOutOfRange) unless 0 <= q <= 1.
bool cantor_member(const Rational& q);

/// The unique sigma of the given length with q in B(sigma). Throws
/// Error(kNotInCantor) when q is not in C.
Address locate(const Rational& q, int depth);

}  // namespace fanforge
