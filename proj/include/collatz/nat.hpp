#pragma once

// Exact natural-number arithmetic shared by every module.
//
// Values are positive integers throughout (0 is an input error); the backing
// type is a signed arbitrary-precision integer so intermediate numerators that
// dip below zero stay representable.

#include <boost/multiprecision/cpp_int.hpp>

#include <bit>
#include <concepts>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace collatz {

using Nat = boost::multiprecision::cpp_int;

inline Nat pow2(unsigned exponent) {
  Nat r = 1;
  r <<= exponent;
  return r;
}

inline Nat pow3(unsigned exponent) {
  return boost::multiprecision::pow(Nat(3), exponent);
}

inline bool is_even(const Nat& x) { return !boost::multiprecision::bit_test(x, 0); }

// Returns m when x = 2^m, nothing otherwise (including x <= 0).
inline std::optional<unsigned> power_of_two_exponent(const Nat& x) {
  if (x <= 0) return std::nullopt;
  if ((x & (x - 1)) != 0) return std::nullopt;
  return static_cast<unsigned>(boost::multiprecision::msb(x));
}

inline bool is_power_of_two(const Nat& x) { return power_of_two_exponent(x).has_value(); }

template <std::unsigned_integral U>
constexpr std::optional<unsigned> power_of_two_exponent(U x) {
  if (!std::has_single_bit(x)) return std::nullopt;
  return static_cast<unsigned>(std::countr_zero(x));
}

inline std::string to_decimal(const Nat& x) { return x.str(); }

// Strict decimal parse: digits only, no sign, no whitespace.
inline std::optional<Nat> parse_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  return Nat(std::string(text));
}

inline void require_natural(const Nat& x, const char* what) {
  if (x < 1) {
    throw std::invalid_argument(std::string(what) + ": expected a natural number >= 1, got " +
                                to_decimal(x));
  }
}

}  // namespace collatz
