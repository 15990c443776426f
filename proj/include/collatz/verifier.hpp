#pragma once

// Binary Verification Code (BVC) checking.
//
// A BVC records the backward path from the stair-2 node 2*Y_k/3 down to a
// candidate: '0' is multiply-by-two, '1' is subtract-one-then-divide-by-three.
// Verification walks the string from its last bit to its first, rebuilding each
// ancestor with the forward Collatz rule the bit implies and checking that the
// Collatz function really would take the child to that parent.

#include "collatz/nat.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace collatz {

enum class RejectReason {
  None,
  NotNatural,
  PowerOfTwo,
  AncestorPowerOfTwo,
  ParityViolation,
  NonIntegerAncestor,
  NonIntegerNumerator,
};

enum class ParityRule {
  EvenUnder1,     // bit 1 but the child is even: 3x+1 never applied
  BothOddUnder1,  // bit 1 with both child and parent odd (unreachable over integers)
  OddUnder0,      // bit 0 but the child is odd: x/2 never applied
};

inline std::string_view reason_code(RejectReason r) {
  switch (r) {
    case RejectReason::None: return "none";
    case RejectReason::NotNatural: return "not-natural";
    case RejectReason::PowerOfTwo: return "power-of-two";
    case RejectReason::AncestorPowerOfTwo: return "ancestor-power-of-two";
    case RejectReason::ParityViolation: return "parity-violation";
    case RejectReason::NonIntegerAncestor: return "non-integer-ancestor";
    case RejectReason::NonIntegerNumerator: return "non-integer-numerator";
  }
  return "unknown";
}

inline std::string_view rule_name(ParityRule r) {
  switch (r) {
    case ParityRule::EvenUnder1: return "evenUnder1";
    case ParityRule::BothOddUnder1: return "bothOddUnder1";
    case ParityRule::OddUnder0: return "oddUnder0";
  }
  return "unknown";
}

// Why a candidate was rejected. bit is 1-based from the left (most significant)
// end of the BVC and is 0 when the reason is not tied to a bit.
struct Verdict {
  RejectReason reason = RejectReason::None;
  std::size_t bit = 0;
  std::optional<ParityRule> rule;

  bool accepted() const { return reason == RejectReason::None; }

  std::string describe() const {
    switch (reason) {
      case RejectReason::None: return "valid";
      case RejectReason::NotNatural: return "not a natural number";
      case RejectReason::PowerOfTwo: return "power-of-two";
      case RejectReason::AncestorPowerOfTwo:
        return "ancestor power-of-two at bit " + std::to_string(bit);
      case RejectReason::ParityViolation:
        return "parity violation at bit " + std::to_string(bit) + " (" +
               std::string(rule_name(*rule)) + ")";
      case RejectReason::NonIntegerAncestor:
        return "non-integer ancestor at bit " + std::to_string(bit);
      case RejectReason::NonIntegerNumerator: return "non-integer numerator";
    }
    return "unknown";
  }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct VerificationResult {
  Verdict verdict;
  std::size_t steps = 0;  // ancestor steps taken
  Nat ancestor;           // last reconstructed value (the input itself if no steps ran)

  bool accepted() const { return verdict.accepted(); }
};

inline bool is_bvc(std::string_view s) {
  return s.find_first_not_of("01") == std::string_view::npos;
}

inline VerificationResult verify_bvc(const Nat& value, std::string_view bvc) {
  if (!is_bvc(bvc)) throw std::invalid_argument("verify_bvc: BVC must contain only '0' and '1'");

  VerificationResult res;
  res.ancestor = value;
  auto reject = [&](RejectReason reason, std::size_t bit = 0,
                    std::optional<ParityRule> rule = std::nullopt) {
    res.verdict = Verdict{reason, bit, rule};
    return res;
  };

  if (value < 1) return reject(RejectReason::NotNatural);
  if (is_power_of_two(value)) return reject(RejectReason::PowerOfTwo);

  Nat x = value;
  for (std::size_t i = bvc.size(); i >= 1; --i) {
    const bool one = bvc[i - 1] == '1';
    const bool x_even = is_even(x);
    Nat y;
    if (one) {
      y = 3 * x + 1;
    } else {
      if (!x_even) return reject(RejectReason::ParityViolation, i, ParityRule::OddUnder0);
      Nat rem;
      boost::multiprecision::divide_qr(x, Nat(2), y, rem);
      if (rem != 0) return reject(RejectReason::NonIntegerAncestor, i);
    }
    if (y < 1) return reject(RejectReason::NonIntegerAncestor, i);
    if (is_power_of_two(y)) return reject(RejectReason::AncestorPowerOfTwo, i);
    if (one && x_even) return reject(RejectReason::ParityViolation, i, ParityRule::EvenUnder1);
    if (one && !x_even && !is_even(y)) {
      return reject(RejectReason::ParityViolation, i, ParityRule::BothOddUnder1);
    }
    x = std::move(y);
    res.ancestor = x;
    ++res.steps;
  }
  return res;
}

}  // namespace collatz
