#pragma once

// The Collatz function, its inverse relation, and forward stair indexing.

#include "collatz/nat.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace collatz {

inline constexpr std::size_t kDefaultBudget = 1'000'000;

// A forward orbit did not reach its target within the step budget. This is the
// only honest answer to a possibly divergent orbit, so it is a distinct type.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::size_t steps, Nat last)
      : std::runtime_error("step budget of " + std::to_string(steps) +
                           " exhausted before reaching the target set"),
        steps_(steps),
        last_(std::move(last)) {}

  std::size_t steps() const noexcept { return steps_; }
  const Nat& last() const noexcept { return last_; }

 private:
  std::size_t steps_;
  Nat last_;
};

// Raised when an orbit first meets a power of two with an odd exponent, which
// 2^m - 1 never being divisible by 3 (m odd) rules out.
class InternalContradiction : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline Nat collatz_step(const Nat& x) {
  require_natural(x, "collatz_step");
  if (is_even(x)) return x >> 1;
  return 3 * x + 1;
}

// Backward step: always 2x, plus (x-1)/3 when that is an odd integer.
// The doubled value comes first.
inline std::vector<Nat> inverse_step(const Nat& x) {
  require_natural(x, "inverse_step");
  std::vector<Nat> out;
  out.reserve(2);
  out.push_back(x << 1);
  Nat rem;
  Nat quot;
  boost::multiprecision::divide_qr(Nat(x - 1), Nat(3), quot, rem);
  if (rem == 0 && quot > 0 && !is_even(quot)) out.push_back(std::move(quot));
  return out;
}

inline bool in_icltz(const Nat& x) { return x == 1 || x == 2 || x == 4; }

// n, f(n), f^2(n), ... up to and including the first element satisfying stop.
template <typename Stop>
std::vector<Nat> orbit(const Nat& n, Stop&& stop, std::size_t max_steps = kDefaultBudget) {
  require_natural(n, "orbit");
  std::vector<Nat> seq{n};
  while (!stop(seq.back())) {
    if (seq.size() - 1 >= max_steps) throw BudgetExceeded(max_steps, seq.back());
    seq.push_back(collatz_step(seq.back()));
  }
  return seq;
}

// Result of forward analysis with respect to the powers of two. subtree is
// empty exactly when steps is 0, i.e. the value is itself a power of two.
struct StairIndex {
  std::uint64_t steps = 0;
  std::optional<unsigned> subtree;

  static StairIndex invariant() { return {}; }
  bool in_invariant() const { return !subtree.has_value(); }
  friend bool operator==(const StairIndex&, const StairIndex&) = default;
};

namespace detail {

template <typename Int>
constexpr bool int_is_even(const Int& x) {
  if constexpr (std::is_same_v<Int, Nat>) {
    return is_even(x);
  } else {
    return (x & 1u) == 0;
  }
}

// Shared loop for both the native and the arbitrary-precision paths. Returns
// nothing only when a native type would overflow on 3x+1.
template <typename Int, typename Stop>
std::optional<std::uint64_t> steps_until(Int x, Stop&& stop, std::size_t max_steps, Int& last) {
  std::uint64_t steps = 0;
  while (!stop(x)) {
    if (steps >= max_steps) throw BudgetExceeded(max_steps, Nat(x));
    if (int_is_even(x)) {
      x >>= 1;
    } else {
      if constexpr (!std::is_same_v<Int, Nat>) {
        if (x > (std::numeric_limits<Int>::max() - 1) / 3) return std::nullopt;
      }
      x = 3 * x + 1;
    }
    ++steps;
  }
  last = x;
  return steps;
}

template <typename Int>
StairIndex to_stair_index(std::uint64_t steps, const Int& reached) {
  if (steps == 0) return StairIndex::invariant();
  const unsigned m = *power_of_two_exponent(reached);
  if (m % 2 != 0 || m < 4) {
    throw InternalContradiction("orbit first reached 2^" + std::to_string(m) +
                                "; only even exponents >= 4 are possible");
  }
  return StairIndex{steps, m / 2};
}

}  // namespace detail

// Number of steps to reach {1, 2, 4}.
inline std::uint64_t stair_index_icltz(const Nat& n, std::size_t max_steps = kDefaultBudget) {
  require_natural(n, "stair_index_icltz");
  Nat last;
  return *detail::steps_until(Nat(n), [](const Nat& x) { return in_icltz(x); }, max_steps, last);
}

inline StairIndex stair_index_iu(const Nat& n, std::size_t max_steps = kDefaultBudget) {
  require_natural(n, "stair_index_iu");
  Nat reached;
  auto steps = detail::steps_until(
      Nat(n), [](const Nat& x) { return is_power_of_two(x); }, max_steps, reached);
  return detail::to_stair_index(*steps, reached);
}

// Native fast path; falls back to Nat when an intermediate value would not fit.
inline StairIndex stair_index_iu(std::uint64_t n, std::size_t max_steps = kDefaultBudget) {
  if (n == 0) throw std::invalid_argument("stair_index_iu: expected a natural number >= 1, got 0");
  std::uint64_t reached = 0;
  auto steps = detail::steps_until(
      n, [](std::uint64_t x) { return std::has_single_bit(x); }, max_steps, reached);
  if (!steps) return stair_index_iu(Nat(n), max_steps);
  return detail::to_stair_index(*steps, reached);
}

}  // namespace collatz
