#pragma once

// Closed-form generation of the j-th stair of the subtree rooted at Y_k/3.
//
// Every node of that subtree (as an over-approximating binary tree) has the form
//
//     (2^f * Y_k - sum_{r=1}^{q-1} 2^{e_r} * 3^r) / 3^q,     f + q = j,
//
// with e_1 >= e_2 >= ... >= e_{q-1} and every e_r in [0, f-1]. Stair j is
// enumerated by walking q = 1..j-1 and, for each q, all non-increasing exponent
// sequences. Each candidate is evaluated exactly, given its BVC, and checked by
// verify_bvc; failures are kept as data with the reason attached.
//
// Candidate count per q is C(j-2, q-1), so a stair has 2^{j-2} candidates in
// total (1 for j = 1). Cost grows accordingly; see README for practical limits.

#include "collatz/nat.hpp"
#include "collatz/parallel.hpp"
#include "collatz/verifier.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace collatz {

inline void require_subtree_index(unsigned k, const char* what) {
  if (k < 2) {
    throw std::invalid_argument(std::string(what) + ": k must be >= 2 (k = 1 roots inside {1,2,4})");
  }
}

inline void require_stair_index(unsigned j, const char* what) {
  if (j < 1) throw std::invalid_argument(std::string(what) + ": j must be >= 1");
}

// Y_k = 2^{2k} - 1. Always divisible by 3 with an odd quotient.
inline Nat y_k(unsigned k) {
  require_subtree_index(k, "y_k");
  return pow2(2 * k) - 1;
}

using ExponentSequence = std::vector<unsigned>;

// Visits every non-increasing sequence of length n over [0, l], in
// lexicographically descending order (outermost position counts down from l).
inline void for_each_exponent_sequence(unsigned n, unsigned l,
                                       const std::function<void(const ExponentSequence&)>& visit) {
  ExponentSequence seq;
  seq.reserve(n);
  std::function<void(unsigned)> descend = [&](unsigned cap) {
    if (seq.size() == n) {
      visit(seq);
      return;
    }
    for (unsigned x = cap + 1; x-- > 0;) {
      seq.push_back(x);
      descend(x);
      seq.pop_back();
    }
  };
  descend(l);
}

inline std::vector<ExponentSequence> enumerate_exponent_sequences(unsigned n, unsigned l) {
  std::vector<ExponentSequence> out;
  for_each_exponent_sequence(n, l, [&](const ExponentSequence& s) { out.push_back(s); });
  return out;
}

// Symbolic stair term. For j >= 2, 1 <= q <= j-1; the stair-1 root is the
// single expression with j = q = 1 (f = 0).
struct TermExpr {
  unsigned k = 2;
  unsigned j = 1;
  unsigned q = 1;
  ExponentSequence exps;  // exps[r-1] is the power of two paired with 3^r

  unsigned f() const { return j - q; }

  bool valid() const {
    if (k < 2 || j < 1 || q < 1) return false;
    if (j == 1) return q == 1 && exps.empty();
    if (q > j - 1 || exps.size() != q - 1) return false;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] > f() - 1) return false;
      if (i > 0 && exps[i] > exps[i - 1]) return false;
    }
    return true;
  }

  friend bool operator==(const TermExpr&, const TermExpr&) = default;
};

inline void require_valid(const TermExpr& e, const char* what) {
  if (!e.valid()) throw std::invalid_argument(std::string(what) + ": malformed term expression");
}

// 2^f * Y_k - sum 2^{exps[r-1]} * 3^r. May be zero or negative.
inline Nat term_numerator(const TermExpr& e) {
  require_valid(e, "term_numerator");
  Nat n = pow2(e.f()) * y_k(e.k);
  Nat three_r = 1;
  for (std::size_t r = 1; r <= e.exps.size(); ++r) {
    three_r *= 3;
    n -= pow2(e.exps[r - 1]) * three_r;
  }
  return n;
}

// Exact value of the term, or nothing when the numerator is not a positive
// multiple of 3^q.
inline std::optional<Nat> term_value(const TermExpr& e) {
  const Nat num = term_numerator(e);
  if (num <= 0) return std::nullopt;
  Nat quot;
  Nat rem;
  boost::multiprecision::divide_qr(num, pow3(e.q), quot, rem);
  if (rem != 0) return std::nullopt;
  return quot;
}

// Path from 2*Y_k/3 to the term: the r-th one-bit is followed by exactly
// exps[r-1] zeros in total (up to the end of the string).
inline std::string bvc_from_exponents(const TermExpr& e) {
  require_valid(e, "bvc_from_exponents");
  if (e.j <= 2) return {};
  std::string bits;
  bits.reserve(e.j - 2);
  const unsigned lead = e.exps.empty() ? e.f() - 1 : (e.f() - 1) - e.exps.front();
  bits.append(lead, '0');
  for (std::size_t r = 0; r < e.exps.size(); ++r) {
    const unsigned next = r + 1 < e.exps.size() ? e.exps[r + 1] : 0;
    bits.push_back('1');
    bits.append(e.exps[r] - next, '0');
  }
  return bits;
}

struct StairTerm {
  TermExpr expr;
  std::optional<Nat> value;  // empty iff the numerator was not divisible
  std::string bvc;
  Verdict verdict;

  bool accepted() const { return verdict.accepted(); }
};

struct Stair {
  unsigned k = 2;
  unsigned j = 1;
  std::vector<StairTerm> candidates;  // q ascending, then enumeration order

  std::size_t candidate_count() const { return candidates.size(); }

  // Accepted values, ascending.
  std::vector<Nat> accepted_values() const {
    std::vector<Nat> out;
    for (const auto& t : candidates) {
      if (t.accepted()) out.push_back(*t.value);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<const StairTerm*> accepted_terms() const {
    std::vector<const StairTerm*> out;
    for (const auto& t : candidates) {
      if (t.accepted()) out.push_back(&t);
    }
    return out;
  }
};

inline StairTerm evaluate_candidate(TermExpr expr) {
  StairTerm t;
  t.bvc = bvc_from_exponents(expr);
  t.value = term_value(expr);
  if (!t.value) {
    t.verdict.reason = RejectReason::NonIntegerNumerator;
  } else {
    t.verdict = verify_bvc(*t.value, t.bvc).verdict;
  }
  t.expr = std::move(expr);
  return t;
}

// All candidates of stair j (j >= 2) sharing denominator 3^q.
inline std::vector<StairTerm> candidates_for_q(unsigned k, unsigned j, unsigned q) {
  require_subtree_index(k, "candidates_for_q");
  if (j < 2 || q < 1 || q > j - 1) throw std::invalid_argument("candidates_for_q: need 1 <= q <= j-1");
  std::vector<StairTerm> out;
  for_each_exponent_sequence(q - 1, j - q - 1, [&](const ExponentSequence& exps) {
    out.push_back(evaluate_candidate(TermExpr{k, j, q, exps}));
  });
  return out;
}

// The per-q tasks are independent; workers > 1 runs them concurrently and the
// merge keeps q order, so the result is identical for any worker count.
inline Stair generate_stair(unsigned k, unsigned j, unsigned workers = 1) {
  require_subtree_index(k, "generate_stair");
  require_stair_index(j, "generate_stair");
  Stair stair{k, j, {}};
  if (j == 1) {
    stair.candidates.push_back(evaluate_candidate(TermExpr{k, 1, 1, {}}));
    return stair;
  }
  auto per_q = parallel_map(j - 1, workers, [&](std::size_t i) {
    return candidates_for_q(k, j, static_cast<unsigned>(i) + 1);
  });
  for (auto& batch : per_q) {
    std::move(batch.begin(), batch.end(), std::back_inserter(stair.candidates));
  }
  return stair;
}

}  // namespace collatz
