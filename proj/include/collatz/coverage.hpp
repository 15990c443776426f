#pragma once

// Forward-direction checks and bounded empirical coverage of the naturals.

#include "collatz/analytic.hpp"
#include "collatz/backward.hpp"
#include "collatz/nat.hpp"
#include "collatz/numtheory.hpp"
#include "collatz/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace collatz {

// f^j(value) == 2^{2k} and no earlier iterate is a power of two.
inline bool verify_forward(const Nat& value, unsigned k, unsigned j) {
  if (value < 1 || k < 2 || j < 1) return false;
  Nat x = value;
  for (unsigned i = 0; i < j; ++i) {
    if (is_power_of_two(x)) return false;
    x = collatz_step(x);
  }
  return x == pow2(2 * k);
}

struct Mismatch {
  enum class Side { OnlyAnalytic, OnlyBackward };
  unsigned j = 0;
  Nat value;
  Side side = Side::OnlyAnalytic;
};

struct EquivalenceResult {
  bool equal = true;
  std::optional<Mismatch> first_mismatch;
};

// Compares the generated stairs against breadth-first ground truth for
// j = 1..j_max, reporting the smallest differing value of the first bad stair.
inline EquivalenceResult check_equivalence(unsigned k, unsigned j_max) {
  require_subtree_index(k, "check_equivalence");
  require_stair_index(j_max, "check_equivalence");
  std::vector<PathNode> frontier{{detail::subtree_root(k), {}}};
  for (unsigned j = 1; j <= j_max; ++j) {
    if (j > 1) frontier = detail::expand(frontier, j >= 3);
    const auto bfs = detail::sorted_values(frontier);
    const auto gen = generate_stair(k, j).accepted_values();
    if (bfs == gen) continue;

    std::vector<Nat> only_gen;
    std::vector<Nat> only_bfs;
    std::set_difference(gen.begin(), gen.end(), bfs.begin(), bfs.end(), std::back_inserter(only_gen));
    std::set_difference(bfs.begin(), bfs.end(), gen.begin(), gen.end(), std::back_inserter(only_bfs));
    Mismatch m{j, {}, Mismatch::Side::OnlyAnalytic};
    if (only_gen.empty() || (!only_bfs.empty() && only_bfs.front() < only_gen.front())) {
      m.value = only_bfs.front();
      m.side = Mismatch::Side::OnlyBackward;
    } else {
      m.value = only_gen.front();
    }
    return {false, m};
  }
  return {};
}

struct Placement {
  std::uint64_t value = 0;
  unsigned k = 0;
  std::uint64_t j = 0;

  friend bool operator==(const Placement&, const Placement&) = default;
};

struct CoverageOptions {
  std::size_t budget = kDefaultBudget;
  unsigned workers = 1;
  std::uint64_t chunk_size = 1u << 16;
  bool keep_placements = false;
};

// Classification of every n in [lo, hi]. Counts satisfy
// placed + in_invariant + |budget_exceeded| == hi - lo + 1.
struct CoverageReport {
  std::uint64_t lo = 2;
  std::uint64_t hi = 1;
  std::size_t budget = kDefaultBudget;
  std::uint64_t placed = 0;
  std::uint64_t in_invariant = 0;
  std::vector<std::uint64_t> budget_exceeded;
  std::map<std::pair<unsigned, std::uint64_t>, std::uint64_t> histogram;  // (k, j) -> count
  std::map<std::uint64_t, std::uint64_t> icltz_histogram;  // steps to {1,2,4} -> count
  std::vector<std::pair<std::uint64_t, std::uint64_t>> chunks;
  std::vector<Placement> placements;  // only with keep_placements

  std::uint64_t total() const { return hi >= lo ? hi - lo + 1 : 0; }
  bool conjecture_holds() const { return budget_exceeded.empty(); }
};

// Stair index towards {1,2,4} implied by the power-of-two analysis: from 2^{2k}
// there are 2k-2 further halvings to reach 4.
inline std::uint64_t icltz_index_from(std::uint64_t n, const StairIndex& idx) {
  if (idx.in_invariant()) {
    const unsigned m = *power_of_two_exponent(n);
    return m <= 2 ? 0 : m - 2;
  }
  return idx.steps + 2 * *idx.subtree - 2;
}

inline void merge_into(CoverageReport& into, const CoverageReport& part) {
  into.placed += part.placed;
  into.in_invariant += part.in_invariant;
  into.budget_exceeded.insert(into.budget_exceeded.end(), part.budget_exceeded.begin(),
                              part.budget_exceeded.end());
  for (const auto& [key, n] : part.histogram) into.histogram[key] += n;
  for (const auto& [key, n] : part.icltz_histogram) into.icltz_histogram[key] += n;
  into.chunks.insert(into.chunks.end(), part.chunks.begin(), part.chunks.end());
  into.placements.insert(into.placements.end(), part.placements.begin(), part.placements.end());
}

// Single range, single thread.
inline CoverageReport scan_chunk(std::uint64_t lo, std::uint64_t hi, const CoverageOptions& opt) {
  CoverageReport r;
  r.lo = lo;
  r.hi = hi;
  r.budget = opt.budget;
  r.chunks.emplace_back(lo, hi);
  for (std::uint64_t n = lo; n <= hi && n != 0; ++n) {
    try {
      const StairIndex idx = stair_index_iu(n, opt.budget);
      ++r.icltz_histogram[icltz_index_from(n, idx)];
      if (idx.in_invariant()) {
        ++r.in_invariant;
        continue;
      }
      ++r.placed;
      ++r.histogram[{*idx.subtree, idx.steps}];
      if (opt.keep_placements) r.placements.push_back({n, *idx.subtree, idx.steps});
    } catch (const BudgetExceeded&) {
      r.budget_exceeded.push_back(n);
    }
    if (n == hi) break;
  }
  return r;
}

// Scans [lo, hi] in fixed-size chunks. Chunk boundaries depend only on
// chunk_size, and chunks are merged in range order, so the report is the same
// for any worker count. Partial scans can be resumed and merged by range.
inline CoverageReport coverage_scan_range(std::uint64_t lo, std::uint64_t hi,
                                          const CoverageOptions& opt = {}) {
  if (lo < 2) lo = 2;
  CoverageReport out;
  out.lo = lo;
  out.hi = hi;
  out.budget = opt.budget;
  if (hi < lo) return out;
  const std::uint64_t chunk = std::max<std::uint64_t>(1, opt.chunk_size);
  const std::uint64_t count = (hi - lo) / chunk + 1;
  auto parts = parallel_map(count, opt.workers, [&](std::size_t i) {
    const std::uint64_t a = lo + i * chunk;
    const std::uint64_t b = std::min(hi, a + (chunk - 1));
    return scan_chunk(a, b, opt);
  });
  for (const auto& p : parts) merge_into(out, p);
  return out;
}

inline CoverageReport coverage_scan(std::uint64_t bound, const CoverageOptions& opt = {}) {
  return coverage_scan_range(2, bound, opt);
}

inline nlohmann::ordered_json to_json(const CoverageReport& r) {
  nlohmann::ordered_json j;
  j["lo"] = r.lo;
  j["bound"] = r.hi;
  j["budget"] = r.budget;
  j["placed"] = r.placed;
  j["in_invariant"] = r.in_invariant;
  j["budget_exceeded"] = r.budget_exceeded;
  auto hist = nlohmann::ordered_json::array();
  for (const auto& [key, n] : r.histogram) {
    hist.push_back({{"k", key.first}, {"j", key.second}, {"count", n}});
  }
  j["histogram"] = std::move(hist);
  auto icltz = nlohmann::ordered_json::array();
  for (const auto& [steps, n] : r.icltz_histogram) icltz.push_back({{"j", steps}, {"count", n}});
  j["icltz_histogram"] = std::move(icltz);
  auto chunks = nlohmann::ordered_json::array();
  for (const auto& [a, b] : r.chunks) chunks.push_back({a, b});
  j["chunks"] = std::move(chunks);
  return j;
}

inline std::string serialize(const CoverageReport& r) { return to_json(r).dump(2) + "\n"; }

}  // namespace collatz
