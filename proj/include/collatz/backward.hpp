#pragma once

// Brute-force backward reachability. Serves as the independent oracle for the
// closed-form stair generator, so it deliberately shares nothing with
// analytic.hpp: it only expands inverse_step breadth-first.

#include "collatz/nat.hpp"
#include "collatz/numtheory.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace collatz {

struct StairSet {
  unsigned index = 1;
  std::vector<Nat> members;  // ascending, distinct

  friend bool operator==(const StairSet&, const StairSet&) = default;
};

// A tree node together with its BVC relative to the stair-2 node of its subtree.
struct PathNode {
  Nat value;
  std::string bvc;
};

namespace detail {

inline std::vector<Nat> sorted_values(const std::vector<PathNode>& frontier) {
  std::vector<Nat> out;
  out.reserve(frontier.size());
  for (const auto& n : frontier) out.push_back(n.value);
  std::sort(out.begin(), out.end());
  return out;
}

// One BFS layer. Path bits are only recorded once the stair-2 anchor is passed.
inline std::vector<PathNode> expand(const std::vector<PathNode>& frontier, bool record_bits) {
  std::vector<PathNode> next;
  for (const auto& node : frontier) {
    const auto children = inverse_step(node.value);
    for (std::size_t c = 0; c < children.size(); ++c) {
      std::string bits = node.bvc;
      if (record_bits) bits.push_back(c == 0 ? '0' : '1');
      next.push_back({children[c], std::move(bits)});
    }
  }
  return next;
}

inline Nat subtree_root(unsigned k) {
  if (k < 2) throw std::invalid_argument("subtree root: k must be >= 2");
  return (pow2(2 * k) - 1) / 3;
}

}  // namespace detail

// Stairs 1..j_max with respect to {1,2,4}. Stair 1 is R({1,2,4}) minus the
// invariant itself, i.e. {8}.
inline std::vector<StairSet> stairs_icltz(unsigned j_max) {
  if (j_max < 1) throw std::invalid_argument("stairs_icltz: j_max must be >= 1");
  std::vector<Nat> frontier;
  for (unsigned v : {1u, 2u, 4u}) {
    for (auto& c : inverse_step(Nat(v))) {
      if (!in_icltz(c)) frontier.push_back(std::move(c));
    }
  }
  std::vector<StairSet> out;
  for (unsigned j = 1; j <= j_max; ++j) {
    if (j > 1) {
      std::vector<Nat> next;
      for (const auto& v : frontier) {
        for (auto& c : inverse_step(v)) next.push_back(std::move(c));
      }
      frontier = std::move(next);
    }
    std::sort(frontier.begin(), frontier.end());
    out.push_back({j, frontier});
  }
  return out;
}

// Stairs 1..j of the subtree rooted at Y_k/3, with BVC paths.
inline std::vector<std::vector<PathNode>> subtree_layers(unsigned k, unsigned j) {
  if (j < 1) throw std::invalid_argument("subtree_layers: j must be >= 1");
  std::vector<std::vector<PathNode>> layers;
  layers.push_back({{detail::subtree_root(k), {}}});
  for (unsigned s = 2; s <= j; ++s) {
    layers.push_back(detail::expand(layers.back(), s >= 3));
  }
  return layers;
}

// Only the frontier is kept, so memory follows the width of stair j.
inline std::vector<PathNode> subtree_frontier(unsigned k, unsigned j) {
  if (j < 1) throw std::invalid_argument("subtree_frontier: j must be >= 1");
  std::vector<PathNode> frontier{{detail::subtree_root(k), {}}};
  for (unsigned s = 2; s <= j; ++s) frontier = detail::expand(frontier, s >= 3);
  return frontier;
}

inline StairSet subtree_stairs_bfs(unsigned k, unsigned j) {
  return {j, detail::sorted_values(subtree_frontier(k, j))};
}

// Which backward tree to render.
struct TreeRoot {
  std::optional<unsigned> k;  // empty: the tree hanging off {1,2,4}

  static TreeRoot icltz() { return {}; }
  static TreeRoot subtree(unsigned k) { return {k}; }
};

// Graphviz rendering of the backward tree down to `depth` stairs. Edges point
// from a value to its inverse-step children.
inline std::string tree_dot(TreeRoot root, unsigned depth) {
  if (depth < 1) throw std::invalid_argument("tree_dot: depth must be >= 1");
  std::ostringstream os;
  auto node = [&](const Nat& v, unsigned stair, const std::string* bvc) {
    os << "  \"" << v << "\" [label=\"" << v << "\\nstair=" << stair;
    if (bvc && !bvc->empty()) os << "\\nbvc=" << *bvc;
    os << "\"];\n";
  };
  auto edge = [&](const Nat& from, const Nat& to) {
    os << "  \"" << from << "\" -> \"" << to << "\";\n";
  };

  if (!root.k) {
    os << "digraph collatz_icltz {\n  rankdir=TB;\n";
    for (unsigned v : {1u, 2u, 4u}) node(Nat(v), 0, nullptr);
    edge(Nat(1), Nat(2));
    edge(Nat(2), Nat(4));
    edge(Nat(4), Nat(1));
    edge(Nat(4), Nat(8));
    std::vector<Nat> frontier{Nat(8)};
    for (unsigned s = 1; s <= depth; ++s) {
      std::vector<Nat> next;
      for (const auto& v : frontier) {
        node(v, s, nullptr);
        if (s == depth) continue;
        for (auto& c : inverse_step(v)) {
          edge(v, c);
          next.push_back(std::move(c));
        }
      }
      frontier = std::move(next);
    }
  } else {
    os << "digraph collatz_subtree_k" << *root.k << " {\n  rankdir=TB;\n";
    const auto layers = subtree_layers(*root.k, depth);
    for (unsigned s = 1; s <= depth; ++s) {
      for (const auto& n : layers[s - 1]) {
        node(n.value, s, &n.bvc);
        if (s == depth) continue;
        for (const auto& c : inverse_step(n.value)) edge(n.value, c);
      }
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace collatz
