#pragma once

// Command-line surface. run() is the whole program minus process plumbing, so
// tests drive it in-process with string streams.
//
// Exit codes: 0 ok, 1 verification rejected, 2 bad arguments, 3 step budget
// exceeded, 4 coverage found values outside every stair within the budget,
// 5 internal contradiction.

#include "collatz/analytic.hpp"
#include "collatz/backward.hpp"
#include "collatz/coverage.hpp"
#include "collatz/nat.hpp"
#include "collatz/numtheory.hpp"
#include "collatz/verifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace collatz::cli {

enum ExitCode : int {
  kOk = 0,
  kRejected = 1,
  kBadArgs = 2,
  kBudget = 3,
  kUncovered = 4,
  kContradiction = 5,
};

inline constexpr const char* kBudgetEnv = "COLLATZ_STAIRS_BUDGET";

inline std::size_t budget_from_env() {
  if (const char* s = std::getenv(kBudgetEnv)) {
    try {
      const unsigned long long v = std::stoull(s);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return kDefaultBudget;
}

struct Range {
  unsigned first = 0;
  unsigned last = 0;
};

// "7" or "2..6".
inline Range parse_range(const std::string& text, unsigned minimum, const char* name) {
  auto parse_one = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument(std::string(name) + ": not a number: '" + s + "'");
    }
    const unsigned long v = std::stoul(s);
    if (v < minimum) {
      throw std::invalid_argument(std::string(name) + " must be >= " + std::to_string(minimum));
    }
    return static_cast<unsigned>(v);
  };
  const auto dots = text.find("..");
  Range r;
  if (dots == std::string::npos) {
    r.first = r.last = parse_one(text);
  } else {
    r.first = parse_one(text.substr(0, dots));
    r.last = parse_one(text.substr(dots + 2));
  }
  if (r.last < r.first) throw std::invalid_argument(std::string(name) + ": empty range '" + text + "'");
  return r;
}

enum class RecordFormat { Jsonl, Csv };

inline std::string json_record(const StairTerm& t) {
  nlohmann::ordered_json j;
  j["value"] = t.value ? nlohmann::ordered_json(to_decimal(*t.value)) : nlohmann::ordered_json(nullptr);
  j["k"] = t.expr.k;
  j["j"] = t.expr.j;
  j["q"] = t.expr.q;
  j["bvc"] = t.bvc;
  j["status"] = t.accepted() ? "accepted" : "rejected";
  j["reason"] = t.accepted() ? nlohmann::ordered_json(nullptr)
                             : nlohmann::ordered_json(std::string(reason_code(t.verdict.reason)));
  return j.dump();
}

inline constexpr const char* kCsvHeader = "value,k,j,q,bvc,status,reason";

inline std::string csv_record(const StairTerm& t) {
  std::string line = t.value ? to_decimal(*t.value) : std::string();
  line += "," + std::to_string(t.expr.k) + "," + std::to_string(t.expr.j) + "," +
          std::to_string(t.expr.q) + "," + t.bvc + ",";
  line += t.accepted() ? "accepted," : "rejected,";
  if (!t.accepted()) line += reason_code(t.verdict.reason);
  return line;
}

// Writes to --out when given, otherwise to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::invalid_argument("cannot open output file '" + path + "'");
    }
    out_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

struct GenArgs {
  std::string k;
  std::string j;
  std::string format = "jsonl";
  bool include_rejected = false;
  unsigned workers = default_workers();
  std::string out;
};

inline int cmd_gen(const GenArgs& a, std::ostream& out) {
  const Range ks = parse_range(a.k, 2, "--k");
  const Range js = parse_range(a.j, 1, "--j");
  if (a.format != "jsonl" && a.format != "csv") {
    throw std::invalid_argument("--format must be jsonl or csv");
  }
  const auto fmt = a.format == "csv" ? RecordFormat::Csv : RecordFormat::Jsonl;
  Sink sink(a.out, out);
  auto& os = sink.stream();
  if (fmt == RecordFormat::Csv) os << kCsvHeader << '\n';
  for (unsigned k = ks.first; k <= ks.last; ++k) {
    for (unsigned j = js.first; j <= js.last; ++j) {
      const Stair stair = generate_stair(k, j, a.workers);
      for (const auto& t : stair.candidates) {
        if (!t.accepted() && !a.include_rejected) continue;
        os << (fmt == RecordFormat::Csv ? csv_record(t) : json_record(t)) << '\n';
      }
    }
  }
  return kOk;
}

inline int cmd_verify(const std::string& value, const std::string& bvc, std::ostream& out,
                      std::ostream& err) {
  const auto x = parse_decimal(value);
  if (!x) {
    err << "verify: --value must be a decimal natural number\n";
    return kBadArgs;
  }
  if (!is_bvc(bvc)) {
    err << "verify: --bvc must contain only 0 and 1\n";
    return kBadArgs;
  }
  const auto res = verify_bvc(*x, bvc);
  if (res.accepted()) {
    out << "valid\n";
    return kOk;
  }
  out << "invalid: " << res.verdict.describe() << '\n';
  return kRejected;
}

inline int cmd_index(const std::string& n_text, const std::string& invariant, std::size_t budget,
                     std::ostream& out, std::ostream& err) {
  const auto n = parse_decimal(n_text);
  if (!n || *n < 1) {
    err << "index: --n must be a natural number >= 1\n";
    return kBadArgs;
  }
  try {
    if (invariant == "icltz") {
      if (in_icltz(*n)) {
        out << "invariant\n";
      } else {
        out << stair_index_icltz(*n, budget) << '\n';
      }
    } else {
      const StairIndex idx = stair_index_iu(*n, budget);
      if (idx.in_invariant()) {
        out << "invariant\n";
      } else {
        out << "j=" << idx.steps << " k=" << *idx.subtree << '\n';
      }
    }
  } catch (const BudgetExceeded& e) {
    out << "budget exceeded after " << e.steps() << " steps\n";
    return kBudget;
  }
  return kOk;
}

struct CoverageArgs {
  std::uint64_t min = 2;
  std::uint64_t max = 2;
  std::size_t budget = kDefaultBudget;
  unsigned workers = default_workers();
  std::uint64_t chunk = 1u << 16;
  std::string out;
};

inline int cmd_coverage(const CoverageArgs& a, std::ostream& out) {
  if (a.max < 2) throw std::invalid_argument("--max must be >= 2");
  CoverageOptions opt;
  opt.budget = a.budget;
  opt.workers = a.workers;
  opt.chunk_size = a.chunk;
  const CoverageReport r = coverage_scan_range(a.min, a.max, opt);
  Sink sink(a.out, out);
  sink.stream() << serialize(r);
  return r.conjecture_holds() ? kOk : kUncovered;
}

struct TreeArgs {
  bool icltz = false;
  std::optional<unsigned> k;
  unsigned depth = 1;
  std::string out;
};

inline int cmd_tree(const TreeArgs& a, std::ostream& out) {
  if (a.icltz == a.k.has_value()) throw std::invalid_argument("tree: give exactly one of --icltz or --k");
  if (a.k && *a.k < 2) throw std::invalid_argument("--k must be >= 2");
  if (a.depth < 1) throw std::invalid_argument("--depth must be >= 1");
  Sink sink(a.out, out);
  sink.stream() << tree_dot(a.k ? TreeRoot::subtree(*a.k) : TreeRoot::icltz(), a.depth);
  return kOk;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convergence stairs of the Collatz program"};
  app.name("collatz_stairs");
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate the j-th stair of the subtree rooted at Y_k/3");
  g->add_option("--k", gen.k, "Subtree index or range (e.g. 2 or 2..6)")->required();
  g->add_option("--j", gen.j, "Stair index or range (e.g. 5 or 1..14)")->required();
  g->add_option("--format", gen.format, "jsonl or csv")->capture_default_str();
  g->add_flag("--include-rejected", gen.include_rejected, "Also emit rejected candidates");
  g->add_option("--workers", gen.workers, "Worker threads")->check(CLI::PositiveNumber);
  g->add_option("--out", gen.out, "Output file (default stdout)");

  std::string value;
  std::string bvc;
  auto* v = app.add_subcommand("verify", "Check a value against its binary verification code");
  v->add_option("--value", value, "Decimal candidate value")->required();
  v->add_option("--bvc", bvc, "Bit string, possibly empty")->required();

  std::string n_text;
  std::string invariant = "icltz";
  std::size_t budget = budget_from_env();
  auto* ix = app.add_subcommand("index", "Stair index of n by forward simulation");
  ix->add_option("--n", n_text, "Decimal natural number")->required();
  ix->add_option("--invariant", invariant, "icltz or iu")
      ->check(CLI::IsMember({"icltz", "iu"}))
      ->capture_default_str();
  ix->add_option("--budget", budget, "Maximum forward steps")->check(CLI::PositiveNumber);

  CoverageArgs cov;
  cov.budget = budget_from_env();
  auto* c = app.add_subcommand("coverage", "Place every n in [min, max] into a stair");
  c->add_option("--max", cov.max, "Upper bound (inclusive)")->required();
  c->add_option("--min", cov.min, "Lower bound (inclusive, default 2)");
  c->add_option("--budget", cov.budget, "Maximum forward steps per value")->check(CLI::PositiveNumber);
  c->add_option("--workers", cov.workers, "Worker threads")->check(CLI::PositiveNumber);
  c->add_option("--chunk", cov.chunk, "Values per chunk")->check(CLI::PositiveNumber);
  c->add_option("--out", cov.out, "Output file (default stdout)");

  TreeArgs tree;
  unsigned tree_k = 0;
  auto* t = app.add_subcommand("tree", "Emit the backward tree in Graphviz dot format");
  t->add_flag("--icltz", tree.icltz, "Tree hanging off {1,2,4}");
  auto* tk = t->add_option("--k", tree_k, "Subtree rooted at Y_k/3");
  t->add_option("--depth", tree.depth, "Number of stairs")->required();
  t->add_option("--out", tree.out, "Output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArgs;
  }

  try {
    if (g->parsed()) return cmd_gen(gen, out);
    if (v->parsed()) return cmd_verify(value, bvc, out, err);
    if (ix->parsed()) return cmd_index(n_text, invariant, budget, out, err);
    if (c->parsed()) return cmd_coverage(cov, out);
    if (t->parsed()) {
      if (tk->count() > 0) tree.k = tree_k;
      return cmd_tree(tree, out);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kBadArgs;
  } catch (const InternalContradiction& e) {
    err << "internal contradiction: " << e.what() << '\n';
    return kContradiction;
  }
  return kBadArgs;
}

}  // namespace collatz::cli
