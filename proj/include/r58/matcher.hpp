#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "r58/graph.hpp"
#include "r58/patterns.hpp"
#include "r58/rng.hpp"

namespace r58 {

/// Exact probability num/den, parsed from "1/6", "0.25", "0" or "1".
struct Probability {
  std::uint64_t num = 1;
  std::uint64_t den = 6;

  static Probability parse(const std::string& text);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  bool draw(Rng& rng) const { return rng.below(den) < num; }
  bool operator==(const Probability&) const = default;
};

enum class Side : std::uint8_t { Primary, Apex };

/// Per (vertex, color) slot: Primary (in V) or Apex (in V').
class SplitTable {
 public:
  SplitTable() = default;
  SplitTable(int n, int k, std::uint64_t seed);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  std::uint64_t seed() const noexcept { return seed_; }

  Side at(Vertex v, Color c) const { return sides_[static_cast<std::size_t>(v) * k_ + c]; }
  void set(Vertex v, Color c, Side s) { sides_[static_cast<std::size_t>(v) * k_ + c] = s; }
  long long apex_count() const;

  bool operator==(const SplitTable&) const = default;

 private:
  int n_ = 0;
  int k_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<Side> sides_;
};

/// I.i.d. Apex with probability p, else Primary, drawn in (vertex, color)
/// order from the split stream of `seed`.
SplitTable random_split(int n, int k, Probability p, std::uint64_t seed);

/// Apex u carries color i on uv and uw; the base vw carries color l.
struct ChosenTriangle {
  Vertex apex = 0;
  Vertex v = 0;
  Vertex w = 0;
  Color primary = 0;
  Color secondary = 0;

  bool operator==(const ChosenTriangle&) const = default;
};

enum class RejectReason { EdgeTaken, SlotWrongSide, SlotUsed, CreatesBadSubgraph };

const char* reject_name(RejectReason r);

struct CheckResult {
  bool accepted = false;
  RejectReason reason = RejectReason::EdgeTaken;
  char bad_type = 0;  // set for CreatesBadSubgraph

  /// "accept", "EdgeTaken", ..., "CreatesBadSubgraph(a)".
  std::string str() const;
};

class MatchingState {
 public:
  explicit MatchingState(SplitTable split);

  const SplitTable& split() const noexcept { return split_; }
  const std::vector<ChosenTriangle>& triangles() const noexcept { return triangles_; }
  const Coloring& coloring() const noexcept { return index_.coloring(); }
  const ColoredGraphIndex& index() const noexcept { return index_; }
  int n() const noexcept { return split_.n(); }
  int k() const noexcept { return split_.k(); }

  bool used(Vertex v, Color c) const { return used_[static_cast<std::size_t>(v) * k() + c]; }

  /// Colors the triangle and marks its six slots; no validation.
  void commit(const ChosenTriangle& t);

  /// Rejections by cause; bad subgraphs keyed "CreatesBadSubgraph(x)".
  std::map<std::string, long long>& rejections() { return rejections_; }
  const std::map<std::string, long long>& rejections() const { return rejections_; }

 private:
  friend std::optional<std::string> matching_invariant_violation(const MatchingState& s);
  friend CheckResult candidate_check(MatchingState& state, const ChosenTriangle& cand);

  SplitTable split_;
  ColoredGraphIndex index_;
  std::vector<bool> used_;
  std::vector<ChosenTriangle> triangles_;
  std::map<std::string, long long> rejections_;
};

/// accept iff the three edges are uncolored, (u,i),(v,i),(w,i),(v,l),(w,l)
/// are Primary and free, (u,l) is Apex and free, and the new edges complete
/// no catalog pattern. Leaves the state unchanged.
CheckResult candidate_check(MatchingState& state, const ChosenTriangle& cand);

/// Full consistency check; returns a description of the first violation.
std::optional<std::string> matching_invariant_violation(const MatchingState& s);

struct StopRule {
  long long max_rejections = 0;  // 0 selects 50 n ceil(ln n)
  std::optional<bool> sweep;     // exhaustive final pass; default n <= 60
  bool debug_invariants = false;

  long long rejections_for(int n) const;
  bool sweep_for(int n) const { return sweep.value_or(n <= 60); }
};

struct MatchingOptions {
  int n = 0;
  int k = 0;  // 0 selects k = n
  Probability p;
  std::uint64_t seed = 0;
  StopRule stop;
};

/// Random greedy conflict-free matching. Candidates are uniform over
/// (apex, unordered base, ordered color pair i != l).
MatchingState greedy_matching(const MatchingOptions& opt);

struct CoverageStats {
  std::vector<int> degree;  // colored edges at each vertex
  int min = 0;
  int max = 0;
  double mean = 0;
};

CoverageStats coverage_stats(const MatchingState& state);

struct ExpectedDegrees {
  double d_edge = 0;
  double d_primary = 0;
  double d_apex = 0;
};

ExpectedDegrees expected_degrees(int n, int k, double p);

/// Leading coefficient of every expected degree at k = n, p = 1/6:
/// 5^5 / (2 * 6^5).
inline constexpr double kDegreeConstant = 3125.0 / (2.0 * 7776.0);

struct Estimate {
  double mean = 0;
  double stderr_ = 0;
};

struct DegreeSample {
  Estimate d_edge;
  Estimate d_primary;
  Estimate d_apex;
};

/// Number of valid hyperedges through edge {0,1}, through slot (0, color 0)
/// forced Primary, and through slot (0, color 0) forced Apex, averaged over
/// independent splits.
DegreeSample monte_carlo_degree(int n, int k, Probability p, int samples, std::uint64_t seed);

/// Hyperedge counts for a single split (the Monte Carlo kernel).
struct DegreeCounts {
  long long edge = 0;
  long long primary = 0;
  long long apex = 0;
};
DegreeCounts hyperedge_degrees(const SplitTable& split);

/// Sidecar JSON for a stage-1 run.
std::string stage1_report_json(const MatchingState& state, const MatchingOptions& opt);

}  // namespace r58
