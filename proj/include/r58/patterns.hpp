#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "r58/graph.hpp"

namespace r58 {

// Symbolic color slots of a pattern.
inline constexpr int kSlotI = 0;
inline constexpr int kSlotL = 1;
inline constexpr int kSlotM = 2;

struct PatternEdge {
  int x;
  int y;
  int slot;
};

/// One forbidden colored configuration on 4 or 5 vertices.
struct BadPattern {
  char type;    // 'a'..'f'
  int variant;  // 1-based within the type; 0 when the type has a single entry
  int vertex_count;
  int slot_count;
  std::vector<PatternEdge> edges;

  /// "a", "b", "c", "d1".."d4", "e1", "e2", "f1", "f2".
  std::string name() const;
};

/// The forbidden configurations, in the order a, b, c, d1-d4, e1-e2, f1-f2.
const std::vector<BadPattern>& catalog();

/// Lexicographically smallest sorted (x, y, slot) edge list over all vertex
/// and slot relabelings; equal forms mean isomorphic colored graphs.
std::vector<std::array<int, 3>> canonical_form(const BadPattern& p);

/// A concrete embedding of a catalog pattern in a coloring.
struct BadOccurrence {
  int pattern = 0;              // index into catalog()
  char type = '?';
  std::vector<Vertex> vertices;  // image of pattern vertex 0, 1, ...
  std::vector<Color> colors;     // image of slot i, l, m

  const BadPattern& shape() const { return catalog()[pattern]; }
  /// Host edge ids of the pattern edges, in pattern edge order.
  std::vector<EdgeId> host_edges(int n) const;
  using Key = std::tuple<char, std::vector<Vertex>, std::vector<Color>>;
  /// Canonical identity: type tag, sorted vertices, sorted colors.
  Key key() const;
  /// "name v0 v1 ... c_i c_l [c_m]"
  std::string to_line() const;
};

/// Mutable incidence index over a coloring: per (vertex, color) neighbor
/// lists, per-color edge lists and per-vertex colored neighbors.
class ColoredGraphIndex {
 public:
  explicit ColoredGraphIndex(int n);
  explicit ColoredGraphIndex(const Coloring& c);

  int n() const noexcept { return coloring_.n(); }
  const Coloring& coloring() const noexcept { return coloring_; }

  Color color(Vertex u, Vertex v) const { return matrix_[u * n() + v]; }
  void assign(EdgeId e, Color c);
  void unassign(EdgeId e);

  std::span<const Vertex> neighbors(Vertex v, Color c) const;
  std::span<const EdgeId> class_edges(Color c) const;
  std::span<const Vertex> colored_neighbors(Vertex v) const { return adjacency_[v]; }
  Edge endpoints(EdgeId e) const { return endpoints_[e]; }

 private:
  void reserve_color(Color c);
  static void erase_value(std::vector<int>& list, int value);

  Coloring coloring_;
  std::vector<Color> matrix_;
  int color_capacity_ = 0;
  std::vector<std::vector<Vertex>> by_color_;  // [v * capacity + c]
  std::vector<std::vector<EdgeId>> class_edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Edge> endpoints_;
};

using OccurrenceVisitor = std::function<bool(const BadOccurrence&)>;

/// Visits every embedding (not deduplicated) of a catalog pattern that uses
/// the colored edge `e`. Stops early when the visitor returns false; the
/// return value is false iff stopped early.
bool for_each_occurrence_through(const ColoredGraphIndex& g, EdgeId e,
                                 const OccurrenceVisitor& visit);

/// First occurrence through `e` in deterministic search order.
std::optional<BadOccurrence> first_occurrence_through(const ColoredGraphIndex& g, EdgeId e);

/// All occurrences inside a vertex window of size at most 5, by exhaustive
/// injection; deduplicated by key() and sorted.
std::vector<BadOccurrence> find_occurrences_in_window(const Coloring& c,
                                                      std::span<const Vertex> window);

/// All occurrences in a (possibly partial) coloring, deduplicated by key()
/// and sorted by it.
std::vector<BadOccurrence> scan_bad(const Coloring& c);

/// Sorts and deduplicates occurrences by key(), keeping the lexicographically
/// smallest (pattern, vertices, colors) representative.
void canonicalize(std::vector<BadOccurrence>& occurrences);

enum class Premise {
  None,
  ClassShape,          // a color class has a component other than K2 or P3
  PathOverlap,         // two monochromatic 2-edge paths share two vertices
  TriangleColors,      // two 2-colored triangles share a vertex and a color
  ApexIsolation,       // the apex of a 2-colored triangle touches its base color elsewhere
};

struct PremiseReport {
  Premise violated = Premise::None;
  std::string detail;
  std::vector<Vertex> witness;
  bool ok() const { return violated == Premise::None; }
};

/// Structural hypotheses under which bad 5-sets are covered by the catalog.
/// The apex-isolation condition is included: without it the coverage claim
/// fails (see tests/test_patterns.cpp for the counterexample).
PremiseReport check_premises(const Coloring& c, bool require_apex_isolation = true);

struct EquivalenceCounterexample {
  std::array<Vertex, 5> subset{};
  bool bad = false;
  int colors = 0;
  std::string reason;
};

struct EquivalenceReport {
  long long subsets = 0;
  long long bad_subsets = 0;
  long long subsets_with_occurrence = 0;
  std::vector<EquivalenceCounterexample> counterexamples;
  bool holds() const { return counterexamples.empty(); }
};

/// For every 5-subset of a total coloring satisfying check_premises(), checks
/// bad => contains an occurrence, and contains a type b-f occurrence => bad.
/// Throws InputError naming the violated premise otherwise.
EquivalenceReport coverage_equivalence_check(const Coloring& c, bool require_apex_isolation = true);

}  // namespace r58
