#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "r58/graph.hpp"
#include "r58/matcher.hpp"
#include "r58/patterns.hpp"

namespace r58 {

struct LeftoverGraph {
  int n = 0;
  std::vector<EdgeId> edges;  // ascending
  std::vector<int> degree;
  int max_degree = 0;

  bool contains(EdgeId e) const;
};

/// Uncolored pairs of `c`.
LeftoverGraph leftover(const Coloring& c);
LeftoverGraph leftover(const MatchingState& state);

enum class EventKind { AdjacentPair, PotentialBad };

struct BadEvent {
  EventKind kind = EventKind::AdjacentPair;
  std::vector<EdgeId> involved;  // leftover edges read by the event, ascending
  std::optional<BadOccurrence> occurrence;  // PotentialBad only

  using Key = std::tuple<std::vector<EdgeId>, int, char, std::vector<Vertex>, std::vector<Color>>;
  /// Sorted involved edges first, then kind, type tag, vertices and colors.
  Key key() const;
  std::string str(int n) const;
};

/// Every adjacent equal-colored leftover pair and every catalog occurrence
/// using at least one leftover edge, sorted by key(). Throws InputError if a
/// leftover edge is uncolored.
std::vector<BadEvent> violated_events(const Coloring& c, const LeftoverGraph& L);

struct ResampleOptions {
  int palette_size = 2;
  Color first_color = 0;  // palette is [first_color, first_color + palette_size)
  std::uint64_t seed = 0;
  long long max_rounds = 0;  // 0 selects the default
};

inline constexpr long long kDefaultMaxRounds = 1000;

struct ResampleStep {
  long long round = 0;  // 0 for the initial draw, -1 for fallback
  std::vector<std::pair<EdgeId, Color>> assignments;
};

struct ResampleResult {
  Coloring coloring;
  long long rounds = 0;
  int fallback_colors = 0;
  std::vector<ResampleStep> log;
};

/// Colors L uniformly from the palette, then repeatedly re-randomizes the
/// involved edges of the first violated event. Events left after max_rounds
/// get fresh singleton colors on their involved edges.
ResampleResult resample(const Coloring& c, const LeftoverGraph& L, const ResampleOptions& opt);

/// Applies a resample log to `c`.
Coloring replay(const Coloring& c, const std::vector<ResampleStep>& log);

struct PipelineOptions {
  int n = 0;
  int k = 0;  // 0 selects k = n
  Probability p;
  double delta = 0.1;
  std::uint64_t seed = 0;
  StopRule stop;
  long long max_rounds = 0;
  int threads = 1;
  bool timing = false;
};

struct PipelineReport {
  int n = 0;
  int k_stage1 = 0;
  int palette_size = 0;
  double delta = 0;
  std::uint64_t seed = 0;
  long long triangles = 0;
  int leftover_max_degree = 0;
  long long resample_rounds = 0;
  int fallback_colors = 0;
  int colors_used_total = 0;
  bool valid = false;
  std::optional<double> runtime;  // seconds, recorded only when timing is requested

  std::string json() const;
};

struct PipelineResult {
  PipelineReport report;
  Coloring coloring;
  MatchingState stage1;
  ResampleResult stage2;
};

/// ceil(n^(1 - delta)).
int palette_size_for(int n, double delta);

PipelineResult pipeline(const PipelineOptions& opt);

}  // namespace r58
