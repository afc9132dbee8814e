#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace r58 {

using Vertex = int;
using Color = int;
using EdgeId = int;

inline constexpr Color kUncolored = -1;

/// Raised for malformed arguments or input files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parse failure in the coloring text format; carries the 1-based line number.
class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& what);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct Edge {
  Vertex u;
  Vertex v;
  bool operator==(const Edge&) const = default;
};

constexpr EdgeId edge_count(int n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Lexicographic index of the pair {u, v} among all pairs of [0, n).
EdgeId edge_index(Vertex u, Vertex v, int n);

/// Inverse of edge_index; the returned pair has u < v.
Edge edge_endpoints(EdgeId id, int n);

// Unchecked variant for hot loops (requires u < v).
constexpr EdgeId edge_index_ordered(Vertex u, Vertex v, int n) {
  return u * n - u * (u + 1) / 2 + (v - u - 1);
}

/// Partial or total edge coloring of K_n, stored densely by edge index.
class Coloring {
 public:
  explicit Coloring(int n);

  int n() const noexcept { return n_; }
  EdgeId edges() const noexcept { return static_cast<EdgeId>(colors_.size()); }

  Color at(Vertex u, Vertex v) const { return colors_[edge_index(u, v, n_)]; }
  Color at_edge(EdgeId e) const { return colors_[e]; }
  void set(Vertex u, Vertex v, Color c) { set_edge(edge_index(u, v, n_), c); }
  void set_edge(EdgeId e, Color c);
  void clear_edge(EdgeId e) { colors_[e] = kUncolored; }

  bool is_total() const;
  EdgeId colored_count() const;
  /// Sorted distinct color ids in use.
  std::vector<Color> used_colors() const;
  int color_count() const { return static_cast<int>(used_colors().size()); }
  Color max_color() const;

  std::span<const Color> raw() const noexcept { return colors_; }

  bool operator==(const Coloring&) const = default;

 private:
  int n_;
  std::vector<Color> colors_;
};

enum class Shape { K2, P3, P4, K13, K3, Other };

const char* shape_name(Shape s);

/// One maximal monochromatic component.
///
/// Vertex order: K2 sorted; P3 as (end, center, end) with ends ascending;
/// P4 along the path starting at the smaller end; K13 center first, then
/// leaves ascending; K3 and Other sorted.
struct Component {
  Color color = kUncolored;
  Shape shape = Shape::Other;
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;  // ascending
};

/// Per color id, its maximal components ordered by smallest vertex then
/// lexicographically by sorted vertex set.
using Decomposition = std::map<Color, std::vector<Component>>;

Decomposition decompose(const Coloring& c);

/// Number of distinct colors on the colored pairs inside a 5-vertex set.
int colors_in_subset(const Coloring& c, std::span<const Vertex> subset);

inline constexpr int kUndefinedMinColors = -1;

struct VerifyReport {
  bool valid = true;
  int min_colors_seen = kUndefinedMinColors;
  std::optional<std::array<Vertex, 5>> witness;  // set only when invalid
};

/// Checks that every 5-vertex subset of a total coloring sees at least 8
/// colors. The witness is the lexicographically first minimizing subset.
/// For n < 5 the result is vacuously valid with kUndefinedMinColors.
VerifyReport verify_58(const Coloring& c, int threads = 1);

Coloring read_coloring(std::istream& in);
Coloring read_coloring_file(const std::string& path);
void write_coloring(std::ostream& out, const Coloring& c);
/// Writes via a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace r58
