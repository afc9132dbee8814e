#include "r58/finisher.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace r58 {

bool LeftoverGraph::contains(EdgeId e) const {
  return std::binary_search(edges.begin(), edges.end(), e);
}

LeftoverGraph leftover(const Coloring& c) {
  LeftoverGraph L;
  L.n = c.n();
  L.degree.assign(c.n(), 0);
  for (EdgeId e = 0; e < c.edges(); ++e) {
    if (c.at_edge(e) != kUncolored) continue;
    L.edges.push_back(e);
    const auto [u, v] = edge_endpoints(e, c.n());
    ++L.degree[u];
    ++L.degree[v];
  }
  L.max_degree = L.degree.empty() ? 0 : *std::max_element(L.degree.begin(), L.degree.end());
  return L;
}

LeftoverGraph leftover(const MatchingState& state) { return leftover(state.coloring()); }

BadEvent::Key BadEvent::key() const {
  if (!occurrence) return {involved, 0, 0, {}, {}};
  auto [type, vertices, colors] = occurrence->key();
  return {involved, 1, type, vertices, colors};
}

std::string BadEvent::str(int n) const {
  std::ostringstream out;
  if (kind == EventKind::AdjacentPair) {
    out << "adjacent";
  } else {
    out << "pattern " << occurrence->to_line();
  }
  out << " on";
  for (EdgeId e : involved) {
    const auto [u, v] = edge_endpoints(e, n);
    out << ' ' << u << '-' << v;
  }
  return out.str();
}

namespace {

// Incremental event store over a combined coloring.
class EventTracker {
 public:
  EventTracker(const Coloring& c, const LeftoverGraph& L)
      : n_(c.n()), index_(c), leftover_(c.edges(), false), by_edge_(c.edges()) {
    for (EdgeId e : L.edges) leftover_[e] = true;
  }

  const ColoredGraphIndex& index() const { return index_; }
  bool empty() const { return events_.empty(); }
  const BadEvent& first() const { return events_.begin()->second; }

  std::vector<BadEvent> all() const {
    std::vector<BadEvent> out;
    out.reserve(events_.size());
    for (const auto& [k, ev] : events_) out.push_back(ev);
    return out;
  }

  void detect_all(const LeftoverGraph& L) {
    for (EdgeId e : L.edges) detect_through(e);
  }

  void recolor(const std::vector<std::pair<EdgeId, Color>>& changes) {
    for (auto [e, c] : changes) {
      for (const auto& key : by_edge_[e]) events_.erase(key);
      by_edge_[e].clear();
    }
    for (auto [e, c] : changes) {
      index_.unassign(e);
      index_.assign(e, c);
    }
    for (auto [e, c] : changes) detect_through(e);
  }

 private:
  void add(BadEvent ev) {
    auto key = ev.key();
    if (events_.count(key)) return;
    for (EdgeId e : ev.involved) by_edge_[e].push_back(key);
    events_.emplace(std::move(key), std::move(ev));
  }

  void detect_through(EdgeId e) {
    const Color c = index_.coloring().at_edge(e);
    const auto [u, v] = index_.endpoints(e);
    for (Vertex x : {u, v}) {
      for (Vertex y : index_.neighbors(x, c)) {
        if (y == u || y == v) continue;
        const EdgeId f = edge_index(x, y, n_);
        if (!leftover_[f]) continue;
        BadEvent ev;
        ev.kind = EventKind::AdjacentPair;
        ev.involved = {std::min(e, f), std::max(e, f)};
        add(std::move(ev));
      }
    }
    for_each_occurrence_through(index_, e, [&](const BadOccurrence& occ) {
      BadEvent ev;
      ev.kind = EventKind::PotentialBad;
      for (EdgeId h : occ.host_edges(n_)) {
        if (leftover_[h]) ev.involved.push_back(h);
      }
      std::sort(ev.involved.begin(), ev.involved.end());
      ev.involved.erase(std::unique(ev.involved.begin(), ev.involved.end()), ev.involved.end());
      ev.occurrence = occ;
      add(std::move(ev));
      return true;
    });
  }

  int n_;
  ColoredGraphIndex index_;
  std::vector<bool> leftover_;
  std::vector<std::vector<BadEvent::Key>> by_edge_;
  std::map<BadEvent::Key, BadEvent> events_;
};

void require_colored(const Coloring& c, const LeftoverGraph& L) {
  for (EdgeId e : L.edges) {
    if (c.at_edge(e) == kUncolored) {
      const auto [u, v] = edge_endpoints(e, c.n());
      throw InputError("leftover edge " + std::to_string(u) + "-" + std::to_string(v) +
                       " is uncolored");
    }
  }
}

}  // namespace

std::vector<BadEvent> violated_events(const Coloring& c, const LeftoverGraph& L) {
  require_colored(c, L);
  EventTracker tracker(c, L);
  tracker.detect_all(L);
  return tracker.all();
}

ResampleResult resample(const Coloring& c, const LeftoverGraph& L, const ResampleOptions& opt) {
  if (opt.palette_size < 2) throw InputError("palette_size must be at least 2");
  for (EdgeId e = 0; e < c.edges(); ++e) {
    const Color col = c.at_edge(e);
    if (col != kUncolored && col >= opt.first_color) {
      throw InputError("palette overlaps stage-1 color " + std::to_string(col));
    }
  }
  const long long max_rounds = opt.max_rounds > 0 ? opt.max_rounds : kDefaultMaxRounds;
  Rng rng(opt.seed, Stream::Palette);
  auto draw = [&] { return opt.first_color + rng.below(opt.palette_size); };

  ResampleResult out{c, 0, 0, {}};
  ResampleStep initial;
  for (EdgeId e : L.edges) {
    const Color col = draw();
    out.coloring.set_edge(e, col);
    initial.assignments.emplace_back(e, col);
  }
  out.log.push_back(std::move(initial));

  EventTracker tracker(out.coloring, L);
  tracker.detect_all(L);
  while (!tracker.empty() && out.rounds < max_rounds) {
    ++out.rounds;
    ResampleStep step;
    step.round = out.rounds;
    for (EdgeId e : tracker.first().involved) step.assignments.emplace_back(e, draw());
    tracker.recolor(step.assignments);
    for (auto [e, col] : step.assignments) out.coloring.set_edge(e, col);
    out.log.push_back(std::move(step));
  }

  if (!tracker.empty()) {
    // A singleton color repeats nowhere, so it clears every event it
    // touches; events already cleared by an earlier recolor are skipped.
    std::set<EdgeId> stubborn;
    for (const auto& ev : tracker.all()) {
      const bool cleared = std::any_of(ev.involved.begin(), ev.involved.end(),
                                       [&](EdgeId e) { return stubborn.count(e) > 0; });
      if (!cleared) stubborn.insert(ev.involved.begin(), ev.involved.end());
    }
    ResampleStep fallback;
    fallback.round = -1;
    Color next = opt.first_color + opt.palette_size;
    for (EdgeId e : stubborn) {
      fallback.assignments.emplace_back(e, next);
      out.coloring.set_edge(e, next++);
    }
    out.fallback_colors = static_cast<int>(stubborn.size());
    out.log.push_back(std::move(fallback));
  }
  return out;
}

Coloring replay(const Coloring& c, const std::vector<ResampleStep>& log) {
  Coloring out = c;
  for (const auto& step : log) {
    for (auto [e, col] : step.assignments) out.set_edge(e, col);
  }
  return out;
}

int palette_size_for(int n, double delta) {
  if (n < 1) throw InputError("palette_size_for requires n >= 1");
  const double x = std::pow(static_cast<double>(n), 1.0 - delta);
  // Guard against pow landing just above an exact integer.
  const double r = std::round(x);
  const int size = std::abs(x - r) < 1e-9 ? static_cast<int>(r) : static_cast<int>(std::ceil(x));
  return std::max(size, 2);
}

std::string PipelineReport::json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["k_stage1"] = k_stage1;
  j["palette_size"] = palette_size;
  j["delta"] = delta;
  j["seed"] = seed;
  j["triangles"] = triangles;
  j["leftover_max_degree"] = leftover_max_degree;
  j["resample_rounds"] = resample_rounds;
  j["fallback_colors"] = fallback_colors;
  j["colors_used_total"] = colors_used_total;
  j["valid"] = valid;
  j["runtime"] = runtime ? nlohmann::ordered_json(*runtime) : nlohmann::ordered_json(nullptr);
  return j.dump(2) + "\n";
}

PipelineResult pipeline(const PipelineOptions& opt) {
  if (opt.n < 5) throw InputError("pipeline requires n >= 5");
  if (!(opt.delta >= 0 && opt.delta < 1)) throw InputError("delta must lie in [0, 1)");
  const auto start = std::chrono::steady_clock::now();

  MatchingOptions mopt;
  mopt.n = opt.n;
  mopt.k = opt.k > 0 ? opt.k : opt.n;
  mopt.p = opt.p;
  mopt.seed = opt.seed;
  mopt.stop = opt.stop;
  MatchingState stage1 = greedy_matching(mopt);
  const LeftoverGraph L = leftover(stage1);

  ResampleOptions ropt;
  ropt.palette_size = palette_size_for(opt.n, opt.delta);
  ropt.first_color = stage1.k();
  ropt.seed = opt.seed;
  ropt.max_rounds = opt.max_rounds;
  ResampleResult stage2 = resample(stage1.coloring(), L, ropt);

  PipelineReport rep;
  rep.n = opt.n;
  rep.k_stage1 = stage1.k();
  rep.palette_size = ropt.palette_size;
  rep.delta = opt.delta;
  rep.seed = opt.seed;
  rep.triangles = static_cast<long long>(stage1.triangles().size());
  rep.leftover_max_degree = L.max_degree;
  rep.resample_rounds = stage2.rounds;
  rep.fallback_colors = stage2.fallback_colors;
  rep.colors_used_total = stage2.coloring.color_count();
  rep.valid = verify_58(stage2.coloring, opt.threads).valid;
  if (opt.timing) {
    rep.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  Coloring final = stage2.coloring;
  return {rep, std::move(final), std::move(stage1), std::move(stage2)};
}

}  // namespace r58
