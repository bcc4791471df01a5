#include "ynbf/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "ynbf/bloom_filter.hpp"
#include "ynbf/rng.hpp"

namespace ynbf::topology {

namespace {

constexpr std::size_t unreachable = std::numeric_limits<std::size_t>::max();

std::vector<std::size_t> bfs_distances(const Graph& g, std::size_t source) {
  std::vector<std::size_t> dist(g.node_count(), unreachable);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v : g.neighbors(u)) {
      if (dist[v] != unreachable)
        continue;
      dist[v] = dist[u] + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

std::vector<std::size_t> sorted_by_name(const Graph& g, std::vector<std::size_t> nodes) {
  std::sort(nodes.begin(), nodes.end(),
            [&](std::size_t a, std::size_t b) { return g.name(a) < g.name(b); });
  return nodes;
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

} // namespace

std::vector<std::size_t> largest_component(const Graph& g) {
  std::vector<bool> visited(g.node_count(), false);
  std::vector<std::size_t> best;
  for (std::size_t start : sorted_by_name(g, [&] {
         std::vector<std::size_t> all(g.node_count());
         for (std::size_t i = 0; i < all.size(); ++i)
           all[i] = i;
         return all;
       }())) {
    if (visited[start])
      continue;
    std::vector<std::size_t> component;
    std::deque<std::size_t> queue{start};
    visited[start] = true;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      component.push_back(u);
      for (std::size_t v : g.neighbors(u))
        if (!visited[v]) {
          visited[v] = true;
          queue.push_back(v);
        }
    }
    // Starts are visited in id order, so the first component of a given
    // size is the one holding the smallest id.
    if (component.size() > best.size())
      best = std::move(component);
  }
  return sorted_by_name(g, std::move(best));
}

std::vector<std::string> select_long_path(const Graph& g) {
  const std::vector<std::size_t> component = largest_component(g);
  if (component.size() < 2)
    throw std::invalid_argument("select_long_path: graph has no component with two nodes");

  std::size_t best_len = 0;
  std::size_t from = 0;
  std::size_t to = 0;
  for (std::size_t u : component) {
    const auto dist = bfs_distances(g, u);
    for (std::size_t v : component) {
      if (!(g.name(u) < g.name(v)))
        continue;
      // Component and inner loop run in id order; strict '>' keeps the
      // lexicographically smallest pair among equal lengths.
      if (dist[v] > best_len) {
        best_len = dist[v];
        from = u;
        to = v;
      }
    }
  }

  const auto to_target = bfs_distances(g, to);
  std::vector<std::string> path{g.name(from)};
  for (std::size_t cur = from; cur != to;) {
    for (std::size_t next : g.neighbors(cur)) {
      if (to_target[next] + 1 == to_target[cur]) {
        cur = next;
        break;
      }
    }
    path.push_back(g.name(cur));
  }
  return path;
}

LinkSets derive_link_sets(const Graph& g, std::span<const std::string> path,
                          ReverseLinks reverse) {
  if (path.size() < 2)
    throw std::invalid_argument("derive_link_sets: a path needs at least two nodes");
  std::vector<std::size_t> nodes;
  std::set<std::size_t> seen;
  for (const std::string& id : path) {
    const auto node = g.find(id);
    if (!node)
      throw std::invalid_argument("derive_link_sets: unknown node '" + id + "'");
    if (!seen.insert(*node).second)
      throw std::invalid_argument("derive_link_sets: node '" + id + "' repeats on the path");
    nodes.push_back(*node);
  }

  LinkSets out;
  std::set<std::pair<std::size_t, std::size_t>> on_path;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (!g.adjacent(nodes[i], nodes[i + 1]))
      throw std::invalid_argument("derive_link_sets: no edge " + path[i] + " - " + path[i + 1]);
    on_path.emplace(nodes[i], nodes[i + 1]);
    out.s_links.push_back({path[i], path[i + 1]});
  }
  for (std::size_t u : nodes) {
    for (std::size_t v : g.neighbors(u)) {
      if (on_path.contains({u, v}))
        continue;
      if (reverse == ReverseLinks::exclude && on_path.contains({v, u}))
        continue;
      out.t_links.push_back({g.name(u), g.name(v)});
    }
  }
  return out;
}

PathExperiment make_experiment(const Graph& g, std::vector<std::string> path,
                               ReverseLinks reverse) {
  PathExperiment exp;
  exp.links = derive_link_sets(g, path, reverse);
  exp.path = std::move(path);
  return exp;
}

double TopologyEntry::rate_yesno() const {
  return t_size == 0 ? 0.0 : fp_yesno_mean / static_cast<double>(t_size);
}

double TopologyEntry::rate_bf() const {
  return t_size == 0 ? 0.0 : fp_bf_mean / static_cast<double>(t_size);
}

std::optional<double> TopologyEntry::ratio() const {
  if (fp_bf_mean <= 0.0)
    return std::nullopt;
  return fp_yesno_mean / fp_bf_mean;
}

TopologyEntry run_topology_experiment(const PathExperiment& exp, std::uint64_t seed,
                                      std::string_view topology_id) {
  exp.params.validate();
  if (exp.allocations == 0)
    throw std::invalid_argument("topology experiment: allocations must be at least 1");

  const std::size_t n = exp.links.s_links.size();
  const std::size_t t = exp.links.t_links.size();
  std::vector<ElementId> members(n);
  std::vector<ElementId> others(t);
  for (std::size_t i = 0; i < n; ++i)
    members[i] = i;
  for (std::size_t i = 0; i < t; ++i)
    others[i] = n + i;

  TopologyEntry entry;
  entry.topology = std::string(topology_id);
  entry.path_len = n;
  entry.t_size = t;
  entry.yesno_counts.reserve(exp.allocations);
  entry.bf_counts.reserve(exp.allocations);
  entry.yes_filter_counts.reserve(exp.allocations);

  const std::uint64_t topology_key = fnv1a64(topology_id);
  double yesno_sum = 0;
  double bf_sum = 0;
  double yes_filter_sum = 0;
  for (std::size_t a = 0; a < exp.allocations; ++a) {
    const std::uint64_t allocation_seed = derive_seed(seed, topology_key, a);
    const SketchHasher hasher{exp.params, derive_seed(allocation_seed, 1)};
    const auto s = hasher.sketch(members);
    const auto u = hasher.sketch(others);
    const BuildResult built = build(exp.params, s, u);

    BloomFilter classic{HashFamily{exp.k_bf, exp.params.m(), derive_seed(allocation_seed, 2)}};
    for (ElementId e : members)
      classic.insert(e);

    const auto yesno_fp = static_cast<std::uint32_t>(count_positives(built.filter, u));
    std::uint32_t bf_fp = 0;
    for (ElementId e : others)
      bf_fp += classic.contains(e) ? 1U : 0U;
    const auto yes_filter_fp = static_cast<std::uint32_t>(built.report.f_count);

    for (std::size_t i = 0; i < n; ++i)
      entry.member_rejections +=
          (built.filter.contains(s[i]) ? 0U : 1U) + (classic.contains(members[i]) ? 0U : 1U);

    entry.yesno_counts.push_back(yesno_fp);
    entry.bf_counts.push_back(bf_fp);
    entry.yes_filter_counts.push_back(yes_filter_fp);
    yesno_sum += yesno_fp;
    bf_sum += bf_fp;
    yes_filter_sum += yes_filter_fp;
  }
  const auto allocations = static_cast<double>(exp.allocations);
  entry.fp_yesno_mean = yesno_sum / allocations;
  entry.fp_bf_mean = bf_sum / allocations;
  entry.fp_yes_filter_mean = yes_filter_sum / allocations;
  return entry;
}

Aggregation aggregate_by_length(std::span<const TopologyEntry> entries) {
  if (entries.empty())
    throw std::invalid_argument("aggregate_by_length: no results");
  std::map<std::size_t, LengthAggregate> by_length;
  for (const TopologyEntry& e : entries) {
    LengthAggregate& row = by_length[e.path_len];
    row.n = e.path_len;
    ++row.topologies;
    row.rate_yesno += e.rate_yesno();
    row.rate_bf += e.rate_bf();
  }
  Aggregation out;
  for (auto& [n, row] : by_length) {
    row.rate_yesno /= static_cast<double>(row.topologies);
    row.rate_bf /= static_cast<double>(row.topologies);
    if (row.rate_bf > 0.0)
      row.ratio = row.rate_yesno / row.rate_bf;
    else
      ++out.undefined_ratios;
    out.rows.push_back(row);
  }
  return out;
}

void write_topology_csv(std::ostream& out, std::span<const TopologyEntry> entries) {
  out << topology_csv_header << '\n';
  for (const TopologyEntry& e : entries) {
    out << e.topology << ',' << e.path_len << ',' << e.t_size << ',' << fixed6(e.fp_yesno_mean)
        << ',' << fixed6(e.fp_bf_mean) << ',';
    if (const auto r = e.ratio())
      out << fixed6(*r);
    out << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const Aggregation& agg) {
  out << aggregate_csv_header << '\n';
  for (const LengthAggregate& row : agg.rows) {
    out << row.n << ',' << fixed6(row.rate_yesno) << ',' << fixed6(row.rate_bf) << ',';
    if (row.ratio)
      out << fixed6(*row.ratio);
    out << '\n';
  }
}

namespace {

std::string padded(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%04zu", prefix, i);
  return buf;
}

} // namespace

Graph grid_graph(std::size_t width, std::size_t height) {
  Graph g;
  auto id = [](std::size_t x, std::size_t y) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "x%03zuy%03zu", x, y);
    return std::string(buf);
  };
  for (std::size_t y = 0; y < height; ++y)
    for (std::size_t x = 0; x < width; ++x) {
      g.add_node(id(x, y));
      if (x > 0)
        g.add_edge(id(x - 1, y), id(x, y));
      if (y > 0)
        g.add_edge(id(x, y - 1), id(x, y));
    }
  return g;
}

Graph ring_graph(std::size_t nodes) {
  Graph g;
  for (std::size_t i = 0; i < nodes; ++i)
    g.add_edge(padded("v", i), padded("v", (i + 1) % nodes));
  return g;
}

Graph random_geometric_graph(std::size_t nodes, double radius, std::uint64_t seed) {
  SplitMix64 rng{seed};
  std::vector<std::pair<double, double>> points(nodes);
  for (auto& [x, y] : points) {
    x = rng.unit();
    y = rng.unit();
  }
  Graph g;
  for (std::size_t i = 0; i < nodes; ++i)
    g.add_node(padded("v", i));
  const double r2 = radius * radius;
  for (std::size_t i = 0; i < nodes; ++i)
    for (std::size_t j = i + 1; j < nodes; ++j) {
      const double dx = points[i].first - points[j].first;
      const double dy = points[i].second - points[j].second;
      if (dx * dx + dy * dy <= r2)
        g.add_edge(padded("v", i), padded("v", j));
    }
  return g;
}

std::vector<NamedGraph> synthetic_corpus(std::uint64_t seed) {
  std::vector<NamedGraph> corpus;
  for (std::size_t hops = 5; hops <= 35; ++hops) {
    const std::size_t w = (hops + 2) / 2;
    const std::size_t h = hops + 2 - w;
    corpus.push_back({"grid_" + std::to_string(w) + "x" + std::to_string(h), grid_graph(w, h)});
    corpus.push_back({"ring_" + std::to_string(2 * hops), ring_graph(2 * hops)});
  }
  // Average degree around 6; diameters land roughly in 5..35 hops.
  SplitMix64 rng{seed};
  for (std::size_t i = 0; i < 24; ++i) {
    const std::size_t nodes = 40 + rng.below(560);
    const double radius = std::sqrt(6.0 / (3.14159265358979 * static_cast<double>(nodes)));
    const std::uint64_t graph_seed = rng();
    corpus.push_back({"rgg_" + std::to_string(i) + "_" + std::to_string(nodes),
                      random_geometric_graph(nodes, radius, graph_seed)});
  }
  return corpus;
}

} // namespace ynbf::topology
