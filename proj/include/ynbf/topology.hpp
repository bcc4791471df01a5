#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ynbf/graph.hpp"
#include "ynbf/yes_no_filter.hpp"

namespace ynbf::topology {

/// A link in forwarding direction; a->b and b->a are different links.
struct DirectedLink {
  std::string from;
  std::string to;

  std::string id() const { return from + "->" + to; }
  auto operator<=>(const DirectedLink&) const = default;
};

/// Nodes of the largest connected component (ties go to the component whose
/// smallest id sorts first), in ascending id order.
std::vector<std::size_t> largest_component(const Graph& g);

/// A shortest path realising the diameter of the largest component.
///
/// Among diameter pairs the lexicographically smallest (from, to) with
/// from < to wins; among shortest paths between them the walk always steps to
/// the smallest-id neighbour that stays on a shortest path. Throws
/// std::invalid_argument if no component has two nodes.
std::vector<std::string> select_long_path(const Graph& g);

enum class ReverseLinks {
  /// b->a is a candidate non-member when a->b is on the path.
  include,
  exclude,
};

struct LinkSets {
  std::vector<DirectedLink> s_links; ///< consecutive path links, in path order
  std::vector<DirectedLink> t_links; ///< outgoing links of path nodes not on the path
};

/// Throws std::invalid_argument unless `path` is a simple path of g with at
/// least two nodes.
LinkSets derive_link_sets(const Graph& g, std::span<const std::string> path,
                          ReverseLinks reverse = ReverseLinks::include);

/// Forwarding-path geometry used by the topology experiment.
inline YesNoParams forwarding_params() { return YesNoParams{192, 32, 2, 4, 3, false}; }

struct PathExperiment {
  std::vector<std::string> path;
  LinkSets links;
  std::size_t allocations = 1000;
  YesNoParams params = forwarding_params();
  /// Hash count of the classic filter, which uses all params.m() bits.
  std::size_t k_bf = 6;
};

PathExperiment make_experiment(const Graph& g, std::vector<std::string> path,
                               ReverseLinks reverse = ReverseLinks::include);

struct TopologyEntry {
  std::string topology;
  std::size_t path_len = 0; ///< hops, |S|
  std::size_t t_size = 0;
  double fp_yesno_mean = 0;
  double fp_bf_mean = 0;
  double fp_yes_filter_mean = 0; ///< the yes-filter queried alone
  /// Per-allocation false-positive counts.
  std::vector<std::uint32_t> yesno_counts;
  std::vector<std::uint32_t> bf_counts;
  std::vector<std::uint32_t> yes_filter_counts;
  /// Path links rejected by either structure, summed over allocations.
  std::size_t member_rejections = 0;

  double rate_yesno() const;
  double rate_bf() const;
  /// fp_yesno_mean / fp_bf_mean, undefined when the classic filter saw none.
  std::optional<double> ratio() const;
};

/// Averages false-positive counts over exp.allocations fresh random hash
/// allocations. Allocation a draws from a stream keyed by
/// (seed, topology_id, a).
TopologyEntry run_topology_experiment(const PathExperiment& exp, std::uint64_t seed,
                                      std::string_view topology_id);

struct LengthAggregate {
  std::size_t n = 0;
  std::size_t topologies = 0;
  double rate_yesno = 0;
  double rate_bf = 0;
  std::optional<double> ratio;
};

struct Aggregation {
  std::vector<LengthAggregate> rows; ///< ascending n
  std::size_t undefined_ratios = 0;  ///< lengths whose classic rate is 0
};

/// Mean false-positive rate (count / |T|) per path length over topologies.
Aggregation aggregate_by_length(std::span<const TopologyEntry> entries);

inline constexpr std::string_view topology_csv_header =
    "topology,path_len,t_size,fp_yesno_mean,fp_bf_mean,ratio";
inline constexpr std::string_view aggregate_csv_header = "n,rate_yesno,rate_bf,ratio";

void write_topology_csv(std::ostream& out, std::span<const TopologyEntry> entries);
void write_aggregate_csv(std::ostream& out, const Aggregation& agg);

struct NamedGraph {
  std::string name;
  Graph graph;
};

/// Deterministic grids, rings and random geometric graphs whose diameter
/// paths cover 5..35 hops.
std::vector<NamedGraph> synthetic_corpus(std::uint64_t seed);

Graph grid_graph(std::size_t width, std::size_t height);
Graph ring_graph(std::size_t nodes);
Graph random_geometric_graph(std::size_t nodes, double radius, std::uint64_t seed);

} // namespace ynbf::topology
