#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ynbf::topology {

/// Malformed topology input. The message carries the source name and the
/// line or element at fault.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Simple undirected graph over string node ids. Parallel edges collapse and
/// self-loops are refused; edge ids are insertion indices.
class Graph {
public:
  std::size_t add_node(const std::string& id);

  /// Adds the undirected edge a-b, creating missing nodes. Returns false for
  /// a self-loop or an edge that already exists.
  bool add_edge(const std::string& a, const std::string& b);

  std::size_t node_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::string& name(std::size_t node) const { return names_.at(node); }
  std::optional<std::size_t> find(std::string_view id) const;

  /// Neighbours in ascending id order.
  const std::vector<std::size_t>& neighbors(std::size_t node) const { return adjacency_.at(node); }
  bool adjacent(std::size_t a, std::size_t b) const;

  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }

private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::set<std::pair<std::size_t, std::size_t>> edge_set_;
};

enum class GraphFormat { graphml, edgelist };

struct LoadedGraph {
  Graph graph;
  std::vector<std::string> warnings;
};

/// `.graphml` and `.xml` are GraphML; anything else is an edge list.
GraphFormat format_from_path(const std::filesystem::path& path);

/// Tab-separated `nodeA<TAB>nodeB` lines; blank lines and lines starting
/// with '#' are skipped.
LoadedGraph parse_edgelist(std::istream& in, std::string_view source = "<stream>");

/// GraphML `graph`/`node id`/`edge source target` structure. Attributes and
/// data keys are ignored. Edge endpoints without a <node> are created.
LoadedGraph parse_graphml(std::istream& in, std::string_view source = "<stream>");

LoadedGraph load_graph(const std::filesystem::path& path, GraphFormat format);
LoadedGraph load_graph(const std::filesystem::path& path);

} // namespace ynbf::topology
