#include "ynbf/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace ynbf::topology {

std::size_t Graph::add_node(const std::string& id) {
  if (auto it = index_.find(id); it != index_.end())
    return it->second;
  const std::size_t node = names_.size();
  names_.push_back(id);
  index_.emplace(id, node);
  adjacency_.emplace_back();
  return node;
}

bool Graph::add_edge(const std::string& a, const std::string& b) {
  if (a == b)
    return false;
  const std::size_t u = add_node(a);
  const std::size_t v = add_node(b);
  const auto key = std::minmax(u, v);
  if (!edge_set_.insert(key).second)
    return false;
  edges_.emplace_back(u, v);

  auto insert_sorted = [&](std::vector<std::size_t>& list, std::size_t node) {
    const auto pos = std::lower_bound(list.begin(), list.end(), node,
                                      [&](std::size_t x, std::size_t y) {
                                        return names_[x] < names_[y];
                                      });
    list.insert(pos, node);
  };
  insert_sorted(adjacency_[u], v);
  insert_sorted(adjacency_[v], u);
  return true;
}

std::optional<std::size_t> Graph::find(std::string_view id) const {
  if (auto it = index_.find(id); it != index_.end())
    return it->second;
  return std::nullopt;
}

bool Graph::adjacent(std::size_t a, std::size_t b) const {
  return edge_set_.contains(std::minmax(a, b));
}

GraphFormat format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return (ext == ".graphml" || ext == ".xml") ? GraphFormat::graphml : GraphFormat::edgelist;
}

namespace {

void add_checked_edge(LoadedGraph& out, const std::string& a, const std::string& b,
                      const std::string& where) {
  if (a == b) {
    out.graph.add_node(a);
    out.warnings.push_back(where + ": self-loop on '" + a + "' dropped");
    return;
  }
  out.graph.add_edge(a, b);
}

} // namespace

LoadedGraph parse_edgelist(std::istream& in, std::string_view source) {
  LoadedGraph out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty() || line.front() == '#')
      continue;
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError(where + ": expected 'nodeA<TAB>nodeB'");
    const auto end = line.find('\t', tab + 1);
    const std::string a = line.substr(0, tab);
    const std::string b = line.substr(tab + 1, end == std::string::npos ? end : end - tab - 1);
    if (a.empty() || b.empty())
      throw ParseError(where + ": empty node id");
    add_checked_edge(out, a, b, where);
  }
  return out;
}

LoadedGraph parse_graphml(std::istream& in, std::string_view source) {
  namespace pt = boost::property_tree;
  pt::ptree doc;
  try {
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(std::string(source) + ":" + std::to_string(e.line()) + ": " + e.message());
  }

  const auto root = doc.get_child_optional("graphml");
  if (!root)
    throw ParseError(std::string(source) + ": missing <graphml> root element");

  LoadedGraph out;
  std::size_t graphs = 0;
  for (const auto& [tag, graph] : *root) {
    if (tag != "graph")
      continue;
    ++graphs;
    std::size_t node_no = 0;
    for (const auto& [child_tag, child] : graph) {
      if (child_tag != "node")
        continue;
      ++node_no;
      const auto id = child.get_optional<std::string>("<xmlattr>.id");
      if (!id || id->empty())
        throw ParseError(std::string(source) + ": <node> #" + std::to_string(node_no) +
                         " has no id attribute");
      out.graph.add_node(*id);
    }
    std::size_t edge_no = 0;
    for (const auto& [child_tag, child] : graph) {
      if (child_tag != "edge")
        continue;
      ++edge_no;
      const std::string where = std::string(source) + ": <edge> #" + std::to_string(edge_no);
      const auto src = child.get_optional<std::string>("<xmlattr>.source");
      const auto dst = child.get_optional<std::string>("<xmlattr>.target");
      if (!src || !dst)
        throw ParseError(where + " lacks a source or target attribute");
      add_checked_edge(out, *src, *dst, where);
    }
  }
  if (graphs == 0)
    throw ParseError(std::string(source) + ": no <graph> element");
  return out;
}

LoadedGraph load_graph(const std::filesystem::path& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in)
    throw ParseError(path.string() + ": cannot open file");
  return format == GraphFormat::graphml ? parse_graphml(in, path.string())
                                        : parse_edgelist(in, path.string());
}

LoadedGraph load_graph(const std::filesystem::path& path) {
  return load_graph(path, format_from_path(path));
}

} // namespace ynbf::topology
