#include <doctest.h>

#include <set>
#include <sstream>
#include <stdexcept>

#include "ynbf/graph.hpp"
#include "ynbf/topology.hpp"

using namespace ynbf::topology;

namespace {

std::vector<std::string> ids(const std::vector<DirectedLink>& links) {
  std::vector<std::string> out;
  for (const auto& l : links) out.push_back(l.id());
  return out;
}

Graph from_edges(std::initializer_list<std::pair<const char*, const char*>> edges) {
  Graph g;
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

const std::string data_dir = YNBF_TEST_DATA;

} // namespace

TEST_CASE("edge list parsing") {
  std::istringstream in("a\tb\nb\tc");
  const auto loaded = parse_edgelist(in);
  CHECK(loaded.graph.node_count() == 3);
  CHECK(loaded.graph.edge_count() == 2);
  CHECK(loaded.warnings.empty());

  std::istringstream dup("# comment\n\na\tb\r\nb\ta\na\ta\n");
  const auto d = parse_edgelist(dup, "dup.tsv");
  CHECK(d.graph.edge_count() == 1);
  REQUIRE(d.warnings.size() == 1);
  CHECK(d.warnings[0].find("self-loop") != std::string::npos);

  std::istringstream bad("a\tb\nlonely\n");
  try {
    parse_edgelist(bad, "bad.tsv");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("bad.tsv:2") != std::string::npos);
  }
}

TEST_CASE("GraphML parsing") {
  std::istringstream one(R"(<graphml><graph><edge source="x" target="y"/></graph></graphml>)");
  const auto g = parse_graphml(one).graph;
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);

  const auto file = load_graph(data_dir + "/small.graphml");
  CHECK(file.graph.node_count() == 4);
  CHECK(file.graph.edge_count() == 4);
  CHECK(format_from_path("a/b.graphml") == GraphFormat::graphml);
  CHECK(format_from_path("a/b.xml") == GraphFormat::graphml);
  CHECK(format_from_path("a/b.tsv") == GraphFormat::edgelist);

  std::istringstream loop(R"(<graphml><graph><node id="a"/><edge source="a" target="a"/></graph></graphml>)");
  CHECK(parse_graphml(loop).warnings.size() == 1);

  std::istringstream junk("<graphml><graph>");
  CHECK_THROWS_AS(parse_graphml(junk, "junk.graphml"), ParseError);
  CHECK_THROWS_AS(load_graph(data_dir + "/broken.graphml"), ParseError);
  CHECK_THROWS_AS(load_graph(data_dir + "/missing.tsv"), ParseError);
}

TEST_CASE("long path selection") {
  CHECK(select_long_path(load_graph(data_dir + "/path4.tsv").graph) ==
        std::vector<std::string>{"a", "b", "c", "d"});
  const auto star = from_edges({{"c", "x"}, {"c", "y"}, {"c", "z"}});
  CHECK(select_long_path(star) == std::vector<std::string>{"x", "c", "y"});
  CHECK_THROWS_AS(select_long_path(Graph{}), std::invalid_argument);

  // The larger component wins over a long-named smaller one.
  auto split = from_edges({{"a", "b"}, {"p", "q"}, {"q", "r"}, {"r", "s"}});
  CHECK(select_long_path(split) == std::vector<std::string>{"p", "q", "r", "s"});
  CHECK(largest_component(split).size() == 4);

  const auto ring = ring_graph(10);
  CHECK(select_long_path(ring).size() == 6);
  const auto grid = grid_graph(3, 4);
  CHECK(select_long_path(grid).size() == 6);
}

TEST_CASE("link sets on a triangle") {
  const auto tri = load_graph(data_dir + "/triangle.tsv").graph;
  const std::vector<std::string> path{"a", "b", "c"};
  const auto with = derive_link_sets(tri, path);
  CHECK(ids(with.s_links) == std::vector<std::string>{"a->b", "b->c"});
  CHECK(ids(with.t_links) == std::vector<std::string>{"a->c", "b->a", "c->a", "c->b"});
  const auto without = derive_link_sets(tri, path, ReverseLinks::exclude);
  CHECK(ids(without.t_links) == std::vector<std::string>{"a->c", "c->a"});

  CHECK_THROWS_AS(derive_link_sets(tri, std::vector<std::string>{"a"}), std::invalid_argument);
  CHECK_THROWS_AS(derive_link_sets(tri, std::vector<std::string>{"a", "b", "a"}), std::invalid_argument);
  CHECK_THROWS_AS(derive_link_sets(tri, std::vector<std::string>{"a", "q"}), std::invalid_argument);
  const auto p4 = load_graph(data_dir + "/path4.tsv").graph;
  CHECK_THROWS_AS(derive_link_sets(p4, std::vector<std::string>{"a", "c"}), std::invalid_argument);
}

TEST_CASE("link sets through a star center") {
  const auto star = from_edges({{"c", "x"}, {"c", "y"}, {"c", "z"}, {"c", "w"}});
  const auto sets = derive_link_sets(star, std::vector<std::string>{"x", "c", "y"}, ReverseLinks::exclude);
  CHECK(ids(sets.t_links) == std::vector<std::string>{"c->w", "c->z"});
}

TEST_CASE("link sets are disjoint on random graphs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = random_geometric_graph(60, 0.2, seed);
    const auto path = select_long_path(g);
    for (auto mode : {ReverseLinks::include, ReverseLinks::exclude}) {
      const auto sets = derive_link_sets(g, path, mode);
      CHECK(sets.s_links.size() == path.size() - 1);
      std::set<DirectedLink> s(sets.s_links.begin(), sets.s_links.end());
      for (const auto& t : sets.t_links) CHECK_FALSE(s.contains(t));
    }
  }
}

TEST_CASE("isolated path has nothing to mistake") {
  const auto g = load_graph(data_dir + "/path4.tsv").graph;
  const auto exp = make_experiment(g, select_long_path(g), ReverseLinks::exclude);
  CHECK(exp.links.t_links.empty());
  auto small = exp;
  small.allocations = 50;
  const auto entry = run_topology_experiment(small, 1, "path4");
  CHECK(entry.fp_yesno_mean == 0.0);
  CHECK(entry.fp_bf_mean == 0.0);
  CHECK_FALSE(entry.ratio().has_value());
  const std::vector<TopologyEntry> one{entry};
  CHECK(aggregate_by_length(one).undefined_ratios == 1);
}

TEST_CASE("experiment invariants per allocation") {
  const auto g = grid_graph(6, 10);
  auto exp = make_experiment(g, select_long_path(g));
  exp.allocations = 300;
  const auto entry = run_topology_experiment(exp, 7, "grid");
  CHECK(entry.member_rejections == 0);
  REQUIRE(entry.yesno_counts.size() == 300);
  for (std::size_t a = 0; a < 300; ++a) CHECK(entry.yesno_counts[a] <= entry.yes_filter_counts[a]);
  CHECK(entry.rate_yesno() >= 0.0);
  CHECK(entry.rate_yesno() <= 1.0);
  CHECK(entry.rate_bf() <= 1.0);

  const auto again = run_topology_experiment(exp, 7, "grid");
  CHECK(again.yesno_counts == entry.yesno_counts);
  CHECK(again.bf_counts == entry.bf_counts);
  const auto other = run_topology_experiment(exp, 7, "grid-b");
  CHECK(other.bf_counts != entry.bf_counts);

  const std::vector<TopologyEntry> one{entry};
  const auto agg = aggregate_by_length(one);
  REQUIRE(agg.rows.size() == 1);
  CHECK(agg.rows[0].n == entry.path_len);
  CHECK(agg.rows[0].rate_yesno == entry.rate_yesno());
  CHECK(agg.rows[0].rate_bf == entry.rate_bf());
}

TEST_CASE("aggregation averages rates of equal lengths") {
  TopologyEntry a, b;
  a.path_len = b.path_len = 5;
  a.t_size = 10;
  b.t_size = 20;
  a.fp_yesno_mean = 1;
  a.fp_bf_mean = 2;
  b.fp_yesno_mean = 1;
  b.fp_bf_mean = 8;
  const std::vector<TopologyEntry> both{a, b};
  const auto agg = aggregate_by_length(both);
  REQUIRE(agg.rows.size() == 1);
  CHECK(agg.rows[0].rate_yesno == doctest::Approx((0.1 + 0.05) / 2));
  CHECK(agg.rows[0].rate_bf == doctest::Approx((0.2 + 0.4) / 2));
  CHECK(*agg.rows[0].ratio == doctest::Approx(0.075 / 0.3));
  CHECK_THROWS(aggregate_by_length(std::span<const TopologyEntry>{}));
}

TEST_CASE("synthetic corpus covers the path lengths") {
  const auto corpus = synthetic_corpus(1);
  std::set<std::size_t> lengths;
  for (const auto& named : corpus) lengths.insert(select_long_path(named.graph).size() - 1);
  for (std::size_t n = 5; n <= 35; ++n) CHECK(lengths.contains(n));
}
