// ynbf: analysis, parameter sweeps and topology experiments for yes-no
// Bloom filters. Exit codes: 0 success, 1 usage error, 2 input/data error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ynbf/analysis.hpp"
#include "ynbf/graph.hpp"
#include "ynbf/simulate.hpp"
#include "ynbf/topology.hpp"
#include "ynbf/yes_no_filter.hpp"

namespace {

constexpr int exit_usage = 1;
constexpr int exit_data = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

/// Writes to --output when given, stdout otherwise.
class Sink {
public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_)
        throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

// ---------------------------------------------------------------- analyze

struct AnalyzeOptions {
  std::size_t m = 256;
  std::size_t k = 6;
  std::size_t n = 30;
  std::size_t t = 100;
  std::size_t p = 160;
  std::size_t q = 32;
  std::size_t k_prime = 5;
  double pr_s = 0.0;
  double pr_r = 0.0;
  std::optional<double> f_r;
  std::optional<std::size_t> no_load;
  std::string output;
};

void run_analyze(const AnalyzeOptions& o) {
  using namespace ynbf::analysis;
  if (o.m == 0 || o.p == 0 || o.q == 0)
    throw UsageError("--m, --p and --q must be positive");

  const FilterShape shape{o.m, o.k, o.n};
  const double f_s = fp_prob_exact(shape);
  const double f_r = o.f_r ? *o.f_r : fp_prob_exact({o.q, o.k_prime, o.no_load.value_or(o.n)});
  if (!(f_r >= 0.0 && f_r <= 1.0))
    throw UsageError("--f-r must lie in [0, 1]");

  const Probability e = pr_E(o.pr_s, f_s, f_r, o.pr_r);
  const Probability e_not_s = pr_E_given_not_S(f_s, f_r, o.pr_r);
  auto status = [](const Probability& p) { return p.consistent() ? "OK" : "INCONSISTENT"; };

  Sink sink(o.output);
  std::ostream& out = sink.stream();
  out << "quantity,value,status\n";
  out << "bit_zero_prob," << fixed6(bit_zero_prob(shape)) << ",OK\n";
  out << "f_s_exact," << fixed6(f_s) << ",OK\n";
  out << "f_s_approx," << fixed6(fp_prob_approx(shape)) << ",OK\n";
  out << "pr_positive," << fixed6(pr_positive(o.pr_s, f_s)) << ",OK\n";
  out << "pr_false_positive," << fixed6(pr_false_positive(o.pr_s, f_s)) << ",OK\n";
  out << "f_r," << fixed6(f_r) << ",OK\n";
  out << "pr_E," << fixed6(e.value) << ',' << status(e) << '\n';
  out << "pr_E_given_not_S," << fixed6(e_not_s.value) << ',' << status(e_not_s) << '\n';
  out << "f_E_single_no_filter,"
      << fixed6(f_E_single_no_filter(o.p, o.q, o.k, o.k_prime, o.n, o.no_load)) << ",OK\n";
  out << "expected_fp_count," << fixed6(expected_fp_count(o.t, f_s)) << ",OK\n";
}

// ---------------------------------------------------------------- sweep

struct SweepOptions {
  std::string var = "k";
  std::string mode = "fixed_m";
  std::string range;
  std::size_t p = 160;
  std::size_t q = 32;
  std::size_t r = 3;
  std::size_t k = 4;
  std::size_t k_prime = 5;
  std::size_t n = 30;
  std::size_t t = 100;
  std::size_t trials = 10000;
  std::size_t k_bf = 0;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  std::string output;
};

std::pair<long, long> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw UsageError("--range must look like FIRST:LAST");
  try {
    std::size_t used = 0;
    const long first = std::stol(text.substr(0, colon), &used);
    if (used != colon)
      throw UsageError("bad --range start");
    const std::string tail = text.substr(colon + 1);
    const long last = std::stol(tail, &used);
    if (used != tail.size())
      throw UsageError("bad --range end");
    if (first > last)
      throw UsageError("--range is empty");
    return {first, last};
  } catch (const std::logic_error&) {
    throw UsageError("--range must look like FIRST:LAST");
  }
}

void run_sweep(const SweepOptions& o) {
  using namespace ynbf::simulate;
  SweepConfig config;
  config.base = ynbf::YesNoParams{o.p, o.q, o.r, o.k, o.k_prime, false};
  try {
    config.base.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  config.n = o.n;
  config.t = o.t;
  config.trials = o.trials;
  config.seed = o.seed;
  if (o.k_bf > 0)
    config.k_bf = o.k_bf;
  config.threads = o.threads;
  const bool fixed_m = o.mode == "fixed_m";
  config.q_geometry = fixed_m ? Geometry::fixed_m : Geometry::fixed_p;

  std::string default_range;
  if (o.var == "k") {
    config.swept = SweptVariable::k;
    default_range = "1:14";
  } else if (o.var == "k_prime") {
    config.swept = SweptVariable::k_prime;
    default_range = "1:14";
  } else if (o.var == "n") {
    config.swept = SweptVariable::n;
    default_range = "10:90";
  } else if (o.var == "q") {
    config.swept = SweptVariable::q;
    default_range = "10:59";
  } else {
    config.swept = fixed_m ? SweptVariable::r_fixed_m : SweptVariable::r_fixed_p;
    default_range = fixed_m ? "0:7" : "1:9";
  }
  std::tie(config.first, config.last) = parse_range(o.range.empty() ? default_range : o.range);

  const SweepResult result = sweep(config);
  Sink sink(o.output);
  write_csv(sink.stream(), result);
}

// ---------------------------------------------------------------- topology

struct TopologyOptions {
  std::vector<std::string> files;
  std::string format = "auto";
  std::size_t allocations = 1000;
  std::uint64_t seed = 1;
  std::vector<std::string> path;
  bool exclude_reverse = false;
  bool synthetic = false;
  std::size_t p = 192;
  std::size_t q = 32;
  std::size_t r = 2;
  std::size_t k = 4;
  std::size_t k_prime = 3;
  std::size_t k_bf = 6;
  std::string output;
  std::string aggregate_output;
};

int run_topology(const TopologyOptions& o) {
  using namespace ynbf::topology;
  if (o.files.empty() && !o.synthetic)
    throw UsageError("topology: give at least one file or --synthetic");
  if (!o.path.empty() && (o.files.size() != 1 || o.synthetic))
    throw UsageError("--path needs exactly one topology file");

  const ynbf::YesNoParams params{o.p, o.q, o.r, o.k, o.k_prime, false};
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const ReverseLinks reverse = o.exclude_reverse ? ReverseLinks::exclude : ReverseLinks::include;

  std::vector<NamedGraph> graphs;
  std::size_t failures = 0;
  for (const std::string& file : o.files) {
    try {
      LoadedGraph loaded =
          o.format == "auto"
              ? load_graph(file)
              : load_graph(file, o.format == "graphml" ? GraphFormat::graphml
                                                       : GraphFormat::edgelist);
      for (const std::string& w : loaded.warnings)
        std::cerr << "warning: " << w << '\n';
      graphs.push_back({std::filesystem::path(file).stem().string(), std::move(loaded.graph)});
    } catch (const ParseError& e) {
      std::cerr << "error: " << e.what() << '\n';
      ++failures;
    }
  }
  if (o.synthetic)
    for (NamedGraph& g : synthetic_corpus(o.seed))
      graphs.push_back(std::move(g));

  std::vector<TopologyEntry> entries;
  for (const NamedGraph& g : graphs) {
    try {
      std::vector<std::string> path = o.path.empty() ? select_long_path(g.graph) : o.path;
      PathExperiment exp = make_experiment(g.graph, std::move(path), reverse);
      exp.allocations = o.allocations;
      exp.params = params;
      exp.k_bf = o.k_bf;
      entries.push_back(run_topology_experiment(exp, o.seed, g.name));
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << g.name << ": " << e.what() << '\n';
      ++failures;
    }
  }
  if (entries.empty())
    return exit_data;

  Sink sink(o.output);
  write_topology_csv(sink.stream(), entries);
  const Aggregation agg = aggregate_by_length(entries);
  if (o.aggregate_output.empty()) {
    sink.stream() << '\n';
    write_aggregate_csv(sink.stream(), agg);
  } else {
    Sink agg_sink(o.aggregate_output);
    write_aggregate_csv(agg_sink.stream(), agg);
  }
  (void)failures;
  return 0;
}

// ---------------------------------------------------------------- demo

void run_demo(std::uint64_t seed) {
  using namespace ynbf;
  // 13-bit yes part, two 2-bit no parts, k=3, k'=1; positions printed 1-based.
  const YesNoParams params{13, 2, 2, 3, 1, false};
  const std::vector<std::size_t> yes{4, 1, 11};
  const std::vector<std::size_t> no{1};
  const ElementSketch e = sketch_from_positions(params, yes, no);
  std::cout << "element sketch (p=13, q=2, r=2, k=3, k'=1)\n"
            << "  yes part  " << e.yes_part.to_string() << "  (bits 2, 5, 12 of 1..13)\n"
            << "  no part   " << e.no_part.to_string() << "  (bit 2 of 1..2)\n"
            << "  encoded   " << e.yes_part.to_string() << e.no_part.to_string()
            << e.no_part.to_string() << "\n\n";

  const YesNoParams defaults{};
  const auto trial = simulate::run_trial(defaults, 30, 100, seed);
  std::cout << "one build with m=256 (p=160, q=32, r=3, k=4, k'=5), |S|=30, |T|=100\n"
            << "  yes-filter false positives  " << trial.yes_filter_fp << '\n'
            << "  yes-no false positives      " << trial.yes_no_fp << '\n'
            << "  false negatives             " << trial.false_negatives << '\n';
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Yes-no Bloom filter analysis and experiments"};
  app.require_subcommand(1);

  AnalyzeOptions ao;
  auto* analyze = app.add_subcommand("analyze", "Closed-form false-positive probabilities");
  analyze->add_option("--m", ao.m, "Bloom filter bits")->capture_default_str();
  analyze->add_option("--k", ao.k, "hash functions")->capture_default_str();
  analyze->add_option("--n", ao.n, "stored elements")->capture_default_str();
  analyze->add_option("--t", ao.t, "queried non-members |T|")->capture_default_str();
  analyze->add_option("--p", ao.p, "yes-filter bits for f_E")->capture_default_str();
  analyze->add_option("--q", ao.q, "no-filter bits")->capture_default_str();
  analyze->add_option("--k-prime", ao.k_prime, "no-filter hash functions")->capture_default_str();
  analyze->add_option("--pr-s", ao.pr_s, "prior Pr[S]")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  analyze->add_option("--pr-r", ao.pr_r, "prior Pr[R]")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  analyze->add_option("--f-r", ao.f_r, "no-filter FP probability (default: from --q, --k-prime, --no-load)");
  analyze->add_option("--no-load", ao.no_load, "entries stored in the no-filter (default: --n)");
  analyze->add_option("-o,--output", ao.output, "output file (default stdout)");

  SweepOptions so;
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo parameter sweep, CSV output");
  sweep->add_option("--var", so.var, "swept parameter")
      ->check(CLI::IsMember({"k", "k_prime", "n", "q", "r"}))
      ->capture_default_str();
  sweep->add_option("--mode", so.mode, "length held fixed when sweeping q or r")
      ->check(CLI::IsMember({"fixed_p", "fixed_m"}))
      ->capture_default_str();
  sweep->add_option("--range", so.range,
                    "FIRST:LAST (default k,k_prime 1:14; n 10:90; q 10:59; r 0:7 fixed_m, 1:9 fixed_p)");
  sweep->add_option("--p", so.p, "yes-filter bits")->capture_default_str();
  sweep->add_option("--q", so.q, "bits per no-filter")->capture_default_str();
  sweep->add_option("--r", so.r, "number of no-filters (m = p + q*r = 256)")->capture_default_str();
  sweep->add_option("--k", so.k, "yes-filter hash functions")->capture_default_str();
  sweep->add_option("--k-prime", so.k_prime, "no-filter hash functions")->capture_default_str();
  sweep->add_option("--n", so.n, "members |S|")->capture_default_str();
  sweep->add_option("--t", so.t, "queried non-members |T|")->capture_default_str();
  sweep->add_option("--trials", so.trials, "trials per point")->capture_default_str()->check(CLI::PositiveNumber);
  sweep->add_option("--k-bf", so.k_bf, "hash functions of the m-bit baseline filter, 0 = same as the yes-filter's k")->capture_default_str();
  sweep->add_option("--seed", so.seed, "master seed")->capture_default_str();
  sweep->add_option("--threads", so.threads, "worker threads, 0 = all cores")->capture_default_str();
  sweep->add_option("-o,--output", so.output, "output file (default stdout)");

  TopologyOptions to;
  auto* topology = app.add_subcommand("topology", "Forwarding-path experiment on topologies");
  topology->add_option("files,--files", to.files, "GraphML (.graphml/.xml) or tab-separated edge lists");
  topology->add_option("--format", to.format, "input format")
      ->check(CLI::IsMember({"auto", "graphml", "edgelist"}))
      ->capture_default_str();
  topology->add_option("--allocations", to.allocations, "random hash allocations per topology")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  topology->add_option("--seed", to.seed, "master seed")->capture_default_str();
  topology->add_option("--path", to.path, "explicit path a,b,c,... (single file only)")->delimiter(',');
  topology->add_flag("--exclude-reverse", to.exclude_reverse,
                     "leave links back along the path out of the non-member set");
  topology->add_flag("--synthetic", to.synthetic, "add the built-in grid/ring/geometric corpus");
  topology->add_option("--p", to.p, "yes-filter bits")->capture_default_str();
  topology->add_option("--q", to.q, "bits per no-filter")->capture_default_str();
  topology->add_option("--r", to.r, "number of no-filters (m = p + q*r = 256)")->capture_default_str();
  topology->add_option("--k", to.k, "yes-filter hash functions")->capture_default_str();
  topology->add_option("--k-prime", to.k_prime, "no-filter hash functions")->capture_default_str();
  topology->add_option("--k-bf", to.k_bf, "hash functions of the classic filter")->capture_default_str();
  topology->add_option("-o,--output", to.output, "per-topology CSV (default stdout)");
  topology->add_option("--aggregate-output", to.aggregate_output,
                       "per-length CSV (default: appended after a blank line)");

  std::uint64_t demo_seed = 1;
  auto* demo = app.add_subcommand("demo", "Worked example and one default build");
  demo->add_option("--seed", demo_seed, "seed of the default build")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*analyze)
      run_analyze(ao);
    else if (*sweep)
      run_sweep(so);
    else if (*topology)
      return run_topology(to);
    else if (*demo)
      run_demo(demo_seed);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_data;
  }
  return 0;
}
