#include "ynbf/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>

#include "ynbf/analysis.hpp"
#include "ynbf/parallel.hpp"
#include "ynbf/rng.hpp"

namespace ynbf::simulate {

std::string_view to_string(SweptVariable v) {
  switch (v) {
  case SweptVariable::k: return "k";
  case SweptVariable::k_prime: return "k_prime";
  case SweptVariable::n: return "n";
  case SweptVariable::q: return "q";
  case SweptVariable::r_fixed_p: return "r_fixed_p";
  case SweptVariable::r_fixed_m: return "r_fixed_m";
  }
  return "?";
}

TrialOutcome run_trial(const YesNoParams& params, std::size_t n, std::size_t t,
                       std::uint64_t trial_seed) {
  params.validate();
  SplitMix64 member_rng{derive_seed(trial_seed, 1)};
  SplitMix64 other_rng{derive_seed(trial_seed, 2)};

  std::unordered_set<ElementId> seen;
  seen.reserve(2 * (n + t));
  std::vector<ElementId> members;
  members.reserve(n);
  while (members.size() < n)
    if (const ElementId e = member_rng(); seen.insert(e).second)
      members.push_back(e);
  std::vector<ElementId> others;
  others.reserve(t);
  while (others.size() < t)
    if (const ElementId e = other_rng(); seen.insert(e).second)
      others.push_back(e);

  const SketchHasher hasher{params, derive_seed(trial_seed, 3)};
  const auto s = hasher.sketch(members);
  const auto u = hasher.sketch(others);
  const BuildResult built = build(params, s, u);

  TrialOutcome out;
  out.yes_no_fp = count_positives(built.filter, u);
  out.yes_filter_fp = built.report.f_count;
  out.false_negatives = s.size() - count_positives(built.filter, s);
  return out;
}

Summary summarize(std::span<const double> samples) {
  Summary s;
  if (samples.empty())
    return s;
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto count = static_cast<double>(sorted.size());

  double sum = 0;
  for (double x : sorted)
    sum += x;
  s.mean = sum / count;
  if (sorted.size() > 1) {
    double ss = 0;
    for (double x : sorted)
      ss += (x - s.mean) * (x - s.mean);
    s.std_dev = std::sqrt(ss / (count - 1));
  }

  auto quantile = [&](double prob) {
    const double h = (count - 1) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
  };
  s.min = sorted.front();
  s.q25 = quantile(0.25);
  s.median = quantile(0.5);
  s.q75 = quantile(0.75);
  s.max = sorted.back();
  return s;
}

std::pair<YesNoParams, std::size_t> point_params(const SweepConfig& config, long value) {
  if (value < 0)
    throw std::invalid_argument("swept value must be non-negative");
  const auto v = static_cast<std::size_t>(value);
  YesNoParams params = config.base;
  std::size_t n = config.n;
  const std::size_t total = config.base.m();

  auto shrink_yes_filter = [&] {
    if (params.q * params.r >= total)
      throw std::invalid_argument("p = m - q*r would be non-positive (m=" +
                                  std::to_string(total) + ")");
    params.p = total - params.q * params.r;
  };

  switch (config.swept) {
  case SweptVariable::k: params.k = v; break;
  case SweptVariable::k_prime: params.k_prime = v; break;
  case SweptVariable::n: n = v; break;
  case SweptVariable::q:
    params.q = v;
    if (config.q_geometry == Geometry::fixed_m)
      shrink_yes_filter();
    break;
  case SweptVariable::r_fixed_p: params.r = v; break;
  case SweptVariable::r_fixed_m:
    params.r = v;
    shrink_yes_filter();
    break;
  }
  params.validate();
  return {params, n};
}

SweepResult sweep(const SweepConfig& config) {
  if (config.trials == 0)
    throw std::invalid_argument("sweep: trials must be at least 1");
  if (config.first > config.last)
    throw std::invalid_argument("sweep: empty range");

  SweepResult result;
  result.swept = config.swept;
  for (long value = config.first; value <= config.last; ++value) {
    SweepPoint point;
    point.value = value;
    try {
      std::tie(point.params, point.n) = point_params(config, value);
    } catch (const std::invalid_argument& e) {
      point.error = e.what();
      result.points.push_back(std::move(point));
      continue;
    }

    std::vector<TrialOutcome> outcomes(config.trials);
    parallel_for(
        config.trials,
        [&](std::size_t i) {
          outcomes[i] = run_trial(point.params, point.n, config.t, derive_seed(config.seed, i));
        },
        config.threads);

    std::vector<double> fp(config.trials);
    double yes_filter_sum = 0;
    for (std::size_t i = 0; i < config.trials; ++i) {
      fp[i] = static_cast<double>(outcomes[i].yes_no_fp);
      yes_filter_sum += static_cast<double>(outcomes[i].yes_filter_fp);
      point.false_negatives += outcomes[i].false_negatives;
    }
    point.fp = summarize(fp);
    point.mean_yes_filter_fp = yes_filter_sum / static_cast<double>(config.trials);
    point.k_bf = config.k_bf.value_or(point.params.k);
    point.baseline_bf_m = analysis::expected_fp_count(
        config.t, analysis::fp_prob_exact({point.params.m(), point.k_bf, point.n}));
    point.baseline_bf_p = analysis::expected_fp_count(
        config.t, analysis::fp_prob_exact({point.params.p, point.params.k, point.n}));
    result.points.push_back(std::move(point));
  }
  return result;
}

namespace {

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

} // namespace

void write_csv(std::ostream& out, const SweepResult& result) {
  out << sweep_csv_header << '\n';
  const std::string_view name = to_string(result.swept);
  for (const SweepPoint& p : result.points) {
    out << name << ',' << p.value << ',';
    if (p.error) {
      std::string msg = *p.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      out << ",,,,,,,,," << msg << '\n';
      continue;
    }
    out << fixed6(p.fp.mean) << ',' << fixed6(p.fp.std_dev) << ',' << fixed6(p.fp.min) << ','
        << fixed6(p.fp.q25) << ',' << fixed6(p.fp.median) << ',' << fixed6(p.fp.q75) << ','
        << fixed6(p.fp.max) << ',' << fixed6(p.baseline_bf_m) << ',' << fixed6(p.baseline_bf_p)
        << ",\n";
  }
}

} // namespace ynbf::simulate
