#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ynbf/yes_no_filter.hpp"

namespace ynbf::simulate {

enum class SweptVariable { k, k_prime, n, q, r_fixed_p, r_fixed_m };

std::string_view to_string(SweptVariable v);

/// Which length stays fixed when q is swept: the yes-filter (m grows) or the
/// total (p shrinks).
enum class Geometry { fixed_p, fixed_m };

struct SweepConfig {
  YesNoParams base{};
  std::size_t n = 30;
  std::size_t t = 100;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  SweptVariable swept = SweptVariable::k;
  long first = 1;
  long last = 14;
  /// Hash count of the m-bit comparison filter; unset follows the
  /// yes-filter's k at each point.
  std::optional<std::size_t> k_bf;
  Geometry q_geometry = Geometry::fixed_m;
  /// 0 = hardware concurrency.
  std::size_t threads = 0;
};

struct TrialOutcome {
  std::size_t yes_no_fp = 0;     ///< |E|
  std::size_t yes_filter_fp = 0; ///< |F|, the yes-filter alone
  std::size_t false_negatives = 0;
};

/// One Monte-Carlo trial: n members and t non-members drawn as distinct
/// random 64-bit ids, hashed by random allocation, built and classified.
///
/// Members and non-members come from separate streams of `trial_seed`, so
/// the member set for n is a prefix of the one for n+1 and the non-members
/// do not depend on n.
TrialOutcome run_trial(const YesNoParams& params, std::size_t n, std::size_t t,
                       std::uint64_t trial_seed);

struct Summary {
  double mean = 0;
  double std_dev = 0; ///< sample standard deviation
  double min = 0;
  double q25 = 0;
  double median = 0;
  double q75 = 0;
  double max = 0;
};

/// Mean, sample standard deviation and five-number summary (quantiles by
/// linear interpolation between order statistics).
Summary summarize(std::span<const double> samples);

struct SweepPoint {
  long value = 0;
  YesNoParams params{};
  std::size_t n = 0;
  /// Set when the swept value yields an invalid geometry; stats are empty.
  std::optional<std::string> error;
  Summary fp{};
  double mean_yes_filter_fp = 0;
  std::size_t false_negatives = 0;
  std::size_t k_bf = 0;
  double baseline_bf_m = 0; ///< analytic count for a BF of all m bits, k_bf hashes
  double baseline_bf_p = 0; ///< analytic count for a BF of the p yes bits, k hashes
};

struct SweepResult {
  SweptVariable swept = SweptVariable::k;
  std::vector<SweepPoint> points;
};

/// Parameters and member count for one swept value. Throws
/// std::invalid_argument for geometries that cannot be built.
std::pair<YesNoParams, std::size_t> point_params(const SweepConfig& config, long value);

/// Runs `trials` trials per swept value. Trial i uses the same seed at every
/// swept value, so neighbouring points share their random draws.
SweepResult sweep(const SweepConfig& config);

inline constexpr std::string_view sweep_csv_header =
    "swept,value,mean_fp,std_fp,min,q25,median,q75,max,baseline_bf_m,baseline_bf_p,error";

void write_csv(std::ostream& out, const SweepResult& result);

} // namespace ynbf::simulate
