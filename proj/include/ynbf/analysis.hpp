#pragma once

#include <cstddef>
#include <optional>

namespace ynbf::analysis {

/// One Bloom filter's geometry: `bits` long, `hashes` hash functions,
/// `elements` inserted.
struct FilterShape {
  std::size_t bits = 1;
  std::size_t hashes = 1;
  std::size_t elements = 0;
};

/// Probability that a given bit is still zero: (1 - 1/m)^(k n).
double bit_zero_prob(const FilterShape& shape);

/// False-positive probability under the bit-independence assumption:
/// (1 - (1 - 1/m)^(k n))^k. This is a lower bound on the true value for k >= 2.
double fp_prob_exact(const FilterShape& shape);

/// (1 - e^(-k n / m))^k.
double fp_prob_approx(const FilterShape& shape);

/// Pr[positive] = Pr[S] + (1 - Pr[S]) f_S.
double pr_positive(double pr_s, double f_s);

/// Pr[F] = (1 - Pr[S]) f_S.
double pr_false_positive(double pr_s, double f_s);

enum class Consistency { consistent, inconsistent_priors };

struct Probability {
  double value = 0.0;
  /// A negative value means the priors cannot describe one population.
  /// The value is reported as computed, never clamped.
  Consistency status = Consistency::consistent;

  bool consistent() const noexcept { return status == Consistency::consistent; }
};

/// Residual false-positive probability of the yes-no filter:
///   Pr[E] = (1 - Pr[S]) f_S - (Pr[S] + (1 - Pr[S]) f_S) f_R - (1 - f_R) Pr[R].
Probability pr_E(double pr_s, double f_s, double f_r, double pr_r);

/// Pr[E | not in S] = f_S (1 - f_R) - (1 - f_R) Pr[R].
Probability pr_E_given_not_S(double f_s, double f_r, double pr_r);

/// Residual false-positive probability with a single no-filter:
///   (1 - e^(-k n / p))^k (1 - (1 - e^(-k' n_R / q))^k').
/// `no_filter_load` is n_R, the number of entries stored in the no-filter;
/// when absent the member count `n` is used for both filters.
double f_E_single_no_filter(std::size_t p, std::size_t q, std::size_t k, std::size_t k_prime,
                            std::size_t n, std::optional<std::size_t> no_filter_load = {});

/// Mean false-positive count over |T| queries, each with probability f_p.
double expected_fp_count(std::size_t t_size, double f_p);

} // namespace ynbf::analysis
