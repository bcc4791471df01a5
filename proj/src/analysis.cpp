#include "ynbf/analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ynbf::analysis {

namespace {

void check_shape(const FilterShape& shape) {
  if (shape.bits == 0)
    throw std::invalid_argument("filter shape: bits must be positive");
}

void check_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

Probability flagged(double value) {
  return {value, value < 0.0 ? Consistency::inconsistent_priors : Consistency::consistent};
}

} // namespace

double bit_zero_prob(const FilterShape& shape) {
  check_shape(shape);
  const double draws = static_cast<double>(shape.hashes) * static_cast<double>(shape.elements);
  // log1p keeps (1 - 1/m) accurate for large m.
  return std::exp(draws * std::log1p(-1.0 / static_cast<double>(shape.bits)));
}

double fp_prob_exact(const FilterShape& shape) {
  const double set = 1.0 - bit_zero_prob(shape);
  return std::pow(set, static_cast<double>(shape.hashes));
}

double fp_prob_approx(const FilterShape& shape) {
  check_shape(shape);
  const double load = static_cast<double>(shape.hashes) * static_cast<double>(shape.elements) /
                      static_cast<double>(shape.bits);
  return std::pow(-std::expm1(-load), static_cast<double>(shape.hashes));
}

double pr_positive(double pr_s, double f_s) {
  check_unit(pr_s, "Pr[S]");
  check_unit(f_s, "f_S");
  return pr_s + (1.0 - pr_s) * f_s;
}

double pr_false_positive(double pr_s, double f_s) {
  check_unit(pr_s, "Pr[S]");
  check_unit(f_s, "f_S");
  return (1.0 - pr_s) * f_s;
}

Probability pr_E(double pr_s, double f_s, double f_r, double pr_r) {
  check_unit(pr_s, "Pr[S]");
  check_unit(f_s, "f_S");
  check_unit(f_r, "f_R");
  check_unit(pr_r, "Pr[R]");
  return flagged((1.0 - pr_s) * f_s - (pr_s + (1.0 - pr_s) * f_s) * f_r - (1.0 - f_r) * pr_r);
}

Probability pr_E_given_not_S(double f_s, double f_r, double pr_r) {
  check_unit(f_s, "f_S");
  check_unit(f_r, "f_R");
  check_unit(pr_r, "Pr[R]");
  return flagged(f_s * (1.0 - f_r) - (1.0 - f_r) * pr_r);
}

double f_E_single_no_filter(std::size_t p, std::size_t q, std::size_t k, std::size_t k_prime,
                            std::size_t n, std::optional<std::size_t> no_filter_load) {
  if (p == 0 || q == 0)
    throw std::invalid_argument("f_E: p and q must be positive");
  const double f_s = fp_prob_approx({p, k, n});
  const double f_r = fp_prob_approx({q, k_prime, no_filter_load.value_or(n)});
  return f_s * (1.0 - f_r);
}

double expected_fp_count(std::size_t t_size, double f_p) {
  check_unit(f_p, "f_p");
  return static_cast<double>(t_size) * f_p;
}

} // namespace ynbf::analysis
