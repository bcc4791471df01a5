#include "ynbf/yes_no_filter.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "ynbf/rng.hpp"

namespace ynbf {

void YesNoParams::validate() const {
  if (p == 0 || q == 0)
    throw std::invalid_argument("yes-no params: p and q must be positive");
  if (q >= p)
    throw std::invalid_argument("yes-no params: need q < p (q=" + std::to_string(q) +
                                ", p=" + std::to_string(p) + ")");
  if (k == 0)
    throw std::invalid_argument("yes-no params: k must be at least 1");
  if (r > 0 && k_prime == 0)
    throw std::invalid_argument("yes-no params: k_prime must be at least 1 when r > 0");
}

YesNoParams YesNoParams::with_total(std::size_t m, std::size_t p, std::size_t q, std::size_t r,
                                    std::size_t k, std::size_t k_prime) {
  YesNoParams params{p, q, r, k, k_prime, false};
  if (params.m() != m)
    throw std::invalid_argument("yes-no params: m=" + std::to_string(m) + " but p + q*r = " +
                                std::to_string(params.m()));
  params.validate();
  return params;
}

SketchHasher::SketchHasher(const YesNoParams& params, std::uint64_t seed, HashMode mode,
                           bool distinct)
    : yes_{params.k, params.p, seed, mode, distinct},
      no_{params.k_prime, params.q, derive_seed(seed, 0x6E6F), mode, distinct} {}

ElementSketch SketchHasher::sketch(ElementId element) const {
  return {yes_.vector(element), no_.vector(element)};
}

std::vector<ElementSketch> SketchHasher::sketch(std::span<const ElementId> elements) const {
  std::vector<ElementSketch> out;
  out.reserve(elements.size());
  for (ElementId e : elements)
    out.push_back(sketch(e));
  return out;
}

ElementSketch sketch(const YesNoParams& params, std::uint64_t seed, ElementId element) {
  return SketchHasher{params, seed}.sketch(element);
}

ElementSketch sketch_from_positions(const YesNoParams& params,
                                    std::span<const std::size_t> yes_positions,
                                    std::span<const std::size_t> no_positions) {
  ElementSketch s{BitVector(params.p), BitVector(params.q)};
  for (std::size_t pos : yes_positions)
    s.yes_part.set(pos);
  for (std::size_t pos : no_positions)
    s.no_part.set(pos);
  return s;
}

YesNoFilter::YesNoFilter(const YesNoParams& params)
    : YesNoFilter(params, BitVector(params.p),
                  std::vector<BitVector>(params.r, BitVector(params.q))) {}

YesNoFilter::YesNoFilter(const YesNoParams& params, BitVector yes_filter,
                         std::vector<BitVector> no_filters)
    : params_{params}, yes_{std::move(yes_filter)}, no_{std::move(no_filters)} {
  params_.validate();
  if (yes_.size() != params_.p || no_.size() != params_.r)
    throw IncompatibleFilters("YesNoFilter: parts do not match params");
  for (const BitVector& v : no_)
    if (v.size() != params_.q)
      throw IncompatibleFilters("YesNoFilter: no-filter length does not match q");
}

QueryResult YesNoFilter::query(const ElementSketch& element) const {
  if (!element.yes_part.is_subset_of(yes_))
    return QueryResult::negative_yes_stage;
  for (const BitVector& v : no_)
    if (element.no_part.is_subset_of(v))
      return QueryResult::negative_no_stage;
  return QueryResult::positive;
}

std::optional<std::size_t> first_fit_no_filter(std::span<const BitVector> no_filters,
                                               const BitVector& candidate,
                                               std::span<const ElementSketch> members,
                                               bool allow_false_negatives) {
  if (no_filters.empty())
    return std::nullopt;
  if (allow_false_negatives)
    return 0;
  for (std::size_t j = 0; j < no_filters.size(); ++j) {
    const BitVector merged = no_filters[j] | candidate;
    const bool covers_member = std::any_of(members.begin(), members.end(),
                                           [&](const ElementSketch& e) {
                                             return e.no_part.is_subset_of(merged);
                                           });
    if (!covers_member)
      return j;
  }
  return std::nullopt;
}

namespace {

void check_geometry(const YesNoParams& params, std::span<const ElementSketch> sketches) {
  for (const ElementSketch& s : sketches)
    if (s.yes_part.size() != params.p || s.no_part.size() != params.q)
      throw IncompatibleFilters("sketch geometry does not match params");
}

void require_set(std::span<const ElementId> ids, const char* name) {
  std::vector<ElementId> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument(std::string("build: duplicate element in ") + name);
}

} // namespace

BuildResult build(const YesNoParams& params, std::span<const ElementSketch> members,
                  std::span<const ElementSketch> candidates) {
  params.validate();
  check_geometry(params, members);
  check_geometry(params, candidates);

  BitVector yes(params.p);
  for (const ElementSketch& e : members)
    yes |= e.yes_part;

  std::vector<BitVector> no(params.r, BitVector(params.q));
  ConstructionReport report;
  report.n = members.size();
  report.t = candidates.size();
  report.per_no_filter_load.assign(params.r, 0);

  std::vector<std::size_t> false_positives;
  std::vector<std::size_t> stored;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!candidates[i].yes_part.is_subset_of(yes))
      continue;
    false_positives.push_back(i);
    const auto slot = first_fit_no_filter(no, candidates[i].no_part, members,
                                          params.allow_false_negatives);
    if (!slot)
      continue;
    no[*slot] |= candidates[i].no_part;
    ++report.per_no_filter_load[*slot];
    stored.push_back(i);
  }

  report.f_count = false_positives.size();
  report.r_count = stored.size();
  report.unmitigated = report.f_count - report.r_count;
  return {YesNoFilter{params, std::move(yes), std::move(no)}, std::move(report),
          std::move(false_positives), std::move(stored)};
}

BuildResult build(const YesNoParams& params, const SketchHasher& hasher,
                  std::span<const ElementId> members, std::span<const ElementId> candidates) {
  require_set(members, "S");
  require_set(candidates, "T");
  std::vector<ElementId> sorted_members(members.begin(), members.end());
  std::sort(sorted_members.begin(), sorted_members.end());
  for (ElementId t : candidates)
    if (std::binary_search(sorted_members.begin(), sorted_members.end(), t))
      throw std::invalid_argument("build: S and T must be disjoint (element " +
                                  std::to_string(t) + " is in both)");
  const auto s = hasher.sketch(members);
  const auto t = hasher.sketch(candidates);
  return build(params, s, t);
}

Classification classify(const YesNoFilter& filter, std::span<const ElementSketch> members,
                        std::span<const ElementSketch> candidates) {
  Classification out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (filter.query(members[i]) == QueryResult::positive)
      out.true_positives.push_back(i);
    else
      out.false_negatives.push_back(i);
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    switch (filter.query(candidates[i])) {
    case QueryResult::negative_yes_stage:
      out.yes_stage_negatives.push_back(i);
      break;
    case QueryResult::negative_no_stage:
      out.no_stage_rejections.push_back(i);
      break;
    case QueryResult::positive:
      out.residual_false_positives.push_back(i);
      break;
    }
  }
  return out;
}

Classification classify(const YesNoFilter& filter, const SketchHasher& hasher,
                        std::span<const ElementId> members,
                        std::span<const ElementId> candidates) {
  const auto s = hasher.sketch(members);
  const auto t = hasher.sketch(candidates);
  return classify(filter, s, t);
}

std::size_t count_positives(const YesNoFilter& filter,
                            std::span<const ElementSketch> candidates) {
  return static_cast<std::size_t>(
      std::count_if(candidates.begin(), candidates.end(),
                    [&](const ElementSketch& e) { return filter.contains(e); }));
}

BitVector serialize(const YesNoFilter& filter) {
  const YesNoParams& params = filter.params();
  BitVector out(params.m());
  for (std::size_t i = 0; i < params.p; ++i)
    if (filter.yes_filter().test(i))
      out.set(i);
  for (std::size_t j = 0; j < params.r; ++j)
    for (std::size_t i = 0; i < params.q; ++i)
      if (filter.no_filters()[j].test(i))
        out.set(params.p + j * params.q + i);
  return out;
}

YesNoFilter deserialize(const YesNoParams& params, const BitVector& bits) {
  params.validate();
  if (bits.size() != params.m())
    throw IncompatibleFilters("deserialize: expected " + std::to_string(params.m()) +
                              " bits, got " + std::to_string(bits.size()));
  BitVector yes(params.p);
  for (std::size_t i = 0; i < params.p; ++i)
    if (bits.test(i))
      yes.set(i);
  std::vector<BitVector> no(params.r, BitVector(params.q));
  for (std::size_t j = 0; j < params.r; ++j)
    for (std::size_t i = 0; i < params.q; ++i)
      if (bits.test(params.p + j * params.q + i))
        no[j].set(i);
  return YesNoFilter{params, std::move(yes), std::move(no)};
}

} // namespace ynbf
