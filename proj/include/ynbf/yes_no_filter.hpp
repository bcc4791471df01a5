#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ynbf/bit_vector.hpp"
#include "ynbf/hash_family.hpp"

namespace ynbf {

/// Geometry of a yes-no Bloom filter: a p-bit yes-filter followed by r
/// no-filters of q bits each, m = p + q*r bits in total.
struct YesNoParams {
  std::size_t p = 160;
  std::size_t q = 32;
  std::size_t r = 3;
  std::size_t k = 4;
  std::size_t k_prime = 5;
  /// Skip the member scan when placing false positives into no-filters.
  bool allow_false_negatives = false;

  std::size_t m() const noexcept { return p + q * r; }

  /// Throws std::invalid_argument unless q < p, k >= 1 and k_prime >= 1
  /// whenever r > 0.
  void validate() const;

  /// Builds params from a total length and checks m == p + q*r.
  static YesNoParams with_total(std::size_t m, std::size_t p, std::size_t q, std::size_t r,
                                std::size_t k, std::size_t k_prime);

  friend bool operator==(const YesNoParams&, const YesNoParams&) = default;
};

/// An element's representation: k bits in a p-bit yes part and k' bits in a
/// q-bit no part. The r-fold repetition of the no part is a layout concern of
/// the flat encoding only.
struct ElementSketch {
  BitVector yes_part;
  BitVector no_part;
};

/// The two hash families (yes and no) for one parameter set and seed.
class SketchHasher {
public:
  SketchHasher(const YesNoParams& params, std::uint64_t seed,
               HashMode mode = HashMode::random_allocation, bool distinct = false);

  ElementSketch sketch(ElementId element) const;
  std::vector<ElementSketch> sketch(std::span<const ElementId> elements) const;

  const HashFamily& yes_hash() const noexcept { return yes_; }
  const HashFamily& no_hash() const noexcept { return no_; }

private:
  HashFamily yes_;
  HashFamily no_;
};

ElementSketch sketch(const YesNoParams& params, std::uint64_t seed, ElementId element);

/// Sketch from explicit 0-based positions, bypassing hashing.
ElementSketch sketch_from_positions(const YesNoParams& params,
                                    std::span<const std::size_t> yes_positions,
                                    std::span<const std::size_t> no_positions);

enum class QueryResult {
  positive,
  negative_yes_stage,
  negative_no_stage,
};

class YesNoFilter {
public:
  /// Empty filter: all bits zero.
  explicit YesNoFilter(const YesNoParams& params);
  YesNoFilter(const YesNoParams& params, BitVector yes_filter, std::vector<BitVector> no_filters);

  const YesNoParams& params() const noexcept { return params_; }
  const BitVector& yes_filter() const noexcept { return yes_; }
  const std::vector<BitVector>& no_filters() const noexcept { return no_; }

  /// Yes stage first; an element passing it is rejected if its no part is
  /// covered by any no-filter.
  QueryResult query(const ElementSketch& element) const;
  bool contains(const ElementSketch& element) const {
    return query(element) == QueryResult::positive;
  }

private:
  YesNoParams params_;
  BitVector yes_;
  std::vector<BitVector> no_;
};

struct ConstructionReport {
  std::size_t n = 0;           ///< |S|
  std::size_t t = 0;           ///< |T|
  std::size_t f_count = 0;     ///< |F|, false positives of the yes-filter within T
  std::size_t r_count = 0;     ///< |R|, false positives placed in a no-filter
  std::size_t unmitigated = 0; ///< |F| - |R|
  std::vector<std::size_t> per_no_filter_load;
};

struct BuildResult {
  YesNoFilter filter;
  ConstructionReport report;
  /// Indices into T of the yes-filter false positives, in T order.
  std::vector<std::size_t> false_positives;
  /// Indices into T of the stored false positives (R), in T order.
  std::vector<std::size_t> stored;
};

/// First-fit placement of one false positive's no part.
///
/// Returns the lowest j such that (no_filters[j] | candidate) covers no
/// member's no part, or std::nullopt if every no-filter would create a false
/// negative. With `allow_false_negatives` the member scan is skipped and j=0
/// is returned whenever r > 0.
std::optional<std::size_t> first_fit_no_filter(std::span<const BitVector> no_filters,
                                               const BitVector& candidate,
                                               std::span<const ElementSketch> members,
                                               bool allow_false_negatives);

/// Builds the filter for members S against the known query set T.
BuildResult build(const YesNoParams& params, std::span<const ElementSketch> members,
                  std::span<const ElementSketch> candidates);

/// Sketches S and T with `hasher` and builds. Throws std::invalid_argument if
/// S and T intersect or either contains duplicates.
BuildResult build(const YesNoParams& params, const SketchHasher& hasher,
                  std::span<const ElementId> members, std::span<const ElementId> candidates);

/// Exhaustive, disjoint outcome of querying every element of S and T.
/// Indices refer to positions in the spans passed to classify().
struct Classification {
  std::vector<std::size_t> true_positives;           ///< S, positive
  std::vector<std::size_t> false_negatives;          ///< S, rejected at either stage
  std::vector<std::size_t> yes_stage_negatives;      ///< T, rejected by the yes-filter
  std::vector<std::size_t> no_stage_rejections;      ///< T, rejected by a no-filter
  std::vector<std::size_t> residual_false_positives; ///< T, positive: the set E
};

Classification classify(const YesNoFilter& filter, std::span<const ElementSketch> members,
                        std::span<const ElementSketch> candidates);

Classification classify(const YesNoFilter& filter, const SketchHasher& hasher,
                        std::span<const ElementId> members,
                        std::span<const ElementId> candidates);

/// Number of positives among `candidates` (|E| when they are T).
std::size_t count_positives(const YesNoFilter& filter, std::span<const ElementSketch> candidates);

/// Flat m-bit encoding: yes-filter bits, then no-filters 0..r-1.
BitVector serialize(const YesNoFilter& filter);
YesNoFilter deserialize(const YesNoParams& params, const BitVector& bits);

} // namespace ynbf
