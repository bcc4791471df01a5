#pragma once

#include <cstddef>
#include <string_view>

#include "ynbf/bit_vector.hpp"
#include "ynbf/hash_family.hpp"

namespace ynbf {

/// Classic Bloom filter of m = hash.range() bits and k = hash.count() hashes.
///
/// The set is the disjunction of its elements' vectors; membership is the
/// subset test of the element's vector against the set's vector.
class BloomFilter {
public:
  explicit BloomFilter(HashFamily hash);

  void insert(ElementId element);
  void insert(std::string_view element);

  bool contains(ElementId element) const;
  bool contains(std::string_view element) const;
  /// Membership of a precomputed element vector.
  bool contains(const BitVector& element_vector) const;

  const BitVector& bits() const noexcept { return bits_; }
  const HashFamily& hash() const noexcept { return hash_; }
  std::size_t size() const noexcept { return bits_.size(); }
  std::size_t inserted_count() const noexcept { return inserted_; }

  /// Bitwise OR of two filters built with the same hash family.
  friend BloomFilter union_of(const BloomFilter& a, const BloomFilter& b);

private:
  HashFamily hash_;
  BitVector bits_;
  std::size_t inserted_ = 0;
};

BloomFilter union_of(const BloomFilter& a, const BloomFilter& b);

} // namespace ynbf
