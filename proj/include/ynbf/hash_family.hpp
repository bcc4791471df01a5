#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "ynbf/bit_vector.hpp"

namespace ynbf {

/// Opaque element identifier. Byte-string elements go through
/// HashFamily::positions(std::string_view).
using ElementId = std::uint64_t;

enum class HashMode {
  /// Positions are independent uniform draws from a generator keyed by
  /// (seed, element). Simulates "perfectly random" hash functions.
  random_allocation,
  /// Kirsch-Mitzenmacher double hashing, g_i = h1 + i*h2 mod range.
  double_hashing,
};

/// `count` hash functions onto [0, range).
///
/// For a fixed seed and element the produced positions are identical across
/// calls and across runs. Positions may repeat within one element unless
/// `distinct` is set, in which case repeats are redrawn.
class HashFamily {
public:
  HashFamily(std::size_t count, std::size_t range, std::uint64_t seed,
             HashMode mode = HashMode::random_allocation, bool distinct = false);

  std::size_t count() const noexcept { return count_; }
  std::size_t range() const noexcept { return range_; }
  std::uint64_t seed() const noexcept { return seed_; }
  HashMode mode() const noexcept { return mode_; }
  bool distinct() const noexcept { return distinct_; }

  std::vector<std::size_t> positions(ElementId element) const;
  std::vector<std::size_t> positions(std::string_view bytes) const;

  /// Bit vector of length range() with the element's positions set.
  BitVector vector(ElementId element) const;
  BitVector vector(std::string_view bytes) const;

  friend bool operator==(const HashFamily&, const HashFamily&) = default;

private:
  std::vector<std::size_t> positions_from_key(std::uint64_t key) const;
  BitVector vector_from_key(std::uint64_t key) const;

  std::size_t count_;
  std::size_t range_;
  std::uint64_t seed_;
  HashMode mode_;
  bool distinct_;
};

} // namespace ynbf
