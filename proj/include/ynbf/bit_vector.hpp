#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/container/small_vector.hpp>

namespace ynbf {

/// Thrown when two filters or vectors of different geometry are combined.
class IncompatibleFilters : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Fixed-length array of bits, all zero on construction.
///
/// The length never changes after construction. Bits are addressed 0-based.
/// Vectors up to 256 bits live inline without a heap allocation, which covers
/// every filter in the default experiment geometry.
class BitVector {
public:
  using word_type = std::uint64_t;
  static constexpr std::size_t word_bits = 64;

  explicit BitVector(std::size_t length);

  /// Parses a string of '0'/'1' characters, bit 0 first.
  static BitVector from_string(std::string_view bits);

  std::size_t size() const noexcept { return length_; }

  bool test(std::size_t pos) const;
  void set(std::size_t pos);

  std::size_t count() const noexcept;
  bool none() const noexcept;

  /// True iff every set bit of *this is also set in `other`.
  bool is_subset_of(const BitVector& other) const;

  BitVector& operator|=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);

  friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

  friend bool operator==(const BitVector& a, const BitVector& b) noexcept {
    return a.length_ == b.length_ && a.words_ == b.words_;
  }

  /// '0'/'1' string, bit 0 first.
  std::string to_string() const;

private:
  void require_same_length(const BitVector& other) const;

  std::size_t length_;
  boost::container::small_vector<word_type, 4> words_;
};

/// Subset order on bit vectors: `a` <= `b` bitwise, i.e. (a AND b) == a.
/// Throws IncompatibleFilters on a length mismatch.
inline bool is_subset(const BitVector& a, const BitVector& b) { return a.is_subset_of(b); }

} // namespace ynbf
