#include "ynbf/bit_vector.hpp"

#include <bit>

namespace ynbf {

BitVector::BitVector(std::size_t length)
    : length_{length}, words_((length + word_bits - 1) / word_bits, word_type{0}) {
  if (length == 0)
    throw std::invalid_argument("BitVector: length must be positive");
}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i);
    else if (bits[i] != '0')
      throw std::invalid_argument("BitVector: expected only '0' and '1'");
  }
  return v;
}

bool BitVector::test(std::size_t pos) const {
  if (pos >= length_)
    throw std::out_of_range("BitVector: bit index out of range");
  return (words_[pos / word_bits] >> (pos % word_bits)) & 1U;
}

void BitVector::set(std::size_t pos) {
  if (pos >= length_)
    throw std::out_of_range("BitVector: bit index out of range");
  words_[pos / word_bits] |= word_type{1} << (pos % word_bits);
}

std::size_t BitVector::count() const noexcept {
  std::size_t total = 0;
  for (word_type w : words_)
    total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitVector::none() const noexcept {
  for (word_type w : words_)
    if (w != 0)
      return false;
  return true;
}

void BitVector::require_same_length(const BitVector& other) const {
  if (length_ != other.length_)
    throw IncompatibleFilters("bit vectors of length " + std::to_string(length_) + " and " +
                              std::to_string(other.length_) + " cannot be combined");
}

bool BitVector::is_subset_of(const BitVector& other) const {
  require_same_length(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & ~other.words_[i]) != 0)
      return false;
  return true;
}

BitVector& BitVector::operator|=(const BitVector& other) {
  require_same_length(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    words_[i] |= other.words_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  require_same_length(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    words_[i] &= other.words_[i];
  return *this;
}

std::string BitVector::to_string() const {
  std::string out(length_, '0');
  for (std::size_t i = 0; i < length_; ++i)
    if ((words_[i / word_bits] >> (i % word_bits)) & 1U)
      out[i] = '1';
  return out;
}

} // namespace ynbf
