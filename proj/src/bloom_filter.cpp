#include "ynbf/bloom_filter.hpp"

#include <utility>

namespace ynbf {

BloomFilter::BloomFilter(HashFamily hash) : hash_{std::move(hash)}, bits_(hash_.range()) {}

void BloomFilter::insert(ElementId element) {
  bits_ |= hash_.vector(element);
  ++inserted_;
}

void BloomFilter::insert(std::string_view element) {
  bits_ |= hash_.vector(element);
  ++inserted_;
}

bool BloomFilter::contains(ElementId element) const {
  return hash_.vector(element).is_subset_of(bits_);
}

bool BloomFilter::contains(std::string_view element) const {
  return hash_.vector(element).is_subset_of(bits_);
}

bool BloomFilter::contains(const BitVector& element_vector) const {
  return element_vector.is_subset_of(bits_);
}

BloomFilter union_of(const BloomFilter& a, const BloomFilter& b) {
  if (!(a.hash_ == b.hash_))
    throw IncompatibleFilters("union_of: filters use different hash families");
  BloomFilter out = a;
  out.bits_ |= b.bits_;
  out.inserted_ = a.inserted_ + b.inserted_;
  return out;
}

} // namespace ynbf
