#include "ynbf/hash_family.hpp"

#include <algorithm>
#include <stdexcept>

#include "ynbf/rng.hpp"

namespace ynbf {

HashFamily::HashFamily(std::size_t count, std::size_t range, std::uint64_t seed, HashMode mode,
                       bool distinct)
    : count_{count}, range_{range}, seed_{seed}, mode_{mode}, distinct_{distinct} {
  if (range == 0)
    throw std::invalid_argument("HashFamily: range must be positive");
  if (distinct && count > range)
    throw std::invalid_argument("HashFamily: cannot draw more distinct positions than range");
}

namespace {

// Feeds candidate positions to `accept` until it reports `count` acceptances.
template <class Accept>
void generate(const HashFamily& family, std::uint64_t key, Accept&& accept) {
  const std::size_t count = family.count();
  const std::size_t range = family.range();
  std::size_t accepted = 0;

  if (family.mode() == HashMode::random_allocation) {
    SplitMix64 rng{derive_seed(family.seed(), key)};
    while (accepted < count)
      accepted += accept(static_cast<std::size_t>(rng.below(range)));
    return;
  }

  const std::uint64_t h1 = mix64(key ^ family.seed());
  const std::uint64_t h2 = mix64(h1 + 0x9E3779B97F4A7C15ULL) | 1U;
  // Repeats under `distinct` keep stepping i; past the cap a keyed
  // generator fills the remaining slots.
  const std::uint64_t cap = 4 * static_cast<std::uint64_t>(count) + 16;
  for (std::uint64_t i = 0; accepted < count && i < cap; ++i)
    accepted += accept(static_cast<std::size_t>((h1 + i * h2) % range));
  SplitMix64 fallback{h1};
  while (accepted < count)
    accepted += accept(static_cast<std::size_t>(fallback.below(range)));
}

} // namespace

std::vector<std::size_t> HashFamily::positions_from_key(std::uint64_t key) const {
  std::vector<std::size_t> out;
  out.reserve(count_);
  generate(*this, key, [&](std::size_t pos) -> std::size_t {
    if (distinct_ && std::find(out.begin(), out.end(), pos) != out.end())
      return 0;
    out.push_back(pos);
    return 1;
  });
  return out;
}

BitVector HashFamily::vector_from_key(std::uint64_t key) const {
  BitVector v(range_);
  generate(*this, key, [&](std::size_t pos) -> std::size_t {
    if (distinct_ && v.test(pos))
      return 0;
    v.set(pos);
    return 1;
  });
  return v;
}

std::vector<std::size_t> HashFamily::positions(ElementId element) const {
  return positions_from_key(element);
}

std::vector<std::size_t> HashFamily::positions(std::string_view bytes) const {
  return positions_from_key(fnv1a64(bytes));
}

BitVector HashFamily::vector(ElementId element) const { return vector_from_key(element); }

BitVector HashFamily::vector(std::string_view bytes) const {
  return vector_from_key(fnv1a64(bytes));
}

} // namespace ynbf
