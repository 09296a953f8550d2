#ifndef WMSF_RNG_HPP
#define WMSF_RNG_HPP

#include <cstdint>

namespace wmsf {

/// Stateless counter-based draws: every value is a pure function of
/// (seed, domain, counter), so results do not depend on evaluation order.
namespace rng {

enum Domain : std::uint64_t {
  kEdgeOpen = 0x65646765ULL,
  kLabel = 0x6c61626cULL,
  kGnm = 0x676e6d00ULL,
  kTrial = 0x7472616cULL,
  kBasepoint = 0x62617365ULL,
};

constexpr std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t draw(std::uint64_t seed, std::uint64_t domain, std::uint64_t counter) {
  return mix(mix(seed ^ mix(domain)) + counter);
}

// Sequential view over one (seed, domain) stream.
class Stream {
 public:
  constexpr Stream(std::uint64_t seed, std::uint64_t domain) : seed_(seed), domain_(domain) {}

  constexpr std::uint64_t next() { return draw(seed_, domain_, counter_++); }

  /// Uniform in [0, n) by rejection; n > 0.
  constexpr std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t domain_;
  std::uint64_t counter_ = 0;
};

}  // namespace rng
}  // namespace wmsf

#endif
