#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fpcr {

/// Purpose a derived stream serves within one simulation replicate.
/// Keeping the roles disjoint makes every replicate reproducible in
/// isolation, which is what allows replicates to run concurrently.
enum class StreamRole : std::uint64_t {
  kGeneric = 0,
  kGaussianProcess = 1,
  kError = 2,
  kBootstrap = 3,
};

namespace detail {

// SplitMix64 finalizer; used to spread (seed, counter, role) into
// well-separated engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2)));
}

}  // namespace detail

/// Seeded random stream with distribution transforms implemented on top of
/// the raw engine output, so results are identical across standard library
/// implementations. std::mt19937_64 itself is fully specified; the
/// std::*_distribution adapters are not, hence the hand-rolled transforms.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(detail::splitmix64(seed)) {}

  /// Stream for (seed, counter, role); equal inputs give equal streams.
  static RandomStream derive(std::uint64_t seed, std::uint64_t counter, StreamRole role) {
    return RandomStream(derive_seed(seed, counter, role));
  }

  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter, StreamRole role) {
    return detail::mix(detail::mix(seed, counter), static_cast<std::uint64_t>(role));
  }

  /// Uniform on the open interval (0,1); never returns an endpoint, so
  /// inverse-CDF transforms stay finite.
  double uniform01() {
    const std::uint64_t bits = engine_() >> 11;  // 53 random bits
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; caches the paired deviate.
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
  }

  /// Uniform index in [0, n); fixed-point multiply keeps the mapping
  /// identical everywhere (bias is negligible for n << 2^64).
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace fpcr
