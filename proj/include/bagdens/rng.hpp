#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace bagdens {

//! 64-bit FNV-1a hash, used to turn text labels into stream keys.
inline std::uint64_t hash_label(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

//! Splittable random stream.
//!
//! A stream is identified by a 64-bit key. derive() maps (key, child index)
//! to a fresh key through a SplitMix64-style mixer, so a child stream depends
//! only on that pair of integers and never on how much the parent has been
//! consumed. Equal keys always produce identical sequences; distinct keys
//! produce statistically independent ones.
//!
//! The draw primitives are spelled out explicitly (53-bit uniforms, a
//! Box-Muller normal that never caches its second value) so that sequences
//! are reproducible across standard library implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : key_(key), engine_(mix(key ^ 0x6a09e667f3bcc908ULL)) {}

  //! Child stream for the given index, independent of draw history.
  RngStream derive(std::uint64_t child) const {
    return RngStream(mix(key_ + 0x9e3779b97f4a7c15ULL * (child + 1)));
  }

  std::uint64_t key() const { return key_; }

  std::uint64_t next_u64() { return engine_(); }

  //! Uniform draw on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  //! Uniform draw on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  //! Standard normal draw; consumes exactly two uniforms per call.
  double normal() {
    double u1 = 1.0 - uniform01();
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

 private:
  static constexpr double two_pi = 6.283185307179586476925286766559;

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::mt19937_64 engine_;
};

}  // namespace bagdens
