#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ctd::detail {

// Seeded RNG with fully specified sampling algorithms. The standard
// distributions and std::shuffle are implementation-defined, which would
// break cross-platform reproducibility of generated instances.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [lo, hi], Lemire reduction.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const auto wide = static_cast<unsigned __int128>(next_u64()) * span;
    return lo + static_cast<std::int64_t>(wide >> 64);
  }

  // Uniform double in [a, b) with 53-bit resolution.
  double uniform_real(double a, double b) {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return a + u * (b - a);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    // Fisher-Yates
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 engine_;
};

// FNV-1a, used to fingerprint networks for the route cache.
class Fnv1a {
 public:
  void feed(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  void feed_i64(std::int64_t v) { feed(&v, sizeof(v)); }
  void feed_f64(double v) { feed(&v, sizeof(v)); }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace ctd::detail
