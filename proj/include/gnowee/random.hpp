#ifndef GNOWEE_RANDOM_HPP
#define GNOWEE_RANDOM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "gnowee/errors.hpp"

namespace gnowee {

// Abstract stream of randomness. Every stochastic routine in the library is
// parameterized on this so tests can inject scripted draws and forced steps.
class RandomSource {
public:
  virtual ~RandomSource() = default;

  // Uniform double in [0, 1).
  virtual double uniform01() = 0;
  // Standard normal draw.
  virtual double normal() = 0;

  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  // Uniform index in [0, n).
  std::size_t index(std::size_t n) {
    if (n == 0) throw InvalidArgument("index: empty range");
    auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
    return std::min(i, n - 1);
  }

  bool coin() { return uniform01() < 0.5; }

  // k distinct indices from [0, n), in draw order (partial Fisher-Yates).
  std::vector<std::size_t> sample_without_replacement(std::size_t k, std::size_t n) {
    if (k > n) throw InvalidArgument("sample_without_replacement: k > n");
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    std::vector<std::size_t> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = i + index(n - i);
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    shuffle(p);
    return p;
  }
};

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic, splittable stream: mt19937_64 core, splitmix64 seeding,
// Box-Muller normals. Avoids std::*_distribution so that draw sequences are
// identical across standard library implementations.
class Mt19937Stream final : public RandomSource {
public:
  explicit Mt19937Stream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  double uniform01() override {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal() override {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  // Independent stream derived from (seed, index); used for per-trial streams.
  static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(base ^ splitmix64(index * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
  }

  Mt19937Stream split(std::uint64_t index) const {
    return Mt19937Stream(derive_seed(seed_, index));
  }

  std::uint64_t seed() const { return seed_; }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace gnowee

#endif  // GNOWEE_RANDOM_HPP
