#pragma once

// Seeded generators for property tests. HSC_SEED overrides the default seed
// so a failing case can be replayed.

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "hsc/descriptors.hpp"

namespace hsc::testing {

inline std::uint64_t seed() {
  if (const char* s = std::getenv("HSC_SEED")) return std::strtoull(s, nullptr, 10);
  return 20261016;
}

class Rng {
 public:
  explicit Rng(std::uint64_t salt = 0) : engine_(seed() ^ (salt * 0x9E3779B97F4A7C15ull)) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return integer(0, 1) == 1; }

  // Compact bump a chi((x - c)/w) with 1 + f' >= 1 - slope_cap.
  FunctionDescriptor compact_bump(double center_range = 3.0, double slope_cap = 0.6) {
    const double w = uniform(0.6, 1.8);
    // max |chi'| = 2.1704
    const double amp_max = slope_cap * w / 2.1704;
    double a = uniform(0.1 * amp_max, amp_max);
    if (coin()) a = -a;
    return FunctionDescriptor::compact(a, uniform(-center_range, center_range), w);
  }

  std::vector<double> vector(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline std::string seed_note() { return "HSC_SEED=" + std::to_string(seed()); }

}  // namespace hsc::testing
