#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "sepfp/algebra3.hpp"

namespace testgen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }
  int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

  sepfp::Vec3 vec(double lo = -1.0, double hi = 1.0) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }

  sepfp::Mat3 mat(double lo = -1.0, double hi = 1.0) {
    return sepfp::Mat3::from_rows(vec(lo, hi), vec(lo, hi), vec(lo, hi));
  }

  sepfp::Vec3 unit() {
    for (;;) {
      const sepfp::Vec3 v = vec();
      const double n = sepfp::norm(v);
      if (n > 0.1 && n <= 1.0) return v / n;
    }
  }

  sepfp::Mat3 rotation() {
    return sepfp::euler_rotation({uniform(-3.1, 3.1), uniform(-3.1, 3.1), uniform(0.1, 3.0)});
  }

 private:
  std::mt19937_64 rng_;
};

inline double mat_diff(const sepfp::Mat3& a, const sepfp::Mat3& b) { return sepfp::max_abs(a - b); }

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(1e-300, std::abs(want)); }

}  // namespace testgen
