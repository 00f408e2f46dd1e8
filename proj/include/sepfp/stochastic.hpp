#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sepfp/algebra3.hpp"
#include "sepfp/drift.hpp"

namespace sepfp {

/// Mean and covariance of a Gaussian ensemble.
struct MomentState {
  Vec3 mean;
  Mat3 covariance;
};

struct Ensemble {
  std::vector<Vec3> particles;
  double tau = 0.0;
  std::uint64_t seed = 0;
};

/// Largest Euler-Maruyama step accepted by simulate: 0.01 / (1 + |M|_F).
double max_time_step(const DriftSpec& spec);

/// Euler-Maruyama paths of dX = -(M X + v) dtau + sqrt(2) dW from X(0) ~ N(init).
/// Particle i draws from its own generator seeded by (seed, i), so results do
/// not depend on n. Steps are shortened uniformly to land on tau_end.
/// Throws std::invalid_argument if dt exceeds max_time_step or n == 0.
Ensemble simulate(const DriftSpec& spec, const MomentState& init, double tau_end, double dt, std::size_t n,
                  std::uint64_t seed);

/// n independent draws from the exact Gaussian law at tau.
Ensemble sample_exact(const DriftSpec& spec, const MomentState& init, double tau, std::size_t n,
                      std::uint64_t seed);

/// m' = -M m - v, S' = -M S - S M^T + 2 I. The mean is closed form, the
/// covariance is integrated with an adaptive Dormand-Prince pair at 1e-13.
MomentState moment_flow(const DriftSpec& spec, const MomentState& init, double tau);

/// Sample moments (covariance with divisor n - 1).
MomentState sample_moments(const Ensemble& e);

struct MomentComparison {
  Vec3 z_mean;
  Mat3 z_covariance;  ///< symmetric
  double max_abs_z = 0.0;
  bool degenerate = false;  ///< some standard error was zero
  bool pass = false;        ///< all |z| <= bound and not degenerate
  double bound = 4.0;
};

/// z-scores of the ensemble's sample mean and covariance against `reference`,
/// with standard errors estimated from the ensemble. Requires n >= 1000.
MomentComparison compare(const Ensemble& ensemble, const MomentState& reference, double bound = 4.0);

/// Two-sample z-scores between the moments of two ensembles.
MomentComparison compare(const Ensemble& a, const Ensemble& b, double bound = 4.0);

}  // namespace sepfp
