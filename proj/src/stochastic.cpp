#include "sepfp/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>
#include <boost/random/normal_distribution.hpp>

namespace sepfp {

namespace odeint = boost::numeric::odeint;

namespace {

using Engine = std::mt19937_64;

Engine particle_engine(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(std::uint64_t(index) >> 32)};
  return Engine(seq);
}

// L with L L^T = S for symmetric positive semidefinite S.
Mat3 psd_root(const Mat3& s) {
  const SymmetricEigen eig = symmetric_eigen(0.5 * (s + transpose(s)));
  Vec3 root;
  for (int i = 0; i < 3; ++i) {
    if (eig.values[i] < -1e-10 * std::max(1.0, norm(s))) {
      throw std::invalid_argument("covariance is not positive semidefinite");
    }
    root[i] = std::sqrt(std::max(eig.values[i], 0.0));
  }
  return eig.vectors * Mat3::diag(root);
}

Vec3 gaussian(Engine& engine) {
  boost::random::normal_distribution<double> normal;
  return {normal(engine), normal(engine), normal(engine)};
}

struct SampleStats {
  std::size_t n;
  Vec3 mean;
  Mat3 cov;
  Vec3 se_mean;
  Mat3 se_cov;
};

SampleStats stats_of(const Ensemble& e) {
  const std::size_t n = e.particles.size();
  if (n < 2) throw std::invalid_argument("ensemble needs at least two particles");
  SampleStats s{n, {}, {}, {}, {}};
  for (const Vec3& x : e.particles) s.mean = s.mean + x;
  s.mean = s.mean / double(n);
  Mat3 sum, sum_sq;
  for (const Vec3& x : e.particles) {
    const Vec3 d = x - s.mean;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        const double p = d[i] * d[j];
        sum(i, j) += p;
        sum_sq(i, j) += p * p;
      }
  }
  const double dn = double(n);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      s.cov(i, j) = sum(i, j) / (dn - 1.0);
      const double mean_p = sum(i, j) / dn;
      const double var_p = std::max(sum_sq(i, j) / dn - mean_p * mean_p, 0.0) * dn / (dn - 1.0);
      s.se_cov(i, j) = std::sqrt(var_p / dn);
    }
  for (std::size_t i = 0; i < 3; ++i) s.se_mean[i] = std::sqrt(s.cov(i, i) / dn);
  return s;
}

void require_size(const Ensemble& e) {
  if (e.particles.size() < 1000) throw std::invalid_argument("compare: ensemble needs n >= 1000");
}

MomentComparison finish(MomentComparison c) {
  for (std::size_t i = 0; i < 3; ++i) {
    c.max_abs_z = std::max(c.max_abs_z, std::abs(c.z_mean[i]));
    for (std::size_t j = 0; j < 3; ++j) c.max_abs_z = std::max(c.max_abs_z, std::abs(c.z_covariance(i, j)));
  }
  c.pass = !c.degenerate && c.max_abs_z <= c.bound;
  return c;
}

double z_score(double diff, double se, bool& degenerate) {
  if (!(se > 0.0)) {
    degenerate = true;
    return 0.0;
  }
  return diff / se;
}

}  // namespace

double max_time_step(const DriftSpec& spec) { return 0.01 / (1.0 + norm(spec.m)); }

Ensemble simulate(const DriftSpec& spec, const MomentState& init, double tau_end, double dt, std::size_t n,
                  std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("simulate: n must be positive");
  if (!(dt > 0.0) || dt > max_time_step(spec)) {
    throw std::invalid_argument("simulate: dt must lie in (0, 0.01 / (1 + |M|)]");
  }
  if (!(tau_end >= 0.0)) throw std::invalid_argument("simulate: tau_end must be non-negative");
  const auto steps = static_cast<std::size_t>(std::ceil(tau_end / dt));
  const double step = steps == 0 ? 0.0 : tau_end / double(steps);
  const double noise = std::sqrt(2.0 * step);
  const Mat3 root = psd_root(init.covariance);

  Ensemble out{std::vector<Vec3>(n), tau_end, seed};
  for (std::size_t p = 0; p < n; ++p) {
    Engine engine = particle_engine(seed, p);
    Vec3 x = init.mean + root * gaussian(engine);
    for (std::size_t k = 0; k < steps; ++k) {
      x = x - step * (spec.m * x + spec.v) + noise * gaussian(engine);
    }
    out.particles[p] = x;
  }
  return out;
}

Ensemble sample_exact(const DriftSpec& spec, const MomentState& init, double tau, std::size_t n,
                      std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample_exact: n must be positive");
  const MomentState law = moment_flow(spec, init, tau);
  const Mat3 root = psd_root(law.covariance);
  Ensemble out{std::vector<Vec3>(n), tau, seed};
  for (std::size_t p = 0; p < n; ++p) {
    Engine engine = particle_engine(seed, p);
    out.particles[p] = law.mean + root * gaussian(engine);
  }
  return out;
}

MomentState moment_flow(const DriftSpec& spec, const MomentState& init, double tau) {
  MomentState out;
  out.mean = affine_flow(-1.0 * spec.m, -spec.v, tau, init.mean);

  using State = std::array<double, 9>;
  State y = init.covariance.e;
  if (tau != 0.0) {
    const double dir = tau > 0 ? 1.0 : -1.0;
    const auto rhs = [&](const State& s, State& ds, double) {
      Mat3 cov;
      cov.e = s;
      const Mat3 rate = -1.0 * (spec.m * cov + cov * transpose(spec.m)) + 2.0 * Mat3::identity();
      for (std::size_t i = 0; i < 9; ++i) ds[i] = dir * rate.e[i];
    };
    auto stepper = odeint::make_controlled(1e-13, 1e-13, odeint::runge_kutta_dopri5<State>());
    odeint::integrate_adaptive(stepper, rhs, y, 0.0, std::abs(tau), std::abs(tau) / 100.0);
  }
  out.covariance.e = y;
  out.covariance = 0.5 * (out.covariance + transpose(out.covariance));
  return out;
}

MomentState sample_moments(const Ensemble& e) {
  const SampleStats s = stats_of(e);
  return {s.mean, s.cov};
}

MomentComparison compare(const Ensemble& ensemble, const MomentState& reference, double bound) {
  require_size(ensemble);
  const SampleStats s = stats_of(ensemble);
  MomentComparison c;
  c.bound = bound;
  for (std::size_t i = 0; i < 3; ++i) {
    c.z_mean[i] = z_score(s.mean[i] - reference.mean[i], s.se_mean[i], c.degenerate);
    for (std::size_t j = 0; j < 3; ++j) {
      c.z_covariance(i, j) = z_score(s.cov(i, j) - reference.covariance(i, j), s.se_cov(i, j), c.degenerate);
    }
  }
  return finish(c);
}

MomentComparison compare(const Ensemble& a, const Ensemble& b, double bound) {
  require_size(a);
  require_size(b);
  const SampleStats sa = stats_of(a), sb = stats_of(b);
  MomentComparison c;
  c.bound = bound;
  for (std::size_t i = 0; i < 3; ++i) {
    c.z_mean[i] = z_score(sa.mean[i] - sb.mean[i], std::hypot(sa.se_mean[i], sb.se_mean[i]), c.degenerate);
    for (std::size_t j = 0; j < 3; ++j) {
      c.z_covariance(i, j) =
          z_score(sa.cov(i, j) - sb.cov(i, j), std::hypot(sa.se_cov(i, j), sb.se_cov(i, j)), c.degenerate);
    }
  }
  return finish(c);
}

}  // namespace sepfp
