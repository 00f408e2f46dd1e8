#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sepfp/algebra3.hpp"
#include "sepfp/charts.hpp"
#include "sepfp/drift.hpp"

namespace sepfp {

/// Separation constants (lambda_1, lambda_2, lambda_3).
struct SpectralParams {
  std::array<double, 3> lambda{0.0, 0.0, 0.0};
  double operator[](std::size_t i) const { return lambda[i]; }
};

/// Which time terms enter the time factor for the chart's split class:
/// all three (Cartesian), 1 and 3 (charts 2-4), 1 only (charts 5-11).
std::array<bool, 3> active_time_terms(ChartId id);

/// Time factor exp(T0 t + sum_active lambda_i c_i^-2 (exp(-2 l_i t) - 1) / (2 l_i)),
/// T0 = -(l_1 + l_2 + l_3), normalized to 1 at t = 0. For l_i = 0 the
/// fraction is replaced by -t.
class Phi0 {
 public:
  Phi0(const Classification& c, ChartId chart, const SpectralParams& lambda);

  double operator()(double t) const;
  /// d/dt log phi0 = T0 - sum_active lambda_i c_i^-2 exp(-2 l_i t)
  double log_derivative(double t) const;
  double t0() const { return t0_; }

 private:
  Vec3 l_;
  Vec3 weight_;  ///< lambda_i c_i^-2 on active terms, 0 otherwise
  double t0_;
};

/// (phi, phi') prescribed at a point of the table's interval.
struct PhiInitial {
  double position;
  double value = 1.0;
  double slope = 0.0;
};

/// Dense solution of phi'' = (F_a1 lambda_1 + F_a2 lambda_2 + F_a3 lambda_3) phi on an
/// interval, where F_a is row `axis` of the chart's Staeckel matrix. Integrated
/// by an adaptive Dormand-Prince pair in both directions from the initial point;
/// values between steps come from quintic Hermite interpolation on (phi, phi', phi'').
class PhiTable {
 public:
  /// ic defaults to (1, 0) at the interval midpoint. tol in [1e-12, 1e-4].
  /// Throws CoordinateSingularity if the interval leaves the chart range or
  /// contains a pole, ConvergenceFailure if the integrator fails.
  static PhiTable integrate(ChartId chart, const ChartParams& params, int axis, const SpectralParams& lambda,
                            const Interval& interval, std::optional<PhiInitial> ic = std::nullopt,
                            double tol = 1e-11);

  double value(double w) const;
  double slope(double w) const;
  /// Coefficient q(w) = F_a(w) . lambda
  double coefficient(double w) const;

  int axis() const { return axis_; }
  const Interval& interval() const { return interval_; }
  const PhiInitial& initial() const { return ic_; }
  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    double w, f, df, ddf;
  };
  struct Local {
    const Node* lo;
    const Node* hi;
    double s;
    double h;
  };
  Local locate(double w) const;

  ChartId chart_{};
  ChartParams params_{};
  int axis_ = 0;
  Vec3 lambda_;
  Interval interval_;
  PhiInitial ic_{0.0};
  std::vector<Node> nodes_;
};

/// Affine stage z = H^-1 T^T (x - w), then invert_chart from `guess`.
OmegaPoint invert_coordinates(ChartId chart, const ChartParams& params, const FrameAtTime& frame, const Vec3& x,
                              const OmegaPoint& guess);

/// Everything needed to assemble u = phi0(t) phi1(w1) phi2(w2) phi3(w3).
struct SolutionRequest {
  DriftSpec drift;
  ChartId chart = ChartId::Cartesian;
  ChartParams params;
  SpectralParams lambda;
  std::optional<Vec3> c;                             ///< scale constants; classification default when empty
  std::optional<Vec3> w0;                            ///< default_w0 when empty
  std::optional<std::array<Interval, 3>> intervals;  ///< sample box padded by 0.025 when empty
  std::array<std::optional<PhiInitial>, 3> ic;
  double classify_tol = 1e-9;
  double ode_tol = 1e-11;
};

class SeparatedSolution {
 public:
  /// Throws NotSeparableDrift, InadmissibleChart, std::invalid_argument for bad
  /// scale constants, and whatever PhiTable::integrate throws.
  static SeparatedSolution build(const SolutionRequest& request);

  /// u at a chart point and time (no inversion).
  double at_omega(double t, const OmegaPoint& w) const;
  /// u at a Cartesian point; `guess` seeds the chart inversion.
  double at(double t, const Vec3& x, const OmegaPoint& guess) const;

  FrameAtTime frame(double t) const;
  Vec3 to_cartesian(double t, const OmegaPoint& w) const;
  OmegaPoint to_omega(double t, const Vec3& x, const OmegaPoint& guess) const;
  bool covers(const OmegaPoint& w) const;

  const DriftSpec& drift() const { return drift_; }
  const Classification& classification() const { return class_; }
  ChartId chart() const { return chart_; }
  const ChartParams& params() const { return params_; }
  const SpectralParams& lambda() const { return lambda_; }
  const Vec3& w0() const { return w0_; }
  const Phi0& phi0() const { return phi0_; }
  const PhiTable& phi(int axis) const { return tables_.at(static_cast<std::size_t>(axis)); }

 private:
  SeparatedSolution(DriftSpec drift, Classification c, ChartId chart, ChartParams params, SpectralParams lambda,
                    Vec3 w0, std::array<PhiTable, 3> tables);

  DriftSpec drift_;
  Classification class_;
  ChartId chart_;
  ChartParams params_;
  SpectralParams lambda_;
  Vec3 w0_;
  Phi0 phi0_;
  std::array<PhiTable, 3> tables_;
};

/// A residual probe: time, Cartesian point and the chart point it came from.
struct ProbePoint {
  double t;
  Vec3 x;
  OmegaPoint omega;
};

struct ProbeOptions {
  double t_lo = 0.0;
  double t_hi = 0.5;
  double margin = 0.05;     ///< distance kept from the table ends, in omega
  double min_scale = 0.25;  ///< lower bound on |dx / d omega_i| at accepted points
};

/// Probe points drawn uniformly in the solution's tables shrunk by `margin`,
/// t uniform in [t_lo, t_hi]. Points where a coordinate line is shorter than
/// min_scale per unit omega (near focal loci) are redrawn. Throws
/// std::runtime_error if fewer than n points are found in 1000 n draws.
std::vector<ProbePoint> interior_points(const SeparatedSolution& solution, std::size_t n, std::uint64_t seed,
                                        const ProbeOptions& options = {});

/// min_i |H(t) J e_i|, the shortest Cartesian length element along a coordinate line.
double local_scale(const SeparatedSolution& solution, double t, const OmegaPoint& w);

struct PointResidual {
  double t;
  Vec3 x;
  double u;
  double residual;       ///< at h
  double residual_half;  ///< at h / 2
  double extrapolated() const { return (4.0 * residual_half - residual) / 3.0; }
};

struct ResidualReport {
  std::vector<PointResidual> points;
  std::vector<std::string> failures;  ///< points whose stencil could not be evaluated
  double h = 1e-3;
  double u_scale = 0.0;       ///< max |u| over the probes
  double max_normalized = 0.0;
  double mean_normalized = 0.0;
  double max_normalized_half = 0.0;
  double max_normalized_extrapolated = 0.0;  ///< Richardson combination of h and h / 2
  double threshold = 5e-4;
  bool pass = false;
};

/// Central differences of u_t + Lap u + div(B u) at each probe, normalized by the
/// largest |u| over the probes. Passes when every stencil evaluated and the
/// normalized maximum of the Richardson combination of h and h / 2 is at most
/// `threshold`.
ResidualReport verify_residual(const SeparatedSolution& solution, const DriftSpec& drift,
                               const std::vector<ProbePoint>& points, double h = 1e-3, double threshold = 5e-4);

/// The residual of one point at step h; throws if a stencil point cannot be inverted.
double point_residual(const SeparatedSolution& solution, const DriftSpec& drift, const ProbePoint& p, double h);

/// Same stencil for an arbitrary field u(t, x).
double field_residual(const std::function<double(double, const Vec3&)>& u, const DriftSpec& drift, double t,
                      const Vec3& x, double h);

}  // namespace sepfp
