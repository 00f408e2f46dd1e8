#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sepfp/algebra3.hpp"
#include "sepfp/specfun.hpp"

namespace sepfp {

/// The eleven orthogonal coordinate systems in which the equation separates.
enum class ChartId {
  Cartesian = 1,
  Cylindrical,
  ParabolicCylindrical,
  EllipticCylindrical,
  Spherical,
  ProlateSpheroidal,
  OblateSpheroidal,
  Parabolic,
  Paraboloidal,
  Ellipsoidal,
  Conical,
};

enum class SplitClass { CompletelySplit, PartiallySplit, NonSplit };

struct ChartParams {
  double a = 1.0;                 ///< focal scale (elliptic cylindrical, spheroidal, paraboloidal)
  EllipticModulus modulus{0.6};   ///< ellipsoidal and conical
};

/// Real coordinates of a chart point. For the ellipsoidal chart the complex
/// coordinates are (p1, K + i p2, p3 + i K'); for the conical chart they are
/// (p1, p2, K + i p3). All other charts use the coordinates directly.
struct OmegaPoint {
  std::array<double, 3> w{0.0, 0.0, 0.0};
  double& operator[](std::size_t i) { return w[i]; }
  double operator[](std::size_t i) const { return w[i]; }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
  double mid() const { return 0.5 * (lo + hi); }
};

/// Admissible values of one coordinate. Endpoints may be infinite. Points in
/// `poles` are excluded and separate the axis into regular pieces.
struct AxisDomain {
  double lo;
  double hi;
  bool lo_open;
  bool hi_open;
  std::vector<double> poles;
  bool contains(double x) const;
};

const std::array<ChartId, 11>& all_charts();
int chart_number(ChartId id);
std::string_view chart_name(ChartId id);
/// Accepts the snake_case name ("prolate_spheroidal") or the number ("6").
std::optional<ChartId> chart_from_name(std::string_view name);
SplitClass split_class(ChartId id);
std::string_view split_class_name(SplitClass c);
/// Names of the ChartParams fields the chart reads ("a", "k").
std::vector<std::string> chart_parameter_names(ChartId id);
std::string chart_range_description(ChartId id);

std::array<AxisDomain, 3> chart_domain(ChartId id, const ChartParams& params);
bool in_domain(ChartId id, const ChartParams& params, const OmegaPoint& p);
/// Box used by sample_domain: inside the domain, at least 0.05 from singular loci.
std::array<Interval, 3> sample_box(ChartId id, const ChartParams& params);

/// z(omega). Throws std::out_of_range outside the domain.
Vec3 forward_map(ChartId id, const ChartParams& params, const OmegaPoint& p);

/// Row `axis` of the Staeckel matrix as a function of that coordinate alone.
/// For the complex-line coordinates of charts 10-11 the row is multiplied by
/// (d omega / d p)^2 = -1 so the separated equations stay real in p.
Vec3 stackel_row(ChartId id, const ChartParams& params, int axis, double coordinate);
Mat3 stackel_matrix(ChartId id, const ChartParams& params, const OmegaPoint& p);

/// dz/d omega (columns are coordinate directions). Throws CoordinateSingularity
/// when the determinant vanishes relative to the column norms.
Mat3 jacobian(ChartId id, const ChartParams& params, const OmegaPoint& p);

/// (|grad omega_1|^2, |grad omega_2|^2, |grad omega_3|^2) in z-space.
Vec3 grad_norms(ChartId id, const ChartParams& params, const OmegaPoint& p);

/// Largest off-diagonal entry of J^-1 J^-T.
double orthogonality_defect(ChartId id, const ChartParams& params, const OmegaPoint& p);

/// Finite-difference Laplacian in z of each coordinate through the inverse map:
/// central second differences at h and h/2 combined by one Richardson step.
Vec3 laplacian_defect(ChartId id, const ChartParams& params, const OmegaPoint& p, double h = 2e-4);

/// Deterministic pseudo-random points of sample_box.
std::vector<OmegaPoint> sample_domain(ChartId id, const ChartParams& params, std::size_t n,
                                      std::uint64_t seed);

/// Chart-stage inverse: omega with z(omega) = z. Closed forms for charts 1-3
/// and 5 (branch nearest to guess), damped Newton otherwise.
/// Throws ConvergenceFailure or CoordinateSingularity.
OmegaPoint invert_chart(ChartId id, const ChartParams& params, const Vec3& z, const OmegaPoint& guess);

}  // namespace sepfp
