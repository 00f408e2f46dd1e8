#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sepfp/algebra3.hpp"
#include "sepfp/charts.hpp"

namespace sepfp {

/// Linear drift B(x) = M x + v.
struct DriftSpec {
  Mat3 m;
  Vec3 v;
};

enum class DriftCase {
  SymmetricDistinct,
  SymmetricDoubled,
  Isotropic,
  RotatingIsotropic,
  RotatingAxial,
  NotSeparable,
};

std::string_view drift_case_name(DriftCase c);
std::optional<DriftCase> drift_case_from_name(std::string_view name);

/// Signs and angle of the constant frame factor in the rotating axial case:
///   ( eps1 cos theta, -eps1 sin theta,          0 )
///   (              0,               0, -eps1 eps2 )
///   ( eps2 sin theta,  eps2 cos theta,          0 )
struct AxialFrameData {
  int eps1 = 1;
  int eps2 = 1;
  double theta = 0.0;
};

Mat3 axial_frame_matrix(const AxialFrameData& d);

/// Canonical parameters of a separable drift. The frame is
/// T(t) = c1 * ttilde(b, s, t) * c2 and H(t) = diag(c_i exp(l_i t)).
struct Classification {
  DriftCase kind = DriftCase::NotSeparable;
  Mat3 c1 = Mat3::identity();
  Mat3 c2 = Mat3::identity();
  std::optional<AxialFrameData> c2_axial;
  double b = 0.0;
  double s = 0.0;
  Vec3 l;
  Vec3 c{1.0, 1.0, 1.0};
  double tol = 1e-9;
  std::vector<std::string> warnings;
};

/// Throws std::invalid_argument for tol <= 0 or non-finite M.
Classification classify(const DriftSpec& spec, double tol = 1e-9);

/// M rebuilt from the canonical parameters. Throws std::invalid_argument for NotSeparable.
Mat3 reconstruct(const Classification& c);

/// Charts whose scale-function pattern the case supports, in catalog order.
std::vector<ChartId> admissible_charts(const Classification& c);
bool is_admissible(const Classification& c, ChartId id);

/// Rejects scale constants the chart's split class does not allow
/// (c1 = c2 for charts 2-4, c1 = c2 = c3 for charts 5-11) and non-positive values.
void check_scale_constants(ChartId id, const Vec3& c);

struct FrameAtTime {
  Mat3 t_rot;  ///< T(t), orthogonal
  Mat3 h;      ///< H(t), positive diagonal
  Vec3 w;      ///< translation
  double t = 0.0;

  /// x = T H z + w
  Vec3 to_cartesian(const Vec3& z) const { return t_rot * (h * z) + w; }
  /// z = H^-1 T^T (x - w)
  Vec3 to_chart(const Vec3& x) const;
};

Mat3 frame_rotation(const Classification& c, double t);
Mat3 frame_scale(const Classification& c, double t);

/// Frame at time t; w solves w' = M w + v with w(0) = w0.
FrameAtTime frame_at(const Classification& c, const DriftSpec& spec, const Vec3& w0, double t);

/// -M^-1 v when M is invertible, otherwise 0.
Vec3 default_w0(const DriftSpec& spec);

/// Constants of the Euler-angle equations
///   alpha' + beta' cos gamma = C1
///   beta' cos alpha sin gamma - gamma' sin alpha = C2
///   beta' sin alpha sin gamma + gamma' cos alpha = C3
/// for a rotation whose generator T' T^T is the given antisymmetric matrix.
Vec3 euler_constants(const Mat3& generator);

struct EulerSample {
  double t;
  EulerAngles angles;
};

/// Largest residual of the three Euler-angle equations along a sampled path,
/// with derivatives from second-order differences on the (possibly uneven) grid.
/// Angles are unwrapped before differencing. Needs at least three samples.
double euler_ode_residual(const std::vector<EulerSample>& path, const Vec3& constants);

}  // namespace sepfp
