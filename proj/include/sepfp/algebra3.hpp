#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

namespace sepfp {

/// Three real components; position, velocity or angular-velocity depending on context.
struct Vec3 {
  std::array<double, 3> e{0.0, 0.0, 0.0};

  constexpr Vec3() = default;
  constexpr Vec3(double x, double y, double z) : e{x, y, z} {}

  constexpr double& operator[](std::size_t i) { return e[i]; }
  constexpr double operator[](std::size_t i) const { return e[i]; }

  Vec3& operator+=(const Vec3& o);
  Vec3& operator-=(const Vec3& o);
  Vec3& operator*=(double s);

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

Vec3 operator+(Vec3 a, const Vec3& b);
Vec3 operator-(Vec3 a, const Vec3& b);
Vec3 operator-(const Vec3& a);
Vec3 operator*(double s, Vec3 a);
Vec3 operator*(Vec3 a, double s);
Vec3 operator/(Vec3 a, double s);

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);
double max_abs(const Vec3& a);
bool all_finite(const Vec3& a);

/// Row-major 3x3 matrix.
struct Mat3 {
  std::array<double, 9> e{};

  constexpr double& operator()(std::size_t r, std::size_t c) { return e[3 * r + c]; }
  constexpr double operator()(std::size_t r, std::size_t c) const { return e[3 * r + c]; }

  static Mat3 identity();
  static Mat3 zero() { return Mat3{}; }
  static Mat3 diag(const Vec3& d);
  static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2);
  static Mat3 from_cols(const Vec3& c0, const Vec3& c1, const Vec3& c2);

  Vec3 row(std::size_t r) const { return {e[3 * r], e[3 * r + 1], e[3 * r + 2]}; }
  Vec3 col(std::size_t c) const { return {e[c], e[3 + c], e[6 + c]}; }

  Mat3& operator+=(const Mat3& o);
  Mat3& operator-=(const Mat3& o);
  Mat3& operator*=(double s);

  friend bool operator==(const Mat3&, const Mat3&) = default;
};

Mat3 operator+(Mat3 a, const Mat3& b);
Mat3 operator-(Mat3 a, const Mat3& b);
Mat3 operator*(double s, Mat3 a);
Mat3 operator*(Mat3 a, double s);
Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& x);

Mat3 transpose(const Mat3& a);
double trace(const Mat3& a);
double det(const Mat3& a);
/// Throws std::domain_error when |det| is not above tiny * |a|^3.
Mat3 inverse(const Mat3& a);
/// Frobenius norm.
double norm(const Mat3& a);
double max_abs(const Mat3& a);
bool all_finite(const Mat3& a);
Mat3 outer(const Vec3& a, const Vec3& b);

/// Hat map: hat(w) * x == cross(w, x).
Mat3 hat(const Vec3& w);

/// Euler angles of the (alpha, beta, gamma) parameterisation used by euler_rotation.
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Orthogonal matrix with rows
///   ( ca cb - sa sb cg, -ca sb - sa cb cg,  sa sg )
///   ( sa cb + ca sb cg, -sa sb + ca cb cg, -ca sg )
///   (          sb sg,            cb sg,       cg )
Mat3 euler_rotation(const EulerAngles& angles);

/// Inverse of euler_rotation on the chart sin(gamma) != 0. Angles are in (-pi, pi].
/// Throws std::domain_error if |sin gamma| < 1e-12 (gimbal lock).
EulerAngles euler_angles_of(const Mat3& rotation);

/// The one-parameter rotating frame
///   ( -cos s cos bt, sin s,  cos s sin bt )
///   (       sin bt,     0,        cos bt )
///   (  sin s cos bt, cos s, -sin s sin bt )
/// whose generator d/dt(T) T^T is b * [[0, cos s, 0], [-cos s, 0, sin s], [0, -sin s, 0]].
Mat3 ttilde(double b, double s, double t);

/// Constant generator d/dt(ttilde) * ttilde^T.
Mat3 ttilde_generator(double b, double s);

struct SymAntisym {
  Mat3 sym;
  Mat3 anti;
};

SymAntisym sym_antisym_split(const Mat3& m);

/// Rotation vector w of an antisymmetric matrix, A x = w x x.
/// Rejects input whose symmetric part exceeds tol * max(1, |A|).
Vec3 antisym_axis(const Mat3& a, double tol = 1e-12);

struct SymmetricEigen {
  Vec3 values;   ///< ascending
  Mat3 vectors;  ///< columns are unit eigenvectors, det = +1
};

/// Eigen-decomposition of a symmetric 3x3 matrix.
///
/// Uses the closed-form trigonometric solution of the characteristic cubic and
/// falls back to cyclic Jacobi rotations when two eigenvalues are closer than
/// cluster_gap * |S| (the closed form loses about half the digits there).
/// Rejects input whose antisymmetric part exceeds tol * max(1, |S|).
SymmetricEigen symmetric_eigen(const Mat3& s, double tol = 1e-9);

/// Number of eigenvalue clusters (1, 2 or 3) of ascending values, gaps <= tol counted as equal.
int count_distinct(const Vec3& ascending, double tol);

/// Matrix exponential by scaling and squaring with the diagonal Pade(6) approximant.
Mat3 expm(const Mat3& m);

/// exp(M t) x.
Vec3 mat_exp_action(const Mat3& m, double t, const Vec3& x);

/// Solution at time t of w' = M w + v, w(0) = w0. Uses the exponential of the
/// augmented 4x4 generator [[M, v], [0, 0]], so singular M needs no special case.
Vec3 affine_flow(const Mat3& m, const Vec3& v, double t, const Vec3& w0);

/// Proper rotation whose third column is the unit vector u (other columns arbitrary).
Mat3 rotation_with_third_column(const Vec3& u);

}  // namespace sepfp
