#include "sepfp/algebra3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace sepfp {

Vec3& Vec3::operator+=(const Vec3& o) {
  for (std::size_t i = 0; i < 3; ++i) e[i] += o.e[i];
  return *this;
}
Vec3& Vec3::operator-=(const Vec3& o) {
  for (std::size_t i = 0; i < 3; ++i) e[i] -= o.e[i];
  return *this;
}
Vec3& Vec3::operator*=(double s) {
  for (auto& x : e) x *= s;
  return *this;
}

Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
Vec3 operator*(double s, Vec3 a) { return a *= s; }
Vec3 operator*(Vec3 a, double s) { return a *= s; }
Vec3 operator/(Vec3 a, double s) { return a *= 1.0 / s; }

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::hypot(a[0], a[1], a[2]); }

double max_abs(const Vec3& a) {
  return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

bool all_finite(const Vec3& a) {
  return std::all_of(a.e.begin(), a.e.end(), [](double x) { return std::isfinite(x); });
}

Mat3 Mat3::identity() { return diag({1.0, 1.0, 1.0}); }

Mat3 Mat3::diag(const Vec3& d) {
  Mat3 m;
  for (std::size_t i = 0; i < 3; ++i) m(i, i) = d[i];
  return m;
}

Mat3 Mat3::from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
  Mat3 m;
  for (std::size_t c = 0; c < 3; ++c) {
    m(0, c) = r0[c];
    m(1, c) = r1[c];
    m(2, c) = r2[c];
  }
  return m;
}

Mat3 Mat3::from_cols(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  return transpose(from_rows(c0, c1, c2));
}

Mat3& Mat3::operator+=(const Mat3& o) {
  for (std::size_t i = 0; i < 9; ++i) e[i] += o.e[i];
  return *this;
}
Mat3& Mat3::operator-=(const Mat3& o) {
  for (std::size_t i = 0; i < 9; ++i) e[i] -= o.e[i];
  return *this;
}
Mat3& Mat3::operator*=(double s) {
  for (auto& x : e) x *= s;
  return *this;
}

Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
Mat3 operator*(double s, Mat3 a) { return a *= s; }
Mat3 operator*(Mat3 a, double s) { return a *= s; }

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return r;
}

Vec3 operator*(const Mat3& a, const Vec3& x) {
  return {dot(a.row(0), x), dot(a.row(1), x), dot(a.row(2), x)};
}

Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}

double trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

double det(const Mat3& a) { return dot(a.row(0), cross(a.row(1), a.row(2))); }

Mat3 inverse(const Mat3& a) {
  const Vec3 r0 = a.row(0), r1 = a.row(1), r2 = a.row(2);
  const Vec3 c0 = cross(r1, r2), c1 = cross(r2, r0), c2 = cross(r0, r1);
  const double d = dot(r0, c0);
  const double scale = norm(a);
  if (!(std::abs(d) > 1e-300) || std::abs(d) <= 1e-14 * scale * scale * scale) {
    throw std::domain_error("inverse: matrix is singular");
  }
  return Mat3::from_cols(c0, c1, c2) * (1.0 / d);
}

double norm(const Mat3& a) {
  double s = 0.0;
  for (double x : a.e) s += x * x;
  return std::sqrt(s);
}

double max_abs(const Mat3& a) {
  double m = 0.0;
  for (double x : a.e) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const Mat3& a) {
  return std::all_of(a.e.begin(), a.e.end(), [](double x) { return std::isfinite(x); });
}

Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = a[i] * b[j];
  return m;
}

Mat3 hat(const Vec3& w) {
  return Mat3::from_rows({0.0, -w[2], w[1]}, {w[2], 0.0, -w[0]}, {-w[1], w[0], 0.0});
}

Mat3 euler_rotation(const EulerAngles& an) {
  const double ca = std::cos(an.alpha), sa = std::sin(an.alpha);
  const double cb = std::cos(an.beta), sb = std::sin(an.beta);
  const double cg = std::cos(an.gamma), sg = std::sin(an.gamma);
  return Mat3::from_rows({ca * cb - sa * sb * cg, -ca * sb - sa * cb * cg, sa * sg},
                         {sa * cb + ca * sb * cg, -sa * sb + ca * cb * cg, -ca * sg},
                         {sb * sg, cb * sg, cg});
}

EulerAngles euler_angles_of(const Mat3& r) {
  const double sg = std::hypot(r(0, 2), r(1, 2));
  if (sg < 1e-12) throw std::domain_error("euler_angles_of: gimbal lock (sin gamma ~ 0)");
  EulerAngles an;
  an.gamma = std::atan2(sg, r(2, 2));
  an.alpha = std::atan2(r(0, 2), -r(1, 2));
  an.beta = std::atan2(r(2, 0), r(2, 1));
  return an;
}

Mat3 ttilde(double b, double s, double t) {
  const double cs = std::cos(s), ss = std::sin(s);
  const double c = std::cos(b * t), sn = std::sin(b * t);
  return Mat3::from_rows({-cs * c, ss, cs * sn}, {sn, 0.0, c}, {ss * c, cs, -ss * sn});
}

Mat3 ttilde_generator(double b, double s) {
  const double cs = std::cos(s), ss = std::sin(s);
  return b * Mat3::from_rows({0.0, cs, 0.0}, {-cs, 0.0, ss}, {0.0, -ss, 0.0});
}

SymAntisym sym_antisym_split(const Mat3& m) {
  const Mat3 mt = transpose(m);
  return {0.5 * (m + mt), 0.5 * (m - mt)};
}

Vec3 antisym_axis(const Mat3& a, double tol) {
  const Mat3 sym = 0.5 * (a + transpose(a));
  if (max_abs(sym) > tol * std::max(1.0, max_abs(a))) {
    throw std::invalid_argument("antisym_axis: matrix is not antisymmetric");
  }
  return {a(2, 1), a(0, 2), a(1, 0)};
}

int count_distinct(const Vec3& v, double tol) {
  int n = 1;
  if (v[1] - v[0] > tol) ++n;
  if (v[2] - v[1] > tol) ++n;
  return n;
}

namespace {

constexpr double kClusterGap = 1e-5;

// Cyclic Jacobi; returns eigenvalues on the diagonal of `a` and eigenvectors in columns of `v`.
void jacobi_eigen(Mat3& a, Mat3& v) {
  v = Mat3::identity();
  const double scale = std::max(norm(a), std::numeric_limits<double>::min());
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = std::hypot(a(0, 1), a(0, 2), a(1, 2));
    if (off <= 1e-17 * scale) return;
    for (std::size_t p = 0; p < 2; ++p) {
      for (std::size_t q = p + 1; q < 3; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        Mat3 g = Mat3::identity();
        g(p, p) = c;
        g(q, q) = c;
        g(p, q) = s;
        g(q, p) = -s;
        a = transpose(g) * a * g;
        a(p, q) = a(q, p) = 0.0;
        v = v * g;
      }
    }
  }
}

Vec3 null_vector(const Mat3& shifted) {
  const Vec3 r0 = shifted.row(0), r1 = shifted.row(1), r2 = shifted.row(2);
  const Vec3 cands[3] = {cross(r0, r1), cross(r0, r2), cross(r1, r2)};
  const Vec3* best = &cands[0];
  for (const auto& c : cands)
    if (norm(c) > norm(*best)) best = &c;
  return *best / norm(*best);
}

}  // namespace

SymmetricEigen symmetric_eigen(const Mat3& s, double tol) {
  const double scale = norm(s);
  const Mat3 anti = 0.5 * (s - transpose(s));
  if (max_abs(anti) > tol * std::max(1.0, scale)) {
    throw std::invalid_argument("symmetric_eigen: matrix is not symmetric");
  }
  const Mat3 sym = 0.5 * (s + transpose(s));
  SymmetricEigen out;
  if (scale == 0.0) {
    out.vectors = Mat3::identity();
    return out;
  }

  // Closed form (Smith 1961).
  const double p1 = sym(0, 1) * sym(0, 1) + sym(0, 2) * sym(0, 2) + sym(1, 2) * sym(1, 2);
  const double q = trace(sym) / 3.0;
  const double d0 = sym(0, 0) - q, d1 = sym(1, 1) - q, d2 = sym(2, 2) - q;
  const double p = std::sqrt((d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1) / 6.0);
  Vec3 vals{q, q, q};
  if (p > 0.0) {
    const Mat3 b = (1.0 / p) * (sym - q * Mat3::identity());
    const double r = std::clamp(det(b) / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double hi = q + 2.0 * p * std::cos(phi);
    const double lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    vals = {lo, 3.0 * q - hi - lo, hi};
    std::sort(vals.e.begin(), vals.e.end());
  }

  // diagonal input goes through Jacobi, which leaves it untouched
  const bool clustered = p1 == 0.0 || (vals[1] - vals[0] <= kClusterGap * scale) ||
                         (vals[2] - vals[1] <= kClusterGap * scale);
  if (clustered) {
    Mat3 a = sym, v;
    jacobi_eigen(a, v);
    std::array<std::size_t, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
    out.values = {a(idx[0], idx[0]), a(idx[1], idx[1]), a(idx[2], idx[2])};
    out.vectors = Mat3::from_cols(v.col(idx[0]), v.col(idx[1]), v.col(idx[2]));
  } else {
    const Vec3 v0 = null_vector(sym - vals[0] * Mat3::identity());
    const Vec3 v2 = null_vector(sym - vals[2] * Mat3::identity());
    Vec3 v1 = cross(v2, v0);
    v1 = v1 / norm(v1);
    out.values = vals;
    out.vectors = Mat3::from_cols(v0, v1, v2);
  }
  if (det(out.vectors) < 0.0) {
    for (std::size_t r = 0; r < 3; ++r) out.vectors(r, 0) = -out.vectors(r, 0);
  }
  return out;
}

namespace {

template <std::size_t N>
using Square = std::array<double, N * N>;

template <std::size_t N>
Square<N> mul(const Square<N>& a, const Square<N>& b) {
  Square<N> r{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) {
      const double aik = a[i * N + k];
      for (std::size_t j = 0; j < N; ++j) r[i * N + j] += aik * b[k * N + j];
    }
  return r;
}

// Solves D X = B in place (B overwritten by X); partial pivoting.
template <std::size_t N>
void solve_in_place(Square<N> d, Square<N>& b) {
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < N; ++r)
      if (std::abs(d[r * N + c]) > std::abs(d[piv * N + c])) piv = r;
    if (piv != c) {
      for (std::size_t j = 0; j < N; ++j) {
        std::swap(d[c * N + j], d[piv * N + j]);
        std::swap(b[c * N + j], b[piv * N + j]);
      }
    }
    const double inv = 1.0 / d[c * N + c];
    for (std::size_t r = c + 1; r < N; ++r) {
      const double f = d[r * N + c] * inv;
      if (f == 0.0) continue;
      for (std::size_t j = c; j < N; ++j) d[r * N + j] -= f * d[c * N + j];
      for (std::size_t j = 0; j < N; ++j) b[r * N + j] -= f * b[c * N + j];
    }
  }
  for (std::size_t c = N; c-- > 0;) {
    const double inv = 1.0 / d[c * N + c];
    for (std::size_t j = 0; j < N; ++j) {
      double acc = b[c * N + j];
      for (std::size_t k = c + 1; k < N; ++k) acc -= d[c * N + k] * b[k * N + j];
      b[c * N + j] = acc * inv;
    }
  }
}

template <std::size_t N>
Square<N> expm_pade6(Square<N> a) {
  double inf_norm = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < N; ++j) row += std::abs(a[i * N + j]);
    inf_norm = std::max(inf_norm, row);
  }
  int squarings = 0;
  if (inf_norm > 0.5) {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(inf_norm / 0.5))));
    const double f = std::ldexp(1.0, -squarings);
    for (auto& x : a) x *= f;
  }
  constexpr int q = 6;
  Square<N> num{}, den{}, power{};
  for (std::size_t i = 0; i < N; ++i) num[i * N + i] = den[i * N + i] = power[i * N + i] = 1.0;
  double c = 1.0;
  for (int k = 1; k <= q; ++k) {
    c *= static_cast<double>(q - k + 1) / static_cast<double>(k * (2 * q - k + 1));
    power = mul<N>(power, a);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t i = 0; i < N * N; ++i) {
      num[i] += c * power[i];
      den[i] += sign * c * power[i];
    }
  }
  solve_in_place<N>(den, num);
  for (int k = 0; k < squarings; ++k) num = mul<N>(num, num);
  return num;
}

}  // namespace

Mat3 expm(const Mat3& m) {
  Mat3 out;
  out.e = expm_pade6<3>(m.e);
  return out;
}

Vec3 mat_exp_action(const Mat3& m, double t, const Vec3& x) { return expm(t * m) * x; }

Vec3 affine_flow(const Mat3& m, const Vec3& v, double t, const Vec3& w0) {
  Square<4> g{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) g[i * 4 + j] = t * m(i, j);
    g[i * 4 + 3] = t * v[i];
  }
  const Square<4> e = expm_pade6<4>(g);
  Vec3 w;
  for (std::size_t i = 0; i < 3; ++i) {
    w[i] = e[i * 4 + 3];
    for (std::size_t j = 0; j < 3; ++j) w[i] += e[i * 4 + j] * w0[j];
  }
  return w;
}

Mat3 rotation_with_third_column(const Vec3& u_in) {
  const Vec3 u = u_in / norm(u_in);
  // Seed with the coordinate axis least aligned with u.
  std::size_t k = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(u[i]) < std::abs(u[k])) k = i;
  Vec3 seed;
  seed[k] = 1.0;
  Vec3 p = seed - dot(seed, u) * u;
  p = p / norm(p);
  const Vec3 q = cross(u, p);
  return Mat3::from_cols(p, q, u);
}

}  // namespace sepfp
