#include "sepfp/charts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sepfp/errors.hpp"

namespace sepfp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
constexpr double kImagTol = 1e-10;

struct ChartInfo {
  ChartId id;
  std::string_view name;
  SplitClass split;
};

constexpr std::array<ChartInfo, 11> kCharts{{
    {ChartId::Cartesian, "cartesian", SplitClass::CompletelySplit},
    {ChartId::Cylindrical, "cylindrical", SplitClass::PartiallySplit},
    {ChartId::ParabolicCylindrical, "parabolic_cylindrical", SplitClass::PartiallySplit},
    {ChartId::EllipticCylindrical, "elliptic_cylindrical", SplitClass::PartiallySplit},
    {ChartId::Spherical, "spherical", SplitClass::NonSplit},
    {ChartId::ProlateSpheroidal, "prolate_spheroidal", SplitClass::NonSplit},
    {ChartId::OblateSpheroidal, "oblate_spheroidal", SplitClass::NonSplit},
    {ChartId::Parabolic, "parabolic", SplitClass::NonSplit},
    {ChartId::Paraboloidal, "paraboloidal", SplitClass::NonSplit},
    {ChartId::Ellipsoidal, "ellipsoidal", SplitClass::NonSplit},
    {ChartId::Conical, "conical", SplitClass::NonSplit},
}};

const ChartInfo& info(ChartId id) { return kCharts.at(static_cast<std::size_t>(id) - 1); }


double sech(double x) { return 1.0 / std::cosh(x); }

// Complex coordinates and d omega / d p for charts 10-11.
struct ComplexPoint {
  std::array<Complex, 3> w;
  std::array<Complex, 3> dw;
};

ComplexPoint complexify(ChartId id, const ChartParams& params, const OmegaPoint& p) {
  const double big_k = params.modulus.quarter_period();
  const double big_kp = params.modulus.complementary_quarter_period();
  const Complex i{0.0, 1.0};
  if (id == ChartId::Ellipsoidal) {
    return {{Complex{p[0], 0.0}, Complex{big_k, p[1]}, Complex{p[2], big_kp}}, {1.0, i, 1.0}};
  }
  return {{Complex{p[0], 0.0}, Complex{p[1], 0.0}, Complex{big_k, p[2]}}, {1.0, 1.0, i}};
}

double checked_real(Complex c, double scale) {
  if (std::abs(c.imag()) > kImagTol * std::max(1.0, scale)) {
    throw std::logic_error("complex chart: imaginary residue above tolerance");
  }
  return c.real();
}

void require_domain(ChartId id, const ChartParams& params, const OmegaPoint& p) {
  if (!in_domain(id, params, p)) {
    throw std::out_of_range("chart " + std::string(chart_name(id)) + ": coordinates outside the valid range");
  }
}

// z and dz/domega (complex) for charts 10-11, before taking real parts.
struct ComplexMap {
  std::array<Complex, 3> z;
  std::array<std::array<Complex, 3>, 3> dz;  // dz[i][j] = dz_i / dp_j
};

ComplexMap complex_map(ChartId id, const ChartParams& params, const OmegaPoint& p) {
  const double k = params.modulus.k(), kp = params.modulus.kprime();
  const ComplexPoint cp = complexify(id, params, p);
  std::array<JacobiTriple<Complex>, 3> f;
  for (int a = 0; a < 3; ++a) {
    if (id == ChartId::Conical && a == 0) continue;
    f[a] = jacobi_sn_cn_dn(cp.w[a], k);
  }
  // derivatives of sn, cn, dn
  auto dsn = [&](int a) { return f[a].cn * f[a].dn; };
  auto dcn = [&](int a) { return -f[a].sn * f[a].dn; };
  auto ddn = [&](int a) { return -k * k * f[a].sn * f[a].cn; };
  const Complex i{0.0, 1.0};
  ComplexMap m;
  if (id == ChartId::Ellipsoidal) {
    const Complex c1 = i / (k * kp), c2 = -k / kp, c3 = k;
    m.z = {c1 * f[0].dn * f[1].dn * f[2].dn, c2 * f[0].cn * f[1].cn * f[2].cn, c3 * f[0].sn * f[1].sn * f[2].sn};
    m.dz[0] = {c1 * ddn(0) * f[1].dn * f[2].dn, c1 * f[0].dn * ddn(1) * f[2].dn, c1 * f[0].dn * f[1].dn * ddn(2)};
    m.dz[1] = {c2 * dcn(0) * f[1].cn * f[2].cn, c2 * f[0].cn * dcn(1) * f[2].cn, c2 * f[0].cn * f[1].cn * dcn(2)};
    m.dz[2] = {c3 * dsn(0) * f[1].sn * f[2].sn, c3 * f[0].sn * dsn(1) * f[2].sn, c3 * f[0].sn * f[1].sn * dsn(2)};
  } else {
    const double r = 1.0 / p[0];
    const Complex c1 = 1.0 / kp, c2 = i * k / kp, c3 = k;
    const Complex a1 = c1 * f[1].dn * f[2].dn, a2 = c2 * f[1].cn * f[2].cn, a3 = c3 * f[1].sn * f[2].sn;
    m.z = {r * a1, r * a2, r * a3};
    m.dz[0] = {-r * r * a1, r * c1 * ddn(1) * f[2].dn, r * c1 * f[1].dn * ddn(2)};
    m.dz[1] = {-r * r * a2, r * c2 * dcn(1) * f[2].cn, r * c2 * f[1].cn * dcn(2)};
    m.dz[2] = {-r * r * a3, r * c3 * dsn(1) * f[2].sn, r * c3 * f[1].sn * dsn(2)};
  }
  for (auto& row : m.dz)
    for (int j = 0; j < 3; ++j) row[j] *= cp.dw[j];
  return m;
}

}  // namespace

bool AxisDomain::contains(double x) const {
  if (!std::isfinite(x)) return false;
  if (lo_open ? !(x > lo) : !(x >= lo)) return false;
  if (hi_open ? !(x < hi) : !(x <= hi)) return false;
  return std::none_of(poles.begin(), poles.end(), [&](double p) { return std::abs(x - p) < 1e-14; });
}

const std::array<ChartId, 11>& all_charts() {
  static const std::array<ChartId, 11> ids = [] {
    std::array<ChartId, 11> out{};
    for (std::size_t i = 0; i < 11; ++i) out[i] = kCharts[i].id;
    return out;
  }();
  return ids;
}

int chart_number(ChartId id) { return static_cast<int>(id); }

std::string_view chart_name(ChartId id) { return info(id).name; }

std::optional<ChartId> chart_from_name(std::string_view name) {
  for (const auto& c : kCharts) {
    if (c.name == name || std::to_string(static_cast<int>(c.id)) == name) return c.id;
  }
  return std::nullopt;
}

SplitClass split_class(ChartId id) { return info(id).split; }

std::string_view split_class_name(SplitClass c) {
  switch (c) {
    case SplitClass::CompletelySplit: return "completely_split";
    case SplitClass::PartiallySplit: return "partially_split";
    case SplitClass::NonSplit: return "non_split";
  }
  return "";
}

std::vector<std::string> chart_parameter_names(ChartId id) {
  switch (id) {
    case ChartId::EllipticCylindrical:
    case ChartId::ProlateSpheroidal:
    case ChartId::OblateSpheroidal:
    case ChartId::Paraboloidal: return {"a"};
    case ChartId::Ellipsoidal:
    case ChartId::Conical: return {"k"};
    default: return {};
  }
}

std::string chart_range_description(ChartId id) {
  switch (id) {
    case ChartId::Cartesian: return "w1, w2, w3 real";
    case ChartId::Cylindrical: return "w1, w2, w3 real (w2 periodic)";
    case ChartId::ParabolicCylindrical: return "w1 >= 0; w2, w3 real";
    case ChartId::EllipticCylindrical: return "w1 >= 0; w2 real (periodic); w3 real";
    case ChartId::Spherical: return "w1 > 0 (inverse radius); w2 real; w3 real (periodic)";
    case ChartId::ProlateSpheroidal: return "w1 > 0; w2 real; w3 real (periodic)";
    case ChartId::OblateSpheroidal: return "-pi/2 < w1 < pi/2; w2 real; w3 real (periodic)";
    case ChartId::Parabolic: return "w1, w2, w3 real (w3 periodic)";
    case ChartId::Paraboloidal: return "w1, w2, w3 real";
    case ChartId::Ellipsoidal:
      return "w1 = p1 in [-K, K]; w2 = K + i p2, p2 in [-K', K']; w3 = p3 + i K', p3 in [-K, K], p3 != 0";
    case ChartId::Conical: return "w1 = p1 > 0; w2 = p2 in (-2K, 2K); w3 = K + i p3, p3 in [0, 2K')";
  }
  return "";
}

std::array<AxisDomain, 3> chart_domain(ChartId id, const ChartParams& params) {
  const AxisDomain line{-kInf, kInf, true, true, {}};
  const AxisDomain positive{0.0, kInf, true, true, {0.0}};
  const AxisDomain nonneg{0.0, kInf, false, true, {}};
  const double big_k = params.modulus.quarter_period();
  const double big_kp = params.modulus.complementary_quarter_period();
  switch (id) {
    case ChartId::Cartesian:
    case ChartId::Cylindrical:
    case ChartId::Parabolic:
    case ChartId::Paraboloidal: return {line, line, line};
    case ChartId::ParabolicCylindrical:
    case ChartId::EllipticCylindrical: return {nonneg, line, line};
    case ChartId::Spherical:
    case ChartId::ProlateSpheroidal: return {positive, line, line};
    case ChartId::OblateSpheroidal:
      return {AxisDomain{-kPi / 2, kPi / 2, true, true, {}}, line, line};
    case ChartId::Ellipsoidal:
      return {AxisDomain{-big_k, big_k, false, false, {}}, AxisDomain{-big_kp, big_kp, false, false, {}},
              AxisDomain{-big_k, big_k, false, false, {0.0}}};
    case ChartId::Conical:
      return {positive, AxisDomain{-2 * big_k, 2 * big_k, true, true, {}},
              AxisDomain{0.0, 2 * big_kp, false, true, {}}};
  }
  throw std::invalid_argument("unknown chart");
}

bool in_domain(ChartId id, const ChartParams& params, const OmegaPoint& p) {
  const auto dom = chart_domain(id, params);
  for (int a = 0; a < 3; ++a)
    if (!dom[a].contains(p[a])) return false;
  return true;
}

std::array<Interval, 3> sample_box(ChartId id, const ChartParams& params) {
  constexpr double m = 0.05;
  const double big_k = params.modulus.quarter_period();
  const double big_kp = params.modulus.complementary_quarter_period();
  switch (id) {
    case ChartId::Cartesian: return {{{-2, 2}, {-2, 2}, {-2, 2}}};
    case ChartId::Cylindrical: return {{{-1, 1}, {-3, 3}, {-2, 2}}};
    case ChartId::ParabolicCylindrical: return {{{m, 2}, {-2, 2}, {-2, 2}}};
    case ChartId::EllipticCylindrical: return {{{m, 1.5}, {m, kPi - m}, {-2, 2}}};
    case ChartId::Spherical: return {{{0.25, 2}, {-2, 2}, {-3, 3}}};
    case ChartId::ProlateSpheroidal: return {{{0.1, 1.5}, {-2, 2}, {-3, 3}}};
    case ChartId::OblateSpheroidal: return {{{m, 1.4}, {-2, 2}, {-3, 3}}};
    case ChartId::Parabolic: return {{{-1, 1}, {-1, 1}, {-3, 3}}};
    case ChartId::Paraboloidal: return {{{m, 1}, {m, kPi / 2 - m}, {m, 1}}};
    case ChartId::Ellipsoidal: return {{{-big_k + m, big_k - m}, {m, big_kp - m}, {0.25, big_k - m}}};
    case ChartId::Conical: return {{{0.25, 2}, {-big_k + m, big_k - m}, {m, big_kp - m}}};
  }
  throw std::invalid_argument("unknown chart");
}

Vec3 forward_map(ChartId id, const ChartParams& params, const OmegaPoint& p) {
  require_domain(id, params, p);
  const double a = params.a;
  const double w1 = p[0], w2 = p[1], w3 = p[2];
  switch (id) {
    case ChartId::Cartesian: return {w1, w2, w3};
    case ChartId::Cylindrical: {
      const double r = std::exp(w1);
      return {r * std::cos(w2), r * std::sin(w2), w3};
    }
    case ChartId::ParabolicCylindrical: return {0.5 * (w1 * w1 - w2 * w2), w1 * w2, w3};
    case ChartId::EllipticCylindrical:
      return {a * std::cosh(w1) * std::cos(w2), a * std::sinh(w1) * std::sin(w2), w3};
    case ChartId::Spherical: {
      const double r = sech(w2) / w1;
      return {r * std::cos(w3), r * std::sin(w3), std::tanh(w2) / w1};
    }
    case ChartId::ProlateSpheroidal: {
      const double r = a * sech(w2) / std::sinh(w1);
      return {r * std::cos(w3), r * std::sin(w3), a * std::tanh(w2) / std::tanh(w1)};
    }
    case ChartId::OblateSpheroidal: {
      const double r = a * sech(w2) / std::cos(w1);
      return {r * std::cos(w3), r * std::sin(w3), a * std::tan(w1) * std::tanh(w2)};
    }
    case ChartId::Parabolic: {
      const double r = std::exp(w1 + w2);
      return {r * std::cos(w3), r * std::sin(w3), 0.5 * (std::exp(2 * w1) - std::exp(2 * w2))};
    }
    case ChartId::Paraboloidal:
      return {2 * a * std::cosh(w1) * std::cos(w2) * std::sinh(w3),
              2 * a * std::sinh(w1) * std::sin(w2) * std::cosh(w3),
              0.5 * a * (std::cosh(2 * w1) + std::cos(2 * w2) - std::cosh(2 * w3))};
    case ChartId::Ellipsoidal:
    case ChartId::Conical: {
      const ComplexMap m = complex_map(id, params, p);
      Vec3 z;
      for (int i = 0; i < 3; ++i) z[i] = checked_real(m.z[i], std::abs(m.z[i]));
      return z;
    }
  }
  throw std::invalid_argument("unknown chart");
}

Vec3 stackel_row(ChartId id, const ChartParams& params, int axis, double x) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("stackel_row: axis must be 0, 1 or 2");
  const double a = params.a, a2 = a * a;
  switch (id) {
    case ChartId::Cartesian: {
      Vec3 r;
      r[axis] = 1.0;
      return r;
    }
    case ChartId::Cylindrical:
      if (axis == 0) return {std::exp(2 * x), -1, 0};
      return axis == 1 ? Vec3{0, 1, 0} : Vec3{0, 0, 1};
    case ChartId::ParabolicCylindrical:
      if (axis == 0) return {x * x, -1, 0};
      return axis == 1 ? Vec3{x * x, 1, 0} : Vec3{0, 0, 1};
    case ChartId::EllipticCylindrical:
      if (axis == 0) return {a2 * std::pow(std::cosh(x), 2), 1, 0};
      return axis == 1 ? Vec3{-a2 * std::pow(std::cos(x), 2), -1, 0} : Vec3{0, 0, 1};
    case ChartId::Spherical:
      if (axis == 0) return {std::pow(x, -4), -std::pow(x, -2), 0};
      return axis == 1 ? Vec3{0, std::pow(std::cosh(x), -2), -1} : Vec3{0, 0, 1};
    case ChartId::ProlateSpheroidal:
      if (axis == 0) return {a2 * std::pow(std::sinh(x), -4), -std::pow(std::sinh(x), -2), -1};
      return axis == 1 ? Vec3{a2 * std::pow(std::cosh(x), -4), std::pow(std::cosh(x), -2), -1} : Vec3{0, 0, 1};
    case ChartId::OblateSpheroidal:
      if (axis == 0) return {a2 * std::pow(std::cos(x), -4), -std::pow(std::cos(x), -2), 1};
      return axis == 1 ? Vec3{-a2 * std::pow(std::cosh(x), -4), std::pow(std::cosh(x), -2), -1} : Vec3{0, 0, 1};
    case ChartId::Parabolic:
      if (axis == 0) return {std::exp(4 * x), -std::exp(2 * x), -1};
      return axis == 1 ? Vec3{std::exp(4 * x), std::exp(2 * x), -1} : Vec3{0, 0, 1};
    case ChartId::Paraboloidal: {
      if (axis == 1) {
        const double c = std::cos(2 * x);
        return {-a2 * c * c, a * c, 1};
      }
      const double c = std::cosh(2 * x);
      return axis == 0 ? Vec3{a2 * c * c, -a * c, -1} : Vec3{a2 * c * c, a * c, -1};
    }
    case ChartId::Ellipsoidal:
    case ChartId::Conical: {
      if (id == ChartId::Conical && axis == 0) return {std::pow(x, -4), -std::pow(x, -2), 0};
      OmegaPoint p;
      p[axis] = x;
      if (id == ChartId::Conical) p[0] = 1.0;
      const ComplexPoint cp = complexify(id, params, p);
      const double k = params.modulus.k();
      const Complex sn = jacobi_sn_cn_dn(cp.w[axis], k).sn;
      const double s = checked_real(sn, std::abs(sn));
      const double jac2 = (cp.dw[axis] * cp.dw[axis]).real();  // +1 or -1
      if (id == ChartId::Ellipsoidal) return jac2 * k * k * Vec3{s * s * s * s, s * s, 1.0};
      return jac2 * Vec3{0.0, -k * k * s * s, 1.0};
    }
  }
  throw std::invalid_argument("unknown chart");
}

Mat3 stackel_matrix(ChartId id, const ChartParams& params, const OmegaPoint& p) {
  require_domain(id, params, p);
  return Mat3::from_rows(stackel_row(id, params, 0, p[0]), stackel_row(id, params, 1, p[1]),
                         stackel_row(id, params, 2, p[2]));
}

Mat3 jacobian(ChartId id, const ChartParams& params, const OmegaPoint& p) {
  require_domain(id, params, p);
  const double a = params.a;
  const double w1 = p[0], w2 = p[1], w3 = p[2];
  Mat3 j;
  auto set_cols = [&](const Vec3& d1, const Vec3& d2, const Vec3& d3) { j = Mat3::from_cols(d1, d2, d3); };
  switch (id) {
    case ChartId::Cartesian: j = Mat3::identity(); break;
    case ChartId::Cylindrical: {
      const double r = std::exp(w1), c = std::cos(w2), s = std::sin(w2);
      set_cols({r * c, r * s, 0}, {-r * s, r * c, 0}, {0, 0, 1});
      break;
    }
    case ChartId::ParabolicCylindrical: set_cols({w1, w2, 0}, {-w2, w1, 0}, {0, 0, 1}); break;
    case ChartId::EllipticCylindrical: {
      const double ch = std::cosh(w1), sh = std::sinh(w1), c = std::cos(w2), s = std::sin(w2);
      set_cols({a * sh * c, a * ch * s, 0}, {-a * ch * s, a * sh * c, 0}, {0, 0, 1});
      break;
    }
    case ChartId::Spherical: {
      const double se = sech(w2), th = std::tanh(w2), c = std::cos(w3), s = std::sin(w3);
      const double inv = 1.0 / w1;
      set_cols({-inv * inv * se * c, -inv * inv * se * s, -inv * inv * th},
               {-inv * se * th * c, -inv * se * th * s, inv * se * se}, {-inv * se * s, inv * se * c, 0});
      break;
    }
    case ChartId::ProlateSpheroidal: {
      const double cs = 1.0 / std::sinh(w1), ct = 1.0 / std::tanh(w1);
      const double se = sech(w2), th = std::tanh(w2), c = std::cos(w3), s = std::sin(w3);
      set_cols({-a * cs * ct * se * c, -a * cs * ct * se * s, -a * cs * cs * th},
               {-a * cs * se * th * c, -a * cs * se * th * s, a * ct * se * se},
               {-a * cs * se * s, a * cs * se * c, 0});
      break;
    }
    case ChartId::OblateSpheroidal: {
      const double sc = 1.0 / std::cos(w1), tn = std::tan(w1);
      const double se = sech(w2), th = std::tanh(w2), c = std::cos(w3), s = std::sin(w3);
      set_cols({a * sc * tn * se * c, a * sc * tn * se * s, a * sc * sc * th},
               {-a * sc * se * th * c, -a * sc * se * th * s, a * tn * se * se},
               {-a * sc * se * s, a * sc * se * c, 0});
      break;
    }
    case ChartId::Parabolic: {
      const double r = std::exp(w1 + w2), c = std::cos(w3), s = std::sin(w3);
      set_cols({r * c, r * s, std::exp(2 * w1)}, {r * c, r * s, -std::exp(2 * w2)}, {-r * s, r * c, 0});
      break;
    }
    case ChartId::Paraboloidal: {
      const double ch1 = std::cosh(w1), sh1 = std::sinh(w1), c2 = std::cos(w2), s2 = std::sin(w2);
      const double ch3 = std::cosh(w3), sh3 = std::sinh(w3);
      set_cols({2 * a * sh1 * c2 * sh3, 2 * a * ch1 * s2 * ch3, a * std::sinh(2 * w1)},
               {-2 * a * ch1 * s2 * sh3, 2 * a * sh1 * c2 * ch3, -a * std::sin(2 * w2)},
               {2 * a * ch1 * c2 * ch3, 2 * a * sh1 * s2 * sh3, -a * std::sinh(2 * w3)});
      break;
    }
    case ChartId::Ellipsoidal:
    case ChartId::Conical: {
      const ComplexMap m = complex_map(id, params, p);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) j(r, c) = checked_real(m.dz[r][c], std::abs(m.dz[r][c]));
      break;
    }
  }
  const double scale = norm(j.col(0)) * norm(j.col(1)) * norm(j.col(2));
  if (!(std::abs(det(j)) > 1e-10 * scale) || !all_finite(j)) {
    throw CoordinateSingularity("chart " + std::string(chart_name(id)) + ": singular Jacobian");
  }
  return j;
}

Vec3 grad_norms(ChartId id, const ChartParams& params, const OmegaPoint& p) {
  const Mat3 ji = inverse(jacobian(id, params, p));
  return {dot(ji.row(0), ji.row(0)), dot(ji.row(1), ji.row(1)), dot(ji.row(2), ji.row(2))};
}

double orthogonality_defect(ChartId id, const ChartParams& params, const OmegaPoint& p) {
  const Mat3 ji = inverse(jacobian(id, params, p));
  const Mat3 g = ji * transpose(ji);
  return std::max({std::abs(g(0, 1)), std::abs(g(0, 2)), std::abs(g(1, 2))});
}

namespace {

Vec3 second_difference_laplacian(ChartId id, const ChartParams& params, const OmegaPoint& p, const Vec3& z,
                                 double h) {
  Vec3 lap;
  for (int j = 0; j < 3; ++j) {
    Vec3 zp = z, zm = z;
    zp[j] += h;
    zm[j] -= h;
    const OmegaPoint wp = invert_chart(id, params, zp, p);
    const OmegaPoint wm = invert_chart(id, params, zm, p);
    for (int a = 0; a < 3; ++a) lap[a] += (wp[a] - 2.0 * p[a] + wm[a]) / (h * h);
  }
  return lap;
}

}  // namespace

Vec3 laplacian_defect(ChartId id, const ChartParams& params, const OmegaPoint& p, double h) {
  if (id == ChartId::Cartesian) return {0.0, 0.0, 0.0};
  const Vec3 z = forward_map(id, params, p);
  // Richardson step removes the h^2 term
  const Vec3 coarse = second_difference_laplacian(id, params, p, z, h);
  const Vec3 fine = second_difference_laplacian(id, params, p, z, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

std::vector<OmegaPoint> sample_domain(ChartId id, const ChartParams& params, std::size_t n,
                                      std::uint64_t seed) {
  const auto box = sample_box(id, params);
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<OmegaPoint> out(n);
  for (auto& pt : out)
    for (int a = 0; a < 3; ++a) pt[a] = box[a].lo + (box[a].hi - box[a].lo) * unit();
  return out;
}

namespace {

double nearest_branch(double angle, double target) {
  const double two_pi = 2.0 * kPi;
  return angle + two_pi * std::round((target - angle) / two_pi);
}

double distance(const OmegaPoint& a, const OmegaPoint& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

OmegaPoint newton_invert(ChartId id, const ChartParams& params, const Vec3& z, const OmegaPoint& guess) {
  const double ztol = 1e-10 * std::max(1.0, norm(z));
  OmegaPoint w = guess;
  Vec3 r = forward_map(id, params, w) - z;
  double rn = norm(r);
  for (int it = 0; it < 50; ++it) {
    if (rn <= 1e-15 * std::max(1.0, norm(z))) return w;
    const Mat3 j = jacobian(id, params, w);
    const Vec3 step = inverse(j) * r;
    double lambda = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt, lambda *= 0.5) {
      OmegaPoint trial = w;
      for (int a = 0; a < 3; ++a) trial[a] -= lambda * step[a];
      if (!in_domain(id, params, trial)) continue;
      Vec3 rt;
      try {
        rt = forward_map(id, params, trial) - z;
      } catch (const std::exception&) {
        continue;
      }
      const double rtn = norm(rt);
      if (rtn < rn || (rtn <= ztol && lambda == 1.0)) {
        const double moved = lambda * norm(step);
        w = trial;
        r = rt;
        const bool stalled = rtn >= rn;
        rn = rtn;
        accepted = true;
        if (stalled || moved <= 1e-16 * (1.0 + std::hypot(w[0], w[1], w[2]))) {
          if (rn <= ztol) return w;
        }
        break;
      }
    }
    if (!accepted) break;
  }
  if (rn <= ztol) return w;
  throw ConvergenceFailure("invert_chart: Newton iteration did not converge", w.w);
}

}  // namespace

OmegaPoint invert_chart(ChartId id, const ChartParams& params, const Vec3& z, const OmegaPoint& guess) {
  OmegaPoint w;
  switch (id) {
    case ChartId::Cartesian: return {{z[0], z[1], z[2]}};
    case ChartId::Cylindrical: {
      const double rho = std::hypot(z[0], z[1]);
      if (rho == 0.0) throw CoordinateSingularity("cylindrical: point on the axis");
      return {{std::log(rho), nearest_branch(std::atan2(z[1], z[0]), guess[1]), z[2]}};
    }
    case ChartId::ParabolicCylindrical: {
      const Complex root = std::sqrt(2.0 * Complex{z[0], z[1]});
      OmegaPoint a{{root.real(), root.imag(), z[2]}};
      OmegaPoint b{{-root.real(), -root.imag(), z[2]}};
      if (std::abs(root) == 0.0) throw CoordinateSingularity("parabolic cylindrical: point on the focal line");
      return (distance(a, guess) <= distance(b, guess) || !in_domain(id, params, b)) ? a : b;
    }
    case ChartId::Spherical: {
      const double r = norm(z);
      const double rho = std::hypot(z[0], z[1]);
      if (r == 0.0 || rho == 0.0) throw CoordinateSingularity("spherical: point on the polar axis");
      return {{1.0 / r, std::atanh(z[2] / r), nearest_branch(std::atan2(z[1], z[0]), guess[2])}};
    }
    default: break;
  }
  if (!in_domain(id, params, guess)) throw std::out_of_range("invert_chart: guess outside the chart range");
  w = newton_invert(id, params, z, guess);
  return w;
}

}  // namespace sepfp
