#include "sepfp/drift.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sepfp {

namespace {

struct CaseName {
  DriftCase kind;
  std::string_view name;
};

constexpr std::array<CaseName, 6> kCaseNames{{
    {DriftCase::SymmetricDistinct, "SymmetricDistinct"},
    {DriftCase::SymmetricDoubled, "SymmetricDoubled"},
    {DriftCase::Isotropic, "Isotropic"},
    {DriftCase::RotatingIsotropic, "RotatingIsotropic"},
    {DriftCase::RotatingAxial, "RotatingAxial"},
    {DriftCase::NotSeparable, "NotSeparable"},
}};

class BorderlineWatch {
 public:
  BorderlineWatch(double threshold, std::vector<std::string>& out) : thr_(threshold), out_(out) {}

  void check(std::string_view quantity, double value) {
    if (value > 0.1 * thr_ && value <= 10.0 * thr_) {
      std::ostringstream msg;
      msg.precision(3);
      msg << "borderline: " << quantity << " = " << value << " is within a factor 10 of the threshold " << thr_;
      out_.push_back(msg.str());
    }
  }

 private:
  double thr_;
  std::vector<std::string>& out_;
};

Mat3 symmetric_frame(const Mat3& q) { return q * transpose(ttilde(0.0, 0.0, 0.0)); }

}  // namespace

std::string_view drift_case_name(DriftCase c) {
  for (const auto& n : kCaseNames)
    if (n.kind == c) return n.name;
  return "";
}

std::optional<DriftCase> drift_case_from_name(std::string_view name) {
  for (const auto& n : kCaseNames)
    if (n.name == name) return n.kind;
  return std::nullopt;
}

Mat3 axial_frame_matrix(const AxialFrameData& d) {
  const double e1 = d.eps1, e2 = d.eps2;
  const double c = std::cos(d.theta), s = std::sin(d.theta);
  return Mat3::from_rows({e1 * c, -e1 * s, 0.0}, {0.0, 0.0, -e1 * e2}, {e2 * s, e2 * c, 0.0});
}

Classification classify(const DriftSpec& spec, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("classify: tolerance must be positive");
  if (!all_finite(spec.m) || !all_finite(spec.v)) throw std::invalid_argument("classify: non-finite drift");

  Classification out;
  out.tol = tol;
  const double thr = tol * std::max(1.0, norm(spec.m));
  BorderlineWatch watch(thr, out.warnings);

  const SymAntisym parts = sym_antisym_split(spec.m);
  const Vec3 axis = antisym_axis(parts.anti, 1.0);
  const double rate = norm(axis);
  const SymmetricEigen eig = symmetric_eigen(parts.sym, 1.0);
  const Vec3& lam = eig.values;
  const Mat3& q = eig.vectors;

  const double spread = lam[2] - lam[0];
  const double gap_low = lam[1] - lam[0], gap_high = lam[2] - lam[1];
  watch.check("rotation rate |axis(A)|", rate);
  watch.check("eigenvalue spread", spread);
  watch.check("lower eigenvalue gap", gap_low);
  watch.check("upper eigenvalue gap", gap_high);

  enum class Spectrum { Single, Doubled, Distinct };
  Spectrum spectrum = Spectrum::Distinct;
  Vec3 l = lam;
  Mat3 basis = q;  // doubled pair in columns 0-1, simple eigenvector in column 2
  if (spread <= thr) {
    spectrum = Spectrum::Single;
    const double mean = (lam[0] + lam[1] + lam[2]) / 3.0;
    l = {mean, mean, mean};
  } else if (std::min(gap_low, gap_high) <= thr) {
    spectrum = Spectrum::Doubled;
    if (gap_low <= gap_high) {
      const double d = 0.5 * (lam[0] + lam[1]);
      l = {d, d, lam[2]};
    } else {
      const double d = 0.5 * (lam[1] + lam[2]);
      l = {d, d, lam[0]};
      basis = Mat3::from_cols(q.col(1), q.col(2), q.col(0));
    }
  }

  if (rate <= thr) {
    out.kind = spectrum == Spectrum::Single    ? DriftCase::Isotropic
               : spectrum == Spectrum::Doubled ? DriftCase::SymmetricDoubled
                                               : DriftCase::SymmetricDistinct;
    out.l = l;
    out.c1 = symmetric_frame(spectrum == Spectrum::Single ? Mat3::identity() : basis);
    return out;
  }

  const Vec3 pole = (-1.0 / rate) * axis;
  if (spectrum == Spectrum::Single) {
    out.kind = DriftCase::RotatingIsotropic;
    out.b = rate;
    out.l = l;
    out.c1 = rotation_with_third_column(pole);
    return out;
  }
  if (spectrum == Spectrum::Doubled) {
    const double misalignment = norm(cross(basis.col(2), axis));
    watch.check("misalignment |simple eigenvector x axis(A)|", misalignment);
    if (misalignment <= thr) {
      out.kind = DriftCase::RotatingAxial;
      out.b = rate;
      out.l = l;
      out.c1 = rotation_with_third_column(pole);
      out.c2_axial = AxialFrameData{};
      out.c2 = axial_frame_matrix(*out.c2_axial);
      return out;
    }
  }
  out.kind = DriftCase::NotSeparable;
  out.l = lam;
  return out;
}

Mat3 reconstruct(const Classification& c) {
  if (c.kind == DriftCase::NotSeparable) throw std::invalid_argument("reconstruct: drift is not separable");
  const Mat3 t0 = frame_rotation(c, 0.0);
  return c.c1 * ttilde_generator(c.b, c.s) * transpose(c.c1) + t0 * Mat3::diag(c.l) * transpose(t0);
}

std::vector<ChartId> admissible_charts(const Classification& c) {
  switch (c.kind) {
    case DriftCase::SymmetricDistinct: return {ChartId::Cartesian};
    case DriftCase::SymmetricDoubled:
    case DriftCase::RotatingAxial:
      return {ChartId::Cartesian, ChartId::Cylindrical, ChartId::ParabolicCylindrical, ChartId::EllipticCylindrical};
    case DriftCase::Isotropic:
    case DriftCase::RotatingIsotropic: {
      const auto& all = all_charts();
      return {all.begin(), all.end()};
    }
    case DriftCase::NotSeparable: break;
  }
  throw std::invalid_argument("admissible_charts: drift is not separable");
}

bool is_admissible(const Classification& c, ChartId id) {
  if (c.kind == DriftCase::NotSeparable) return false;
  const auto ids = admissible_charts(c);
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

void check_scale_constants(ChartId id, const Vec3& c) {
  if (!(c[0] > 0.0 && c[1] > 0.0 && c[2] > 0.0) || !all_finite(c)) {
    throw std::invalid_argument("scale constants must be positive");
  }
  switch (split_class(id)) {
    case SplitClass::CompletelySplit: return;
    case SplitClass::PartiallySplit:
      if (c[0] != c[1]) throw std::invalid_argument("partially split charts need c1 = c2");
      return;
    case SplitClass::NonSplit:
      if (c[0] != c[1] || c[1] != c[2]) throw std::invalid_argument("non-split charts need c1 = c2 = c3");
      return;
  }
}

Vec3 FrameAtTime::to_chart(const Vec3& x) const {
  const Vec3 y = transpose(t_rot) * (x - w);
  return {y[0] / h(0, 0), y[1] / h(1, 1), y[2] / h(2, 2)};
}

Mat3 frame_rotation(const Classification& c, double t) { return c.c1 * ttilde(c.b, c.s, t) * c.c2; }

Mat3 frame_scale(const Classification& c, double t) {
  return Mat3::diag({c.c[0] * std::exp(c.l[0] * t), c.c[1] * std::exp(c.l[1] * t), c.c[2] * std::exp(c.l[2] * t)});
}

FrameAtTime frame_at(const Classification& c, const DriftSpec& spec, const Vec3& w0, double t) {
  if (c.kind == DriftCase::NotSeparable) throw std::invalid_argument("frame_at: drift is not separable");
  return {frame_rotation(c, t), frame_scale(c, t), affine_flow(spec.m, spec.v, t, w0), t};
}

Vec3 default_w0(const DriftSpec& spec) {
  const double d = det(spec.m);
  const double scale = std::pow(std::max(1e-300, norm(spec.m)), 3);
  if (std::abs(d) <= 1e-12 * scale) return {};
  return -1.0 * (inverse(spec.m) * spec.v);
}

Vec3 euler_constants(const Mat3& generator) { return {generator(1, 0), generator(2, 0), generator(2, 1)}; }

namespace {

double unwrap(double prev, double next) {
  const double two_pi = 2.0 * std::numbers::pi;
  return next + two_pi * std::round((prev - next) / two_pi);
}

}  // namespace

double euler_ode_residual(const std::vector<EulerSample>& path, const Vec3& k) {
  if (path.size() < 3) throw std::invalid_argument("euler_ode_residual: need at least three samples");
  std::vector<std::array<double, 3>> ang(path.size());
  ang[0] = {path[0].angles.alpha, path[0].angles.beta, path[0].angles.gamma};
  for (std::size_t i = 1; i < path.size(); ++i) {
    const auto& a = path[i].angles;
    if (!(path[i].t > path[i - 1].t)) throw std::invalid_argument("euler_ode_residual: times must increase");
    ang[i] = {unwrap(ang[i - 1][0], a.alpha), unwrap(ang[i - 1][1], a.beta), unwrap(ang[i - 1][2], a.gamma)};
  }
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const double hm = path[i].t - path[i - 1].t, hp = path[i + 1].t - path[i].t;
    std::array<double, 3> d{};
    for (int j = 0; j < 3; ++j) {
      // three-point derivative on an uneven grid
      d[j] = (hm * hm * (ang[i + 1][j] - ang[i][j]) + hp * hp * (ang[i][j] - ang[i - 1][j])) / (hm * hp * (hm + hp));
    }
    const double al = ang[i][0], ga = ang[i][2];
    const double r1 = d[0] + d[1] * std::cos(ga) - k[0];
    const double r2 = d[1] * std::cos(al) * std::sin(ga) - d[2] * std::sin(al) - k[1];
    const double r3 = d[1] * std::sin(al) * std::sin(ga) + d[2] * std::cos(al) - k[2];
    worst = std::max({worst, std::abs(r1), std::abs(r2), std::abs(r3)});
  }
  return worst;
}

}  // namespace sepfp
