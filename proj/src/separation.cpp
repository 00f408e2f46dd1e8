#include "sepfp/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "sepfp/errors.hpp"

namespace sepfp {

namespace odeint = boost::numeric::odeint;

std::array<bool, 3> active_time_terms(ChartId id) {
  switch (split_class(id)) {
    case SplitClass::CompletelySplit: return {true, true, true};
    case SplitClass::PartiallySplit: return {true, false, true};
    case SplitClass::NonSplit: return {true, false, false};
  }
  return {false, false, false};
}

Phi0::Phi0(const Classification& c, ChartId chart, const SpectralParams& lambda)
    : l_(c.l), t0_(-(c.l[0] + c.l[1] + c.l[2])) {
  const auto active = active_time_terms(chart);
  for (int i = 0; i < 3; ++i) weight_[i] = active[i] ? lambda[i] / (c.c[i] * c.c[i]) : 0.0;
}

double Phi0::operator()(double t) const {
  double exponent = t0_ * t;
  for (int i = 0; i < 3; ++i) {
    if (weight_[i] == 0.0) continue;
    // (exp(-2 l t) - 1) / (2 l), and -t at l = 0
    const double x = -2.0 * l_[i] * t;
    const double frac = l_[i] == 0.0 ? -t : std::expm1(x) / (2.0 * l_[i]);
    exponent += weight_[i] * frac;
  }
  return std::exp(exponent);
}

double Phi0::log_derivative(double t) const {
  double d = t0_;
  for (int i = 0; i < 3; ++i) d -= weight_[i] * std::exp(-2.0 * l_[i] * t);
  return d;
}

namespace {

using State = std::array<double, 2>;

void require_regular_interval(ChartId chart, const ChartParams& params, int axis, const Interval& iv) {
  const AxisDomain dom = chart_domain(chart, params)[static_cast<std::size_t>(axis)];
  std::ostringstream msg;
  msg << "chart " << chart_name(chart) << " axis " << axis + 1 << ": interval [" << iv.lo << ", " << iv.hi << "]";
  if (!(iv.lo < iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
    throw std::invalid_argument(msg.str() + " is empty or unbounded");
  }
  if (!dom.contains(iv.lo) || !dom.contains(iv.hi)) throw CoordinateSingularity(msg.str() + " leaves the chart range");
  for (double pole : dom.poles) {
    if (pole >= iv.lo && pole <= iv.hi) throw CoordinateSingularity(msg.str() + " contains a coordinate singularity");
  }
}

// Quintic Hermite basis on [0, 1]: values and s-derivatives.
struct Basis {
  std::array<double, 6> v, d;
};

Basis quintic(double s) {
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  Basis b;
  b.v = {1 - 10 * s3 + 15 * s4 - 6 * s5,
         s - 6 * s3 + 8 * s4 - 3 * s5,
         0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5,
         10 * s3 - 15 * s4 + 6 * s5,
         -4 * s3 + 7 * s4 - 3 * s5,
         0.5 * s3 - s4 + 0.5 * s5};
  b.d = {-30 * s2 + 60 * s3 - 30 * s4,
         1 - 18 * s2 + 32 * s3 - 15 * s4,
         s - 4.5 * s2 + 6 * s3 - 2.5 * s4,
         30 * s2 - 60 * s3 + 30 * s4,
         -12 * s2 + 28 * s3 - 15 * s4,
         1.5 * s2 - 4 * s3 + 2.5 * s4};
  return b;
}

}  // namespace

PhiTable PhiTable::integrate(ChartId chart, const ChartParams& params, int axis, const SpectralParams& lambda,
                             const Interval& interval, std::optional<PhiInitial> ic, double tol) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("PhiTable: axis must be 0, 1 or 2");
  if (!(tol >= 1e-12 && tol <= 1e-4)) throw std::invalid_argument("PhiTable: tol must lie in [1e-12, 1e-4]");
  require_regular_interval(chart, params, axis, interval);
  const PhiInitial start = ic.value_or(PhiInitial{interval.mid()});
  if (!interval.contains(start.position)) throw std::invalid_argument("PhiTable: initial point outside the interval");

  PhiTable table;
  table.chart_ = chart;
  table.params_ = params;
  table.axis_ = axis;
  table.lambda_ = {lambda[0], lambda[1], lambda[2]};
  table.interval_ = interval;
  table.ic_ = start;

  const double span = interval.hi - interval.lo;
  const double max_step = span / 200.0;
  // power-of-two normalization keeps step selection independent of the ic scale
  int exponent = 0;
  std::frexp(std::max(std::abs(start.value), std::abs(start.slope)), &exponent);
  const double scale = std::ldexp(1.0, exponent);

  // Each sweep runs forward in sigma = |w - start| with w = start + dir * sigma.
  auto sweep = [&](double to) {
    std::vector<Node> out;
    if (to == start.position) return out;
    const double dir = to > start.position ? 1.0 : -1.0;
    const auto rhs = [&](const State& y, State& dy, double sigma) {
      dy[0] = y[1];
      dy[1] = table.coefficient(start.position + dir * sigma) * y[0];
    };
    State y{start.value / scale, dir * start.slope / scale};
    auto stepper = odeint::make_controlled(tol, tol, max_step, odeint::runge_kutta_dopri5<State>());
    try {
      odeint::integrate_adaptive(stepper, rhs, y, 0.0, std::abs(to - start.position), max_step / 16.0,
                                 [&](const State& s, double sigma) {
                                   if (!std::isfinite(s[0]) || !std::isfinite(s[1])) {
                                     throw std::overflow_error("non-finite solution");
                                   }
                                   out.push_back({start.position + dir * sigma, scale * s[0], scale * dir * s[1], 0.0});
                                 });
    } catch (const std::exception& e) {
      throw ConvergenceFailure(std::string("PhiTable: integration failed: ") + e.what(),
                               {scale * y[0], scale * dir * y[1], out.empty() ? start.position : out.back().w});
    }
    return out;
  };

  std::vector<Node> down = sweep(interval.lo);
  std::vector<Node> up = sweep(interval.hi);
  std::reverse(down.begin(), down.end());
  if (!down.empty() && !up.empty()) down.pop_back();  // both sweeps record the initial point
  table.nodes_ = std::move(down);
  table.nodes_.insert(table.nodes_.end(), up.begin(), up.end());
  if (table.nodes_.empty()) table.nodes_.push_back({start.position, start.value, start.slope, 0.0});
  // snap the ends so the range check is exact
  table.nodes_.front().w = interval.lo;
  table.nodes_.back().w = interval.hi;
  for (auto& n : table.nodes_) n.ddf = table.coefficient(n.w) * n.f;
  return table;
}

double PhiTable::coefficient(double w) const {
  return dot(stackel_row(chart_, params_, axis_, w), lambda_);
}

PhiTable::Local PhiTable::locate(double w) const {
  if (!(w >= interval_.lo && w <= interval_.hi)) {
    std::ostringstream msg;
    msg << "PhiTable axis " << axis_ + 1 << ": " << w << " outside [" << interval_.lo << ", " << interval_.hi << "]";
    throw std::out_of_range(msg.str());
  }
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), w, [](double x, const Node& n) { return x < n.w; });
  if (it == nodes_.begin()) ++it;
  if (it == nodes_.end()) --it;
  const Node* hi = &*it;
  const Node* lo = hi - 1;
  const double h = hi->w - lo->w;
  return {lo, hi, (w - lo->w) / h, h};
}

double PhiTable::value(double w) const {
  if (nodes_.size() == 1) return nodes_.front().f;
  const Local c = locate(w);
  const Basis b = quintic(c.s);
  const double h = c.h;
  // the value weights sum to 1, so constants are reproduced exactly
  return c.lo->f + (c.hi->f - c.lo->f) * b.v[3] + h * c.lo->df * b.v[1] + h * h * c.lo->ddf * b.v[2] +
         h * c.hi->df * b.v[4] + h * h * c.hi->ddf * b.v[5];
}

double PhiTable::slope(double w) const {
  if (nodes_.size() == 1) return nodes_.front().df;
  const Local c = locate(w);
  const Basis b = quintic(c.s);
  const double h = c.h;
  return ((c.hi->f - c.lo->f) * b.d[3] + h * c.lo->df * b.d[1] + h * h * c.lo->ddf * b.d[2] +
          h * c.hi->df * b.d[4] + h * h * c.hi->ddf * b.d[5]) /
         h;
}

OmegaPoint invert_coordinates(ChartId chart, const ChartParams& params, const FrameAtTime& frame, const Vec3& x,
                              const OmegaPoint& guess) {
  return invert_chart(chart, params, frame.to_chart(x), guess);
}

SeparatedSolution::SeparatedSolution(DriftSpec drift, Classification c, ChartId chart, ChartParams params,
                                     SpectralParams lambda, Vec3 w0, std::array<PhiTable, 3> tables)
    : drift_(drift),
      class_(std::move(c)),
      chart_(chart),
      params_(params),
      lambda_(lambda),
      w0_(w0),
      phi0_(class_, chart, lambda),
      tables_(std::move(tables)) {}

SeparatedSolution SeparatedSolution::build(const SolutionRequest& req) {
  Classification c = classify(req.drift, req.classify_tol);
  if (c.kind == DriftCase::NotSeparable) throw NotSeparableDrift("drift is not in a separable family");
  if (!is_admissible(c, req.chart)) {
    throw InadmissibleChart("chart " + std::string(chart_name(req.chart)) + " is not admissible for " +
                            std::string(drift_case_name(c.kind)));
  }
  if (req.c) c.c = *req.c;
  check_scale_constants(req.chart, c.c);
  const Vec3 w0 = req.w0.value_or(default_w0(req.drift));

  std::array<Interval, 3> iv;
  if (req.intervals) {
    iv = *req.intervals;
  } else {
    iv = sample_box(req.chart, req.params);
    for (auto& i : iv) {
      i.lo -= 0.025;
      i.hi += 0.025;
    }
  }
  std::array<PhiTable, 3> tables;
  for (int a = 0; a < 3; ++a) {
    tables[a] = PhiTable::integrate(req.chart, req.params, a, req.lambda, iv[a], req.ic[a], req.ode_tol);
  }
  return SeparatedSolution(req.drift, std::move(c), req.chart, req.params, req.lambda, w0, std::move(tables));
}

bool SeparatedSolution::covers(const OmegaPoint& w) const {
  for (int a = 0; a < 3; ++a)
    if (!tables_[a].interval().contains(w[a])) return false;
  return true;
}

double SeparatedSolution::at_omega(double t, const OmegaPoint& w) const {
  return phi0_(t) * tables_[0].value(w[0]) * tables_[1].value(w[1]) * tables_[2].value(w[2]);
}

FrameAtTime SeparatedSolution::frame(double t) const { return frame_at(class_, drift_, w0_, t); }

Vec3 SeparatedSolution::to_cartesian(double t, const OmegaPoint& w) const {
  return frame(t).to_cartesian(forward_map(chart_, params_, w));
}

OmegaPoint SeparatedSolution::to_omega(double t, const Vec3& x, const OmegaPoint& guess) const {
  return invert_coordinates(chart_, params_, frame(t), x, guess);
}

double SeparatedSolution::at(double t, const Vec3& x, const OmegaPoint& guess) const {
  return at_omega(t, to_omega(t, x, guess));
}

double local_scale(const SeparatedSolution& solution, double t, const OmegaPoint& w) {
  const Mat3 hj = frame_scale(solution.classification(), t) * jacobian(solution.chart(), solution.params(), w);
  return std::min({norm(hj.col(0)), norm(hj.col(1)), norm(hj.col(2))});
}

std::vector<ProbePoint> interior_points(const SeparatedSolution& solution, std::size_t n, std::uint64_t seed,
                                        const ProbeOptions& options) {
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<ProbePoint> out;
  out.reserve(n);
  for (std::size_t draws = 0; out.size() < n; ++draws) {
    if (draws >= 1000 * n) throw std::runtime_error("interior_points: too few well-conditioned points");
    OmegaPoint w;
    for (int a = 0; a < 3; ++a) {
      const Interval& iv = solution.phi(a).interval();
      const double lo = iv.lo + options.margin, hi = iv.hi - options.margin;
      w[a] = lo + (hi - lo) * unit();
    }
    const double t = options.t_lo + (options.t_hi - options.t_lo) * unit();
    try {
      if (local_scale(solution, t, w) < options.min_scale) continue;
    } catch (const CoordinateSingularity&) {
      continue;
    }
    out.push_back({t, solution.to_cartesian(t, w), w});
  }
  return out;
}

double field_residual(const std::function<double(double, const Vec3&)>& u, const DriftSpec& drift, double t,
                      const Vec3& x, double h) {
  const auto flux = [&](const Vec3& y, int j) { return (drift.m * y + drift.v)[j]; };
  const double centre = u(t, x);
  double r = (u(t + h, x) - u(t - h, x)) / (2.0 * h);
  for (int j = 0; j < 3; ++j) {
    Vec3 xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const double up = u(t, xp), um = u(t, xm);
    r += (up - 2.0 * centre + um) / (h * h);
    r += (flux(xp, j) * up - flux(xm, j) * um) / (2.0 * h);
  }
  return r;
}

double point_residual(const SeparatedSolution& solution, const DriftSpec& drift, const ProbePoint& p, double h) {
  return field_residual([&](double t, const Vec3& x) { return solution.at(t, x, p.omega); }, drift, p.t, p.x, h);
}

ResidualReport verify_residual(const SeparatedSolution& solution, const DriftSpec& drift,
                               const std::vector<ProbePoint>& points, double h, double threshold) {
  ResidualReport rep;
  rep.h = h;
  rep.threshold = threshold;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const ProbePoint& p = points[i];
    try {
      PointResidual pr{p.t, p.x, solution.at(p.t, p.x, p.omega), 0.0, 0.0};
      pr.residual = point_residual(solution, drift, p, h);
      pr.residual_half = point_residual(solution, drift, p, 0.5 * h);
      rep.points.push_back(pr);
    } catch (const std::exception& e) {
      rep.failures.push_back("point " + std::to_string(i) + ": " + e.what());
    }
  }
  for (const auto& pr : rep.points) rep.u_scale = std::max(rep.u_scale, std::abs(pr.u));
  const double floor = std::max(rep.u_scale, std::numeric_limits<double>::min());
  double sum = 0.0;
  for (const auto& pr : rep.points) {
    const double n = std::abs(pr.residual) / floor;
    rep.max_normalized = std::max(rep.max_normalized, n);
    rep.max_normalized_half = std::max(rep.max_normalized_half, std::abs(pr.residual_half) / floor);
    rep.max_normalized_extrapolated =
        std::max(rep.max_normalized_extrapolated, std::abs(pr.extrapolated()) / floor);
    sum += n;
  }
  if (!rep.points.empty()) rep.mean_normalized = sum / static_cast<double>(rep.points.size());
  rep.pass = rep.failures.empty() && !rep.points.empty() && rep.max_normalized_extrapolated <= threshold;
  return rep;
}

}  // namespace sepfp
