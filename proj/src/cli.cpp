#include "sepfp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "sepfp/charts.hpp"
#include "sepfp/drift.hpp"
#include "sepfp/errors.hpp"
#include "sepfp/rsep.hpp"
#include "sepfp/separation.hpp"
#include "sepfp/stochastic.hpp"

namespace sepfp {

using nlohmann::json;

std::string_view library_version() { return "1.0.0"; }

namespace {

/// A failure that maps to an exit code.
struct CliFailure : std::runtime_error {
  int code;
  CliFailure(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

[[noreturn]] void input_error(const std::string& what) { throw CliFailure(exit_input_error, what); }

class Log {
 public:
  enum Level { error = 0, warn = 1, info = 2, debug = 3 };

  explicit Log(std::ostream& err) : err_(err) {
    const char* env = std::getenv("SEPFP_LOG");
    if (env == nullptr) return;
    const std::string v(env);
    if (v == "error" || v == "0") level_ = error;
    else if (v == "warn" || v == "1") level_ = warn;
    else if (v == "info" || v == "2") level_ = info;
    else if (v == "debug" || v == "3") level_ = debug;
  }

  void operator()(Level at, const std::string& message) const {
    static constexpr const char* names[] = {"error", "warn", "info", "debug"};
    if (at <= level_) err_ << "sepfp " << names[at] << ": " << message << '\n';
  }

 private:
  std::ostream& err_;
  Level level_ = warn;
};

// ---- json conversion ----

json to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json to_json(const Mat3& m) { return json::array({to_json(m.row(0)), to_json(m.row(1)), to_json(m.row(2))}); }

json to_json(const Interval& iv) { return json::array({iv.lo, iv.hi}); }

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) input_error(where + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) input_error(where + ": not finite");
  return x;
}

Vec3 vec3_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) input_error(where + ": expected an array of 3 numbers");
  return {number_at(j[0], where), number_at(j[1], where), number_at(j[2], where)};
}

Mat3 mat3_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) input_error(where + ": expected 3 rows");
  return Mat3::from_rows(vec3_from(j[0], where), vec3_from(j[1], where), vec3_from(j[2], where));
}

const json& member(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) input_error("missing field \"" + key + "\"");
  return j.at(key);
}

DriftSpec drift_from(const json& j) { return {mat3_from(member(j, "M"), "M"), vec3_from(member(j, "v"), "v")}; }

json drift_json(const DriftSpec& d) { return {{"M", to_json(d.m)}, {"v", to_json(d.v)}}; }

json read_json(const std::string& path) {
  if (path.empty()) input_error("--input is required");
  std::ifstream in(path);
  if (!in) input_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    input_error(path + ": " + e.what());
  }
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) input_error("cannot write " + path);
  file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Vec3 vec3_option(const std::vector<double>& v, const std::string& name) {
  if (v.size() != 3) input_error(name + " needs three comma-separated numbers");
  return {v[0], v[1], v[2]};
}

ChartId chart_option(const std::string& name) {
  const auto id = chart_from_name(name);
  if (!id) input_error("unknown chart \"" + name + "\"");
  return *id;
}

json classification_json(const Classification& c) {
  json j;
  j["case"] = std::string(drift_case_name(c.kind));
  j["separable"] = c.kind != DriftCase::NotSeparable;
  j["tol"] = c.tol;
  j["warnings"] = c.warnings;
  if (c.kind == DriftCase::NotSeparable) return j;
  j["c1"] = to_json(c.c1);
  j["c2"] = to_json(c.c2);
  if (c.c2_axial) {
    j["c2_axial"] = {{"eps1", c.c2_axial->eps1}, {"eps2", c.c2_axial->eps2}, {"theta", c.c2_axial->theta}};
  } else {
    j["c2_axial"] = nullptr;
  }
  j["b"] = c.b;
  j["s"] = c.s;
  j["l"] = to_json(c.l);
  j["c"] = to_json(c.c);
  json charts = json::array();
  for (ChartId id : admissible_charts(c)) charts.push_back(std::string(chart_name(id)));
  j["admissible_charts"] = charts;
  return j;
}

// ---- subcommands ----

int cmd_charts_list(const std::string& format, const std::string& output, std::ostream& out) {
  if (format == "csv") {
    std::ostringstream csv;
    csv << "id,name,split_class,parameters,range\n";
    for (ChartId id : all_charts()) {
      std::string params;
      for (const auto& p : chart_parameter_names(id)) params += (params.empty() ? "" : " ") + p;
      csv << chart_number(id) << ',' << chart_name(id) << ',' << split_class_name(split_class(id)) << ',' << params
          << ",\"" << chart_range_description(id) << "\"\n";
    }
    emit(output, csv.str(), out);
    return exit_ok;
  }
  json list = json::array();
  for (ChartId id : all_charts()) {
    list.push_back({{"id", chart_number(id)},
                    {"name", std::string(chart_name(id))},
                    {"split_class", std::string(split_class_name(split_class(id)))},
                    {"parameters", chart_parameter_names(id)},
                    {"range", chart_range_description(id)}});
  }
  emit(output, dump(list), out);
  return exit_ok;
}

Classification classify_checked(const DriftSpec& drift, double tol) {
  try {
    return classify(drift, tol);
  } catch (const std::invalid_argument& e) {
    input_error(e.what());
  }
}

int cmd_classify(const std::string& input, const std::string& output, double tol, std::ostream& out,
                 const Log& log) {
  const DriftSpec drift = drift_from(read_json(input));
  const Classification c = classify_checked(drift, tol);
  log(Log::info, "classified as " + std::string(drift_case_name(c.kind)));
  for (const auto& w : c.warnings) log(Log::warn, w);
  emit(output, dump(classification_json(c)), out);
  return c.kind == DriftCase::NotSeparable ? exit_not_separable : exit_ok;
}

struct SolveOptions {
  std::string input, output, manifest, format = "csv", chart;
  std::vector<double> lambda{0.0, 0.0, 0.0};
  std::vector<double> scale;
  double tol = 1e-9;
  double ode_tol = 1e-11;
  double a = 1.0;
  double k = 0.6;
  std::uint64_t seed = 0;
  std::size_t points = 20;
};

constexpr double residual_step = 1e-3;
constexpr double residual_threshold = 5e-4;

json request_json(const SolutionRequest& r, const SeparatedSolution& s) {
  json ic = json::array();
  for (int a = 0; a < 3; ++a) {
    const PhiInitial& p = s.phi(a).initial();
    ic.push_back({{"position", p.position}, {"value", p.value}, {"slope", p.slope}});
  }
  json intervals = json::array();
  for (int a = 0; a < 3; ++a) intervals.push_back(to_json(s.phi(a).interval()));
  return {{"drift", drift_json(r.drift)},
          {"classify_tol", r.classify_tol},
          {"chart", std::string(chart_name(r.chart))},
          {"chart_params", {{"a", r.params.a}, {"k", r.params.modulus.k()}}},
          {"lambda", json::array({r.lambda[0], r.lambda[1], r.lambda[2]})},
          {"c", to_json(s.classification().c)},
          {"w0", to_json(s.w0())},
          {"ode_tol", r.ode_tol},
          {"ic", ic},
          {"intervals", intervals}};
}

SolutionRequest request_from(const json& m) {
  SolutionRequest r;
  r.drift = drift_from(member(m, "drift"));
  r.classify_tol = number_at(member(m, "classify_tol"), "classify_tol");
  const json& chart = member(m, "chart");
  if (!chart.is_string()) input_error("chart: expected a name");
  r.chart = chart_option(chart.get<std::string>());
  const json& params = member(m, "chart_params");
  try {
    r.params = ChartParams{number_at(member(params, "a"), "a"), EllipticModulus(number_at(member(params, "k"), "k"))};
  } catch (const std::invalid_argument& e) {
    input_error(e.what());
  }
  const Vec3 lambda = vec3_from(member(m, "lambda"), "lambda");
  r.lambda = SpectralParams{{lambda[0], lambda[1], lambda[2]}};
  r.c = vec3_from(member(m, "c"), "c");
  r.w0 = vec3_from(member(m, "w0"), "w0");
  r.ode_tol = number_at(member(m, "ode_tol"), "ode_tol");
  const json& ic = member(m, "ic");
  const json& intervals = member(m, "intervals");
  if (!ic.is_array() || ic.size() != 3 || !intervals.is_array() || intervals.size() != 3) {
    input_error("ic and intervals need three entries");
  }
  std::array<Interval, 3> iv;
  for (std::size_t a = 0; a < 3; ++a) {
    r.ic[a] = PhiInitial{number_at(member(ic[a], "position"), "ic"), number_at(member(ic[a], "value"), "ic"),
                         number_at(member(ic[a], "slope"), "ic")};
    if (!intervals[a].is_array() || intervals[a].size() != 2) input_error("intervals: expected [lo, hi]");
    iv[a] = {number_at(intervals[a][0], "intervals"), number_at(intervals[a][1], "intervals")};
  }
  r.intervals = iv;
  return r;
}

SeparatedSolution build_solution(const SolutionRequest& r, const Classification& c) {
  if (c.kind == DriftCase::NotSeparable) throw CliFailure(exit_not_separable, "drift is not separable");
  if (!is_admissible(c, r.chart)) {
    std::string names;
    for (ChartId id : admissible_charts(c)) names += (names.empty() ? "" : ", ") + std::string(chart_name(id));
    throw CliFailure(exit_inadmissible_chart, std::string(chart_name(r.chart)) + " is not admissible for " +
                                                  std::string(drift_case_name(c.kind)) + "; admissible: " + names);
  }
  try {
    return SeparatedSolution::build(r);
  } catch (const std::exception& e) {
    input_error(e.what());
  }
}

json report_json(const ResidualReport& rep) {
  return {{"points", rep.points.size()},
          {"failures", rep.failures},
          {"h", rep.h},
          {"threshold", rep.threshold},
          {"u_scale", rep.u_scale},
          {"max_normalized", rep.max_normalized},
          {"max_normalized_half", rep.max_normalized_half},
          {"max_normalized_extrapolated", rep.max_normalized_extrapolated},
          {"mean_normalized", rep.mean_normalized},
          {"pass", rep.pass}};
}

int cmd_solve(const SolveOptions& o, std::ostream& out, const Log& log) {
  if (o.points == 0) input_error("--points must be positive");
  SolutionRequest r;
  r.drift = drift_from(read_json(o.input));
  r.chart = chart_option(o.chart);
  try {
    r.params = ChartParams{o.a, EllipticModulus(o.k)};
  } catch (const std::invalid_argument& e) {
    input_error(e.what());
  }
  const Vec3 lambda = vec3_option(o.lambda, "--lambda");
  r.lambda = SpectralParams{{lambda[0], lambda[1], lambda[2]}};
  if (!o.scale.empty()) r.c = vec3_option(o.scale, "--scale");
  r.classify_tol = o.tol;
  r.ode_tol = o.ode_tol;
  const Classification c = classify_checked(r.drift, r.classify_tol);
  log(Log::info, "classified as " + std::string(drift_case_name(c.kind)));
  const SeparatedSolution sol = build_solution(r, c);

  const ProbeOptions probe;
  std::vector<ProbePoint> pts;
  try {
    pts = interior_points(sol, o.points, o.seed, probe);
  } catch (const std::exception& e) {
    input_error(e.what());
  }
  const ResidualReport rep = verify_residual(sol, r.drift, pts, residual_step, residual_threshold);
  log(Log::info, "max normalized residual " + g17(rep.max_normalized_extrapolated));
  const double scale = std::max(rep.u_scale, std::numeric_limits<double>::min());

  std::ostringstream csv;
  csv << "t,x1,x2,x3,omega1,omega2,omega3,u,residual\n";
  json points = json::array();
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    const PointResidual& pr = rep.points[i];
    const ProbePoint& p = pts[i];
    const double residual = std::abs(pr.extrapolated()) / scale;
    csv << g17(p.t) << ',' << g17(p.x[0]) << ',' << g17(p.x[1]) << ',' << g17(p.x[2]) << ',' << g17(p.omega[0])
        << ',' << g17(p.omega[1]) << ',' << g17(p.omega[2]) << ',' << g17(pr.u) << ',' << g17(residual) << '\n';
    points.push_back({{"t", p.t},
                      {"x", to_json(p.x)},
                      {"omega", json::array({p.omega[0], p.omega[1], p.omega[2]})},
                      {"u", pr.u},
                      {"residual", residual}});
  }
  json manifest = {{"format", "sepfp-solution"}, {"version", std::string(library_version())}};
  manifest["request"] = request_json(r, sol);
  manifest["classification"] = classification_json(c);
  manifest["seed"] = o.seed;
  manifest["probe"] = {{"t_lo", probe.t_lo}, {"t_hi", probe.t_hi}, {"margin", probe.margin},
                       {"min_scale", probe.min_scale}};
  manifest["points"] = points;
  manifest["report"] = report_json(rep);

  if (!o.manifest.empty()) emit(o.manifest, dump(manifest), out);
  emit(o.output, o.format == "json" ? dump(manifest) : csv.str(), out);
  for (const auto& f : rep.failures) log(Log::warn, f);
  return rep.pass ? exit_ok : exit_verification_failed;
}

int cmd_verify(const std::string& input, const std::string& output, std::ostream& out, const Log& log) {
  const json m = read_json(input);
  if (!m.is_object() || m.value("format", "") != "sepfp-solution") input_error("not a solution manifest");
  if (m.value("version", "") != library_version()) {
    input_error("manifest version " + m.value("version", "?") + " does not match " + std::string(library_version()));
  }
  const SolutionRequest r = request_from(member(m, "request"));
  const json& recorded = member(m, "points");
  if (!recorded.is_array() || recorded.empty()) input_error("manifest has no points");

  const Classification c = classify_checked(r.drift, r.classify_tol);
  const SeparatedSolution sol = build_solution(r, c);
  std::vector<ProbePoint> pts;
  std::vector<double> u_recorded;
  for (const json& p : recorded) {
    const Vec3 w = vec3_from(member(p, "omega"), "omega");
    pts.push_back({number_at(member(p, "t"), "t"), vec3_from(member(p, "x"), "x"), OmegaPoint{{w[0], w[1], w[2]}}});
    u_recorded.push_back(number_at(member(p, "u"), "u"));
  }
  const ResidualReport rep = verify_residual(sol, r.drift, pts, residual_step, residual_threshold);

  // recomputed values must reproduce the recorded solution
  double mismatch = 0.0;
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    mismatch = std::max(mismatch, std::abs(rep.points[i].u - u_recorded[i]));
  }
  const double scale = std::max(rep.u_scale, std::numeric_limits<double>::min());
  const bool consistent = rep.failures.empty() && mismatch <= 1e-9 * scale;
  if (!consistent) log(Log::warn, "recomputed u differs from the manifest by " + g17(mismatch));

  json j = report_json(rep);
  j["max_u_mismatch"] = mismatch / scale;
  j["consistent"] = consistent;
  j["residual_pass"] = rep.pass;
  j["pass"] = rep.pass && consistent;
  emit(output, dump(j), out);
  return rep.pass && consistent ? exit_ok : exit_verification_failed;
}

struct McOptions {
  std::string input, output;
  std::uint64_t seed = 0;
  std::size_t n = 100000;
  double tau = 0.5;
  double dt = 0.0;
  std::vector<double> init_mean;
  double init_variance = 0.0;
};

int cmd_mc(const McOptions& o, std::ostream& out, const Log& log) {
  const DriftSpec drift = drift_from(read_json(o.input));
  if (o.n < 1000) input_error("--n must be at least 1000");
  if (!(o.tau >= 0.0)) input_error("--tau must be non-negative");
  if (!(o.init_variance >= 0.0)) input_error("--init-variance must be non-negative");
  const double dt = o.dt > 0.0 ? o.dt : max_time_step(drift);
  const MomentState init{o.init_mean.empty() ? Vec3{} : vec3_option(o.init_mean, "--init-mean"),
                         o.init_variance * Mat3::identity()};
  Ensemble e;
  try {
    e = simulate(drift, init, o.tau, dt, o.n, o.seed);
  } catch (const std::invalid_argument& err) {
    input_error(err.what());
  }
  const MomentState reference = moment_flow(drift, init, o.tau);
  const MomentState sample = sample_moments(e);
  const MomentComparison cmp = compare(e, reference);
  log(Log::info, "max |z| " + g17(cmp.max_abs_z));
  const json j = {{"tau", o.tau},
                  {"n", o.n},
                  {"dt", dt},
                  {"seed", o.seed},
                  {"mean", to_json(sample.mean)},
                  {"cov", to_json(sample.covariance)},
                  {"reference", {{"mean", to_json(reference.mean)}, {"cov", to_json(reference.covariance)}}},
                  {"z_scores", {{"mean", to_json(cmp.z_mean)}, {"cov", to_json(cmp.z_covariance)}}},
                  {"max_abs_z", cmp.max_abs_z},
                  {"degenerate", cmp.degenerate},
                  {"pass", cmp.pass}};
  emit(o.output, dump(j), out);
  return cmp.pass ? exit_ok : exit_verification_failed;
}

DriftField field_from(const json& j) {
  if (j.is_object() && j.contains("polynomial")) {
    const json& comps = j.at("polynomial");
    if (!comps.is_array() || comps.size() != 3) input_error("polynomial: expected three components");
    std::array<std::vector<Monomial>, 3> terms;
    for (std::size_t r = 0; r < 3; ++r) {
      if (!comps[r].is_array()) input_error("polynomial: each component is a list of terms");
      for (const json& t : comps[r]) {
        const json& powers = member(t, "p");
        if (!powers.is_array() || powers.size() != 3) input_error("polynomial: p needs three powers");
        Monomial m{number_at(member(t, "c"), "c"), {0, 0, 0}};
        for (std::size_t i = 0; i < 3; ++i) {
          if (!powers[i].is_number_integer() || powers[i].get<int>() < 0) {
            input_error("polynomial: powers are non-negative integers");
          }
          m.powers[i] = powers[i].get<int>();
        }
        terms[r].push_back(m);
      }
    }
    return DriftField::from(PolynomialField(std::move(terms)));
  }
  return DriftField::from(drift_from(j));
}

int cmd_curl(const std::string& input, const std::string& output, std::uint64_t seed, std::size_t n, double tol,
             const std::vector<double>& box, std::ostream& out, const Log& log) {
  const DriftField field = field_from(read_json(input));
  if (box.size() != 2 || !(box[0] < box[1])) input_error("--box needs lo,hi with lo < hi");
  const ProbeBox probe{{box[0], box[0], box[0]}, {box[1], box[1], box[1]}};
  CurlReport rep;
  try {
    rep = check_constant_curl(field, probe, n, seed, tol);
  } catch (const std::invalid_argument& e) {
    input_error(e.what());
  }
  log(Log::info, rep.verdict());
  const json j = {{"n", n},
                  {"seed", seed},
                  {"box", box},
                  {"mean", to_json(rep.mean)},
                  {"max_deviation", rep.max_deviation},
                  {"tol", rep.tol},
                  {"constant", rep.constant},
                  {"verdict", rep.verdict()},
                  {"pass", rep.constant}};
  emit(output, dump(j), out);
  return rep.constant ? exit_ok : exit_verification_failed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const Log log(err);
  CLI::App app{"Separated solutions of the Fokker-Planck equation with linear drift", "sepfp"};
  app.require_subcommand(1);

  auto* charts = app.add_subcommand("charts", "Chart catalog");
  charts->require_subcommand(1);
  auto* charts_list = charts->add_subcommand("list", "List the eleven separable charts");
  std::string list_format = "json", list_output;
  charts_list->add_option("--format", list_format)->check(CLI::IsMember({"json", "csv"}));
  charts_list->add_option("--output", list_output);

  auto* classify_cmd = app.add_subcommand("classify", "Classify a drift specification");
  std::string cls_input, cls_output;
  double cls_tol = 1e-9;
  classify_cmd->add_option("--input", cls_input)->required();
  classify_cmd->add_option("--output", cls_output);
  classify_cmd->add_option("--tol", cls_tol);
  classify_cmd->add_option("--format", list_format)->check(CLI::IsMember({"json"}));

  auto* solve_cmd = app.add_subcommand("solve", "Sample a separated solution and its residual");
  SolveOptions so;
  solve_cmd->add_option("--input", so.input)->required();
  solve_cmd->add_option("--chart", so.chart)->required();
  solve_cmd->add_option("--lambda", so.lambda)->delimiter(',');
  solve_cmd->add_option("--scale", so.scale, "scale constants c1,c2,c3")->delimiter(',');
  solve_cmd->add_option("--output", so.output);
  solve_cmd->add_option("--manifest", so.manifest);
  solve_cmd->add_option("--format", so.format)->check(CLI::IsMember({"json", "csv"}));
  solve_cmd->add_option("--tol", so.tol);
  solve_cmd->add_option("--ode-tol", so.ode_tol);
  solve_cmd->add_option("--seed", so.seed);
  solve_cmd->add_option("--points", so.points);
  solve_cmd->add_option("--a", so.a, "focal scale");
  solve_cmd->add_option("--k", so.k, "elliptic modulus");

  auto* verify_cmd = app.add_subcommand("verify", "Recompute the residual of a solution manifest");
  std::string ver_input, ver_output;
  verify_cmd->add_option("--input", ver_input)->required();
  verify_cmd->add_option("--output", ver_output);

  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo moments against the moment flow");
  McOptions mo;
  mc_cmd->add_option("--input", mo.input)->required();
  mc_cmd->add_option("--output", mo.output);
  mc_cmd->add_option("--seed", mo.seed);
  mc_cmd->add_option("--n", mo.n);
  mc_cmd->add_option("--tau", mo.tau);
  mc_cmd->add_option("--dt", mo.dt);
  mc_cmd->add_option("--init-mean", mo.init_mean)->delimiter(',');
  mc_cmd->add_option("--init-variance", mo.init_variance);

  auto* curl_cmd = app.add_subcommand("curl", "Constant-curl test of a drift field");
  std::string curl_input, curl_output;
  std::uint64_t curl_seed = 0;
  std::size_t curl_n = 64;
  double curl_tol = 1e-6;
  std::vector<double> curl_box{-1.0, 1.0};
  curl_cmd->add_option("--input", curl_input)->required();
  curl_cmd->add_option("--output", curl_output);
  curl_cmd->add_option("--seed", curl_seed);
  curl_cmd->add_option("--n", curl_n);
  curl_cmd->add_option("--tol", curl_tol);
  curl_cmd->add_option("--box", curl_box, "lo,hi for every axis")->delimiter(',');

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_input_error;
  }

  try {
    if (*charts_list) return cmd_charts_list(list_format, list_output, out);
    if (*classify_cmd) {
      if (!(cls_tol > 0.0)) input_error("--tol must be positive");
      return cmd_classify(cls_input, cls_output, cls_tol, out, log);
    }
    if (*solve_cmd) {
      if (!(so.tol > 0.0)) input_error("--tol must be positive");
      return cmd_solve(so, out, log);
    }
    if (*verify_cmd) return cmd_verify(ver_input, ver_output, out, log);
    if (*mc_cmd) return cmd_mc(mo, out, log);
    if (*curl_cmd) return cmd_curl(curl_input, curl_output, curl_seed, curl_n, curl_tol, curl_box, out, log);
  } catch (const CliFailure& e) {
    log(Log::error, e.what());
    return e.code;
  } catch (const std::exception& e) {
    log(Log::error, e.what());
    return exit_input_error;
  }
  return exit_input_error;
}

}  // namespace sepfp
