#include <cmath>
#include <set>

#include "doctest.h"
#include "gen.hpp"
#include "sepfp/charts.hpp"
#include "sepfp/errors.hpp"

using namespace sepfp;
using testgen::Gen;
using testgen::mat_diff;

namespace {

const ChartParams kParams{};

Vec3 stackel_pattern(ChartId id) {
  switch (split_class(id)) {
    case SplitClass::CompletelySplit: return {1, 1, 1};
    case SplitClass::PartiallySplit: return {1, 0, 1};
    case SplitClass::NonSplit: return {1, 0, 0};
  }
  return {};
}

Mat3 fd_jacobian(ChartId id, const OmegaPoint& p, double h = 1e-5) {
  Mat3 j;
  for (int c = 0; c < 3; ++c) {
    OmegaPoint pp = p, pm = p;
    pp[c] += h;
    pm[c] -= h;
    const Vec3 d = (1 / (2 * h)) * (forward_map(id, kParams, pp) - forward_map(id, kParams, pm));
    for (int r = 0; r < 3; ++r) j(r, c) = d[r];
  }
  return j;
}

}  // namespace

TEST_CASE("catalog metadata") {
  CHECK(all_charts().size() == 11);
  std::set<std::string_view> names;
  for (ChartId id : all_charts()) {
    names.insert(chart_name(id));
    CHECK(chart_from_name(chart_name(id)) == id);
    CHECK(chart_from_name(std::to_string(chart_number(id))) == id);
    CHECK_FALSE(chart_range_description(id).empty());
  }
  CHECK(names.size() == 11);
  CHECK_FALSE(chart_from_name("toroidal").has_value());
  CHECK(split_class(ChartId::Cartesian) == SplitClass::CompletelySplit);
  for (int n = 2; n <= 4; ++n) CHECK(split_class(static_cast<ChartId>(n)) == SplitClass::PartiallySplit);
  for (int n = 5; n <= 11; ++n) CHECK(split_class(static_cast<ChartId>(n)) == SplitClass::NonSplit);
  CHECK(chart_parameter_names(ChartId::Ellipsoidal) == std::vector<std::string>{"k"});
  CHECK(chart_parameter_names(ChartId::OblateSpheroidal) == std::vector<std::string>{"a"});
}

TEST_CASE("forward_map reference values") {
  CHECK(forward_map(ChartId::Cylindrical, kParams, {{0, 0, 5}}) == Vec3{1, 0, 5});
  CHECK(forward_map(ChartId::Spherical, kParams, {{1, 0, 0}}) == Vec3{1, 0, 0});
  CHECK(forward_map(ChartId::ParabolicCylindrical, kParams, {{3, 2, 7}}) == Vec3{2.5, 6, 7});
  CHECK_THROWS_AS(forward_map(ChartId::Spherical, kParams, {{-1, 0, 0}}), std::out_of_range);
  CHECK_THROWS_AS(forward_map(ChartId::OblateSpheroidal, kParams, {{2, 0, 0}}), std::out_of_range);
}

TEST_CASE("stackel_matrix reference values") {
  CHECK(stackel_matrix(ChartId::Cartesian, kParams, {{0.3, -2, 9}}) == Mat3::identity());
  CHECK(stackel_matrix(ChartId::Cylindrical, kParams, {{0, 1, 2}}) ==
        Mat3::from_rows({1, -1, 0}, {0, 1, 0}, {0, 0, 1}));
  CHECK(mat_diff(stackel_matrix(ChartId::Spherical, kParams, {{2, 0, 0.4}}),
                 Mat3::from_rows({1.0 / 16, -0.25, 0}, {0, 1, -1}, {0, 0, 1})) < 1e-16);
}

TEST_CASE("jacobian and gradient norm reference values") {
  CHECK(jacobian(ChartId::Cartesian, kParams, {{1, 2, 3}}) == Mat3::identity());
  CHECK(mat_diff(jacobian(ChartId::Cylindrical, kParams, {{0, 0, 4}}), Mat3::identity()) < 1e-16);
  CHECK(norm(grad_norms(ChartId::Cartesian, kParams, {{1, 2, 3}}) - Vec3{1, 1, 1}) < 1e-16);
  CHECK(norm(grad_norms(ChartId::Cylindrical, kParams, {{0, 0.7, 1}}) - Vec3{1, 1, 1}) < 1e-14);
  CHECK(grad_norms(ChartId::Spherical, kParams, {{2, 0.3, 0.5}})[0] == doctest::Approx(16).epsilon(1e-13));
  CHECK(orthogonality_defect(ChartId::Cartesian, kParams, {{1, 2, 3}}) == 0.0);
  CHECK(laplacian_defect(ChartId::Cartesian, kParams, {{1, 2, 3}}) == Vec3{0, 0, 0});
  CHECK_THROWS_AS(jacobian(ChartId::ParabolicCylindrical, kParams, {{0, 0, 1}}), CoordinateSingularity);
  CHECK_THROWS_AS(jacobian(ChartId::EllipticCylindrical, kParams, {{0, 0, 1}}), CoordinateSingularity);
}

TEST_CASE("sample_domain contract") {
  const auto a = sample_domain(ChartId::Cartesian, kParams, 3, 1);
  const auto b = sample_domain(ChartId::Cartesian, kParams, 3, 1);
  REQUIRE(a.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(a[i].w == b[i].w);
  for (const auto& p : sample_domain(ChartId::Spherical, kParams, 10, 7)) CHECK(p[0] >= 0.05);
  const double big_k = kParams.modulus.quarter_period(), big_kp = kParams.modulus.complementary_quarter_period();
  for (const auto& p : sample_domain(ChartId::Ellipsoidal, kParams, 10, 7)) {
    CHECK(in_domain(ChartId::Ellipsoidal, kParams, p));
    CHECK(std::abs(p[0]) <= big_k - 0.05);
    CHECK(std::abs(p[1]) <= big_kp - 0.05);
    CHECK(p[2] >= 0.05);
  }
}

TEST_CASE("identity suite over every chart") {
  for (ChartId id : all_charts()) {
    CAPTURE(chart_name(id));
    const Vec3 pattern = stackel_pattern(id);
    int index = 0;
    for (const auto& p : sample_domain(id, kParams, 100, 20 + chart_number(id))) {
      CAPTURE(index++);
      REQUIRE(in_domain(id, kParams, p));
      CHECK(orthogonality_defect(id, kParams, p) <= 1e-9);

      const Mat3 f = stackel_matrix(id, kParams, p);
      const Vec3 g = grad_norms(id, kParams, p);
      for (int a = 0; a < 3; ++a) {
        double sum = 0;
        for (int i = 0; i < 3; ++i) sum += f(i, a) * g[i];
        CHECK(std::abs(sum - pattern[a]) <= 1e-8);
      }

      const Vec3 lap = laplacian_defect(id, kParams, p);
      CHECK(max_abs(lap) <= 1e-4);

      const Mat3 j = jacobian(id, kParams, p);
      CHECK(mat_diff(j, fd_jacobian(id, p)) <= 1e-6 * std::max(1.0, max_abs(j)));
    }
  }
}

TEST_CASE("stackel rows depend only on their own coordinate") {
  Gen g(8);
  for (ChartId id : all_charts()) {
    const auto pts = sample_domain(id, kParams, 20, 30);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      OmegaPoint mixed = pts[i];
      const int keep = g.integer(0, 2);
      for (int a = 0; a < 3; ++a)
        if (a != keep) mixed[a] = pts[i + 1][a];
      CHECK(stackel_matrix(id, kParams, pts[i]).row(keep) == stackel_matrix(id, kParams, mixed).row(keep));
    }
  }
}

TEST_CASE("invert_chart recovers the sampled point") {
  Gen g(9);
  for (ChartId id : all_charts()) {
    CAPTURE(chart_name(id));
    for (const auto& p : sample_domain(id, kParams, 50, 40)) {
      const Vec3 z = forward_map(id, kParams, p);
      OmegaPoint guess = p;
      for (int a = 0; a < 3; ++a) guess[a] += g.uniform(-1e-3, 1e-3);
      if (!in_domain(id, kParams, guess)) guess = p;
      const OmegaPoint back = invert_chart(id, kParams, z, guess);
      for (int a = 0; a < 3; ++a) CHECK(std::abs(back[a] - p[a]) <= 1e-9);
    }
  }
}

TEST_CASE("other focal scales and moduli keep the identities") {
  ChartParams params;
  params.a = 2.5;
  params.modulus = EllipticModulus(0.3);
  for (ChartId id : all_charts()) {
    CAPTURE(chart_name(id));
    const Vec3 pattern = stackel_pattern(id);
    for (const auto& p : sample_domain(id, params, 20, 50)) {
      CHECK(orthogonality_defect(id, params, p) <= 1e-9);
      const Mat3 f = stackel_matrix(id, params, p);
      const Vec3 g = grad_norms(id, params, p);
      for (int a = 0; a < 3; ++a) CHECK(std::abs(f(0, a) * g[0] + f(1, a) * g[1] + f(2, a) * g[2] - pattern[a]) <= 1e-8);
    }
  }
}
