#pragma once

#include <cmath>
#include <numbers>

#include "gen.hpp"
#include "sepfp/drift.hpp"

namespace testgen {

/// Drift matrices written directly from the parameterized families,
/// independently of classify/reconstruct.
struct FamilyDraw {
  sepfp::DriftCase expected;
  sepfp::Mat3 m;
};

inline sepfp::Mat3 rotating_generator(double b, double s) {
  return b * sepfp::Mat3::from_rows({0, std::cos(s), 0}, {-std::cos(s), 0, std::sin(s)}, {0, -std::sin(s), 0});
}

/// Family (i): Q diag(l) Q^T with l distinct, doubled or equal by `variant` 0/1/2.
inline FamilyDraw draw_symmetric(Gen& g, int variant) {
  using namespace sepfp;
  Vec3 l;
  for (;;) {
    l = g.vec(-3, 3);
    if (variant == 1) {
      const int i = g.integer(0, 2);
      l[i] = l[(i + 1) % 3];
    }
    if (variant == 2) l = {l[0], l[0], l[0]};
    double gaps[3] = {std::abs(l[0] - l[1]), std::abs(l[1] - l[2]), std::abs(l[0] - l[2])};
    int small = 0, large = 0;
    for (double gap : gaps) {
      if (gap == 0.0) ++small;
      if (gap > 1e-2) ++large;
    }
    if (small + large == 3) break;
  }
  const Mat3 q = g.rotation();
  const DriftCase kind = variant == 0   ? DriftCase::SymmetricDistinct
                         : variant == 1 ? DriftCase::SymmetricDoubled
                                        : DriftCase::Isotropic;
  return {kind, q * Mat3::diag(l) * transpose(q)};
}

/// Family (ii): b C1 G(s) C1^T + l1 I.
inline FamilyDraw draw_rotating_isotropic(Gen& g) {
  using namespace sepfp;
  double b = g.uniform(0.1, 3.0);
  if (g.integer(0, 1)) b = -b;
  const double s = g.uniform(0, 2 * std::numbers::pi), l1 = g.uniform(-3, 3);
  const Mat3 c1 = g.rotation();
  return {DriftCase::RotatingIsotropic, c1 * rotating_generator(b, s) * transpose(c1) + l1 * Mat3::identity()};
}

/// Family (iii), entrywise:
///   C1 [[ (l1+l3+(l1-l3)cos2s)/2, b cos s, (l3-l1) sin2s/2 ],
///       [ -b cos s, l1, b sin s ],
///       [ (l3-l1) sin2s/2, -b sin s, (l1+l3-(l1-l3)cos2s)/2 ]] C1^T
inline FamilyDraw draw_rotating_axial(Gen& g) {
  using namespace sepfp;
  double b = g.uniform(0.1, 3.0);
  if (g.integer(0, 1)) b = -b;
  const double s = g.uniform(0, 2 * std::numbers::pi);
  double l1 = 0, l3 = 0;
  do {
    l1 = g.uniform(-3, 3);
    l3 = g.uniform(-3, 3);
  } while (std::abs(l1 - l3) < 1e-2);
  const double c2s = std::cos(2 * s), s2s = std::sin(2 * s), cs = std::cos(s), ss = std::sin(s);
  const Mat3 inner = Mat3::from_rows({0.5 * (l1 + l3 + (l1 - l3) * c2s), b * cs, 0.5 * (l3 - l1) * s2s},
                                     {-b * cs, l1, b * ss},
                                     {0.5 * (l3 - l1) * s2s, -b * ss, 0.5 * (l1 + l3 - (l1 - l3) * c2s)});
  const Mat3 c1 = g.rotation();
  return {DriftCase::RotatingAxial, c1 * inner * transpose(c1)};
}

/// Generic matrix outside every family.
inline sepfp::Mat3 draw_nonconforming(Gen& g) {
  using namespace sepfp;
  for (;;) {
    const Mat3 m = g.mat(-2, 2);
    const auto parts = sym_antisym_split(m);
    const auto eig = symmetric_eigen(parts.sym);
    if (norm(antisym_axis(parts.anti)) > 0.05 && eig.values[1] - eig.values[0] > 0.05 &&
        eig.values[2] - eig.values[1] > 0.05)
      return m;
  }
}

}  // namespace testgen
