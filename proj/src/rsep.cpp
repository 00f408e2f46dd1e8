#include "sepfp/rsep.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/random/sobol.hpp>

namespace sepfp {

namespace {

double monomial_value(const Monomial& m, const Vec3& x) {
  double v = m.coefficient;
  for (std::size_t i = 0; i < 3; ++i) v *= std::pow(x[i], m.powers[i]);
  return v;
}

double partial(const std::vector<Monomial>& terms, std::size_t axis, const Vec3& x) {
  double sum = 0.0;
  for (const Monomial& m : terms) {
    if (m.powers[axis] == 0) continue;
    Monomial d = m;
    d.coefficient *= m.powers[axis];
    d.powers[axis] -= 1;
    sum += monomial_value(d, x);
  }
  return sum;
}

}  // namespace

PolynomialField::PolynomialField(std::array<std::vector<Monomial>, 3> components)
    : components_(std::move(components)) {
  for (const auto& terms : components_)
    for (const Monomial& m : terms)
      for (int p : m.powers)
        if (p < 0) throw std::invalid_argument("PolynomialField: negative power");
}

PolynomialField PolynomialField::linear(const DriftSpec& spec) {
  std::array<std::vector<Monomial>, 3> comps;
  for (std::size_t r = 0; r < 3; ++r) {
    if (spec.v[r] != 0.0) comps[r].push_back({spec.v[r], {0, 0, 0}});
    for (std::size_t c = 0; c < 3; ++c) {
      if (spec.m(r, c) == 0.0) continue;
      Monomial m{spec.m(r, c), {0, 0, 0}};
      m.powers[c] = 1;
      comps[r].push_back(m);
    }
  }
  return PolynomialField(std::move(comps));
}

Vec3 PolynomialField::operator()(const Vec3& x) const {
  Vec3 out;
  for (std::size_t r = 0; r < 3; ++r)
    for (const Monomial& m : components_[r]) out[r] += monomial_value(m, x);
  return out;
}

Vec3 PolynomialField::curl(const Vec3& x) const {
  const auto& b = components_;
  return {partial(b[2], 1, x) - partial(b[1], 2, x), partial(b[0], 2, x) - partial(b[2], 0, x),
          partial(b[1], 0, x) - partial(b[0], 1, x)};
}

DriftField DriftField::from(PolynomialField p) {
  return DriftField{[p](const Vec3& x) { return p(x); }, p};
}

DriftField DriftField::from(const DriftSpec& spec) { return from(PolynomialField::linear(spec)); }

std::string CurlReport::verdict() const {
  return constant ? "necessary condition satisfied - not sufficient" : "curl not constant - not R-separable";
}

Vec3 curl_at(const DriftField& field, const Vec3& x, double h) {
  // d[i][j] = dB_i / dx_j
  std::array<Vec3, 3> d;
  for (std::size_t j = 0; j < 3; ++j) {
    Vec3 xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const Vec3 diff = (field(xp) - field(xm)) / (2.0 * h);
    for (std::size_t i = 0; i < 3; ++i) d[i][j] = diff[i];
  }
  return {d[2][1] - d[1][2], d[0][2] - d[2][0], d[1][0] - d[0][1]};
}

CurlReport check_constant_curl(const DriftField& field, const ProbeBox& box, std::size_t n, std::uint64_t seed,
                               double tol, double h) {
  if (n < 8) throw std::invalid_argument("check_constant_curl: need at least 8 samples");
  if (!(tol > 0.0)) throw std::invalid_argument("check_constant_curl: tol must be positive");
  boost::random::sobol sobol(3);
  sobol.seed(seed);
  const double scale = 0x1.0p-64;

  CurlReport rep;
  rep.tol = tol;
  for (std::size_t k = 0; k < n; ++k) {
    Vec3 x;
    for (std::size_t i = 0; i < 3; ++i) {
      const double u = static_cast<double>(sobol()) * scale;
      x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * u;
    }
    rep.points.push_back(x);
    rep.curls.push_back(curl_at(field, x, h));
  }
  for (const Vec3& c : rep.curls) rep.mean = rep.mean + c;
  rep.mean = rep.mean / double(n);
  for (const Vec3& c : rep.curls) rep.max_deviation = std::max(rep.max_deviation, norm(c - rep.mean));
  rep.constant = rep.max_deviation <= tol * (1.0 + norm(rep.mean));
  return rep;
}

}  // namespace sepfp
