#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sepfp/algebra3.hpp"
#include "sepfp/drift.hpp"

namespace sepfp {

/// coefficient * x1^p1 x2^p2 x3^p3
struct Monomial {
  double coefficient = 0.0;
  std::array<int, 3> powers{0, 0, 0};
};

/// Vector field whose components are sums of monomials.
class PolynomialField {
 public:
  PolynomialField() = default;
  explicit PolynomialField(std::array<std::vector<Monomial>, 3> components);
  /// B(x) = M x + v
  static PolynomialField linear(const DriftSpec& spec);

  Vec3 operator()(const Vec3& x) const;
  /// Exact curl by term-wise differentiation.
  Vec3 curl(const Vec3& x) const;
  const std::array<std::vector<Monomial>, 3>& components() const { return components_; }

 private:
  std::array<std::vector<Monomial>, 3> components_;
};

struct DriftField {
  std::function<Vec3(const Vec3&)> eval;
  std::optional<PolynomialField> polynomial;

  static DriftField from(PolynomialField p);
  static DriftField from(const DriftSpec& spec);
  Vec3 operator()(const Vec3& x) const { return eval(x); }
};

struct ProbeBox {
  Vec3 lo{-1.0, -1.0, -1.0};
  Vec3 hi{1.0, 1.0, 1.0};
};

struct CurlReport {
  std::vector<Vec3> points;
  std::vector<Vec3> curls;
  Vec3 mean;
  double max_deviation = 0.0;
  double tol = 0.0;
  bool constant = false;  ///< max_deviation <= tol (1 + |mean|)

  /// "necessary condition satisfied - not sufficient" or "curl not constant - not R-separable"
  std::string verdict() const;
};

/// Central-difference curl (B3,2 - B2,3, B1,3 - B3,1, B2,1 - B1,2).
Vec3 curl_at(const DriftField& field, const Vec3& x, double h = 1e-4);

/// Curl at n Sobol points of the box (the sequence skips its first `seed`
/// points). Throws std::invalid_argument if n < 8 or tol <= 0.
CurlReport check_constant_curl(const DriftField& field, const ProbeBox& box = {}, std::size_t n = 64,
                               std::uint64_t seed = 0, double tol = 1e-6, double h = 1e-4);

}  // namespace sepfp
