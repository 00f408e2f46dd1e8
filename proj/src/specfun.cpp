#include "sepfp/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sepfp {

namespace {

double agm(double a, double b) {
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * (a + b);
}

}  // namespace

double complete_elliptic_k(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw std::invalid_argument("complete_elliptic_k: need 0 <= k < 1");
  return std::numbers::pi / (2.0 * agm(1.0, std::sqrt((1.0 - k) * (1.0 + k))));
}

EllipticModulus::EllipticModulus(double k) : k_(k) {
  if (!(k > 0.0 && k < 1.0)) throw std::invalid_argument("EllipticModulus: need 0 < k < 1");
  kp_ = std::sqrt((1.0 - k) * (1.0 + k));
  big_k_ = complete_elliptic_k(k_);
  big_kp_ = complete_elliptic_k(kp_);
}

JacobiTriple<double> jacobi_real(double u, double k) {
  if (!(k >= 0.0 && k < 1.0)) throw std::invalid_argument("jacobi_real: need 0 <= k < 1");
  if (k == 0.0) return {std::sin(u), std::cos(u), 1.0};

  // Descending AGM chain a_n, c_n; then walk the amplitude back down.
  std::array<double, 32> a{}, c{};
  a[0] = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  c[0] = k;
  int n = 0;
  while (std::abs(c[n]) > 1e-17 && n < 31) {
    const double an = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    a[n + 1] = an;
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int i = n; i > 0; --i) phi = 0.5 * (phi + std::asin(c[i] * std::sin(phi) / a[i]));
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  return {sn, cn, std::sqrt(1.0 - k * k * sn * sn)};
}

JacobiTriple<Complex> jacobi_sn_cn_dn(Complex u, double k) {
  if (!std::isfinite(u.real()) || !std::isfinite(u.imag()))
    throw std::domain_error("jacobi_sn_cn_dn: non-finite argument");
  const double x = u.real(), y = u.imag();
  if (std::abs(y) <= 1e-14 * (1.0 + std::abs(x))) {
    const auto r = jacobi_real(x, k);
    return {r.sn, r.cn, r.dn};
  }
  const EllipticModulus mod(k);
  const double big_k = mod.quarter_period(), big_kp = mod.complementary_quarter_period();
  const bool on_im_kp = std::abs(y - big_kp) <= 1e-10 * (1.0 + big_kp);
  const bool on_re_k = std::abs(x - big_k) <= 1e-10 * (1.0 + big_k);
  if (!on_im_kp && !on_re_k) {
    throw std::domain_error("jacobi_sn_cn_dn: argument outside the supported lines Im=0, Im=K', Re=K");
  }
  // Addition theorem for x + iy with the imaginary-argument transformation
  // sn(iy,k) = i sc(y,k'), cn(iy,k) = nc(y,k'), dn(iy,k) = dc(y,k').
  const auto r = jacobi_real(x, k);
  const auto q = jacobi_real(y, mod.kprime());
  const double den = q.cn * q.cn + k * k * r.sn * r.sn * q.sn * q.sn;
  if (std::abs(den) < 1e-14) throw std::domain_error("jacobi_sn_cn_dn: pole");
  const Complex sn{r.sn * q.dn / den, r.cn * r.dn * q.sn * q.cn / den};
  const Complex cn{r.cn * q.cn / den, -r.sn * r.dn * q.sn * q.dn / den};
  const Complex dn{r.dn * q.cn * q.dn / den, -k * k * r.sn * r.cn * q.sn / den};
  return {sn, cn, dn};
}

namespace {

double bessel_series(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= half / i;
  double sum = term;
  const double q = -half * half;
  for (int m = 1; m < 500; ++m) {
    term *= q / (static_cast<double>(m) * (m + n));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

double bessel_miller(int n, double x) {
  const double top = std::max<double>(n, x);
  int start = static_cast<int>(top + 30.0 + std::sqrt(40.0 * top));
  start += start % 2;
  double next = 0.0, cur = 1e-300, result = 0.0, norm = 0.0;
  for (int k = start; k > 0; --k) {
    const double prev = (2.0 * k / x) * cur - next;
    next = cur;
    cur = prev;  // cur = J_{k-1}
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      result *= 1e-250;
      norm *= 1e-250;
    }
    if (k - 1 == n) result = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
  }
  norm += cur;
  return result / norm;
}

}  // namespace

double bessel_j(int n, double x) {
  if (n < 0) throw std::invalid_argument("bessel_j: order must be >= 0");
  if (!(std::abs(x) <= 50.0)) throw std::domain_error("bessel_j: |x| > 50");
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  const double ax = std::abs(x);
  const double v = (ax <= 6.0) ? bessel_series(n, ax) : bessel_miller(n, ax);
  return (x < 0.0 && n % 2 == 1) ? -v : v;
}

double legendre_p(int n, int m, double x) {
  if (n < 0) throw std::invalid_argument("legendre_p: n must be >= 0");
  if (std::abs(m) > n) throw std::invalid_argument("legendre_p: |m| > n");
  if (!(std::abs(x) <= 1.0)) throw std::domain_error("legendre_p: |x| > 1");
  if (m < 0) {
    const int am = -m;
    double ratio = 1.0;  // (n-am)!/(n+am)!
    for (int i = n - am + 1; i <= n + am; ++i) ratio /= i;
    return ((am % 2) ? -1.0 : 1.0) * ratio * legendre_p(n, am, x);
  }
  const double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
  double pmm = 1.0;
  double fact = 1.0;
  for (int i = 1; i <= m; ++i) {
    pmm *= -fact * somx2;
    fact += 2.0;
  }
  if (n == m) return pmm;
  double pmmp1 = x * (2.0 * m + 1.0) * pmm;
  if (n == m + 1) return pmmp1;
  double pnm = 0.0;
  for (int l = m + 2; l <= n; ++l) {
    pnm = (x * (2.0 * l - 1.0) * pmmp1 - (l + m - 1.0) * pmm) / (l - m);
    pmm = pmmp1;
    pmmp1 = pnm;
  }
  return pnm;
}

}  // namespace sepfp
