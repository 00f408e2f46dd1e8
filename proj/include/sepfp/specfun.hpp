#pragma once

#include <complex>

namespace sepfp {

using Complex = std::complex<double>;

/// Modulus k of the Jacobi elliptic functions with its complement and quarter periods.
class EllipticModulus {
 public:
  /// Throws std::invalid_argument unless 0 < k < 1.
  explicit EllipticModulus(double k);

  double k() const { return k_; }
  double kprime() const { return kp_; }
  /// K(k)
  double quarter_period() const { return big_k_; }
  /// K'(k) = K(k')
  double complementary_quarter_period() const { return big_kp_; }

 private:
  double k_;
  double kp_;
  double big_k_;
  double big_kp_;
};

/// Complete elliptic integral of the first kind via the arithmetic-geometric mean.
/// Domain 0 <= k < 1.
double complete_elliptic_k(double k);

template <typename T>
struct JacobiTriple {
  T sn;
  T cn;
  T dn;
};

/// Real-argument sn, cn, dn by descending Landen (AGM) transformation; 0 <= k < 1.
JacobiTriple<double> jacobi_real(double u, double k);

/// sn, cn, dn on the three lines the ellipsoidal and conical charts use: the
/// real axis, the line Im u = K', and the line Re u = K. Other arguments, and
/// poles on those lines, throw std::domain_error.
JacobiTriple<Complex> jacobi_sn_cn_dn(Complex u, double k);

/// Bessel function of the first kind J_n(x), n >= 0, |x| <= 50.
/// Ascending series for small |x|, Miller backward recurrence beyond.
double bessel_j(int n, double x);

/// Associated Legendre function P_n^m(x) on [-1, 1], Condon-Shortley phase
/// included; negative m via P_n^{-m} = (-1)^m (n-m)!/(n+m)! P_n^m.
double legendre_p(int n, int m, double x);

}  // namespace sepfp
