#pragma once

#include <complex>
#include <span>

namespace discinterp {

using cplx = std::complex<double>;

/// Maps an angle onto (-pi, pi].
double normalize_phase(double phase);

/// A complex number w stored as (ln|w|, arg w). Zero is log_modulus == -inf.
struct LogComplex {
  double log_modulus = 0.0;
  double phase = 0.0;

  static LogComplex zero();
  static LogComplex one() { return {}; }
  static LogComplex from(cplx w);
  /// From a (not necessarily principal) complex logarithm.
  static LogComplex from_log(cplx log_w);

  bool is_zero() const;
  /// exp back to a complex value; overflows to inf / underflows to 0 silently.
  cplx value() const;
  /// Principal logarithm; requires !is_zero().
  cplx log() const { return {log_modulus, phase}; }

  LogComplex& operator*=(const LogComplex& other);
  LogComplex& operator/=(const LogComplex& other);
  friend LogComplex operator*(LogComplex a, const LogComplex& b) { return a *= b; }
  friend LogComplex operator/(LogComplex a, const LogComplex& b) { return a /= b; }
  LogComplex operator-() const;
  LogComplex pow(int k) const;
};

/// ln of sum_i w_i, with the sum formed after scaling by the largest |w_i|.
/// Terms are accumulated in decreasing modulus.
LogComplex log_sum(std::span<const LogComplex> terms);
LogComplex log_sum(const LogComplex& a, const LogComplex& b);

}  // namespace discinterp
