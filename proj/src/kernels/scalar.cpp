#include <cmath>
#include <limits>

#include "discinterp/kernels.hpp"

namespace discinterp::kernels::scalar {

double mobius_power_sum(const NodeArrays& nodes, cplx z, int power, std::size_t begin) {
  const double x = z.real(), y = z.imag();
  double sum = 0.0;
  for (std::size_t n = begin; n < nodes.size(); ++n) {
    const double dre = (nodes.anchor_re[n] - x) + nodes.offset_re[n];
    const double dim = (nodes.anchor_im[n] - y) + nodes.offset_im[n];
    const double vr = nodes.value_re[n], vi = nodes.value_im[n], c = nodes.weight[n];
    const double den_re = c + vr * dre + vi * dim;
    const double den_im = vr * dim - vi * dre;
    const double a = c / std::hypot(den_re, den_im);
    double p = 1.0;
    for (int j = 0; j < power; ++j) p *= a;
    sum += p;
  }
  return sum;
}

double log_abs_canonical(const NodeArrays& nodes, cplx z, int genus, std::size_t begin) {
  const double x = z.real(), y = z.imag();
  double sum = 0.0;
  for (std::size_t n = begin; n < nodes.size(); ++n) {
    const double dre = (nodes.anchor_re[n] - x) + nodes.offset_re[n];
    const double dim = (nodes.anchor_im[n] - y) + nodes.offset_im[n];
    if (dre == 0.0 && dim == 0.0) return -std::numeric_limits<double>::infinity();
    const double vr = nodes.value_re[n], vi = nodes.value_im[n], c = nodes.weight[n];
    const double den_re = c + vr * dre + vi * dim;
    const double den_im = vr * dim - vi * dre;
    const double den_abs = std::hypot(den_re, den_im);
    // ln|1 - A| = ln|z_n| + ln|z_n - z| - ln|1 - conj(z_n) z|
    sum += std::log(std::hypot(vr, vi)) + std::log(std::hypot(dre, dim)) - std::log(den_abs);
    // Re sum_{j<=s} A^j / j, with A = c / den
    const double inv = c / (den_abs * den_abs);
    const double ar = den_re * inv, ai = -den_im * inv;
    double pr = 1.0, pi = 0.0;
    for (int j = 1; j <= genus; ++j) {
      const double nr = pr * ar - pi * ai;
      pi = pr * ai + pi * ar;
      pr = nr;
      sum += pr / j;
    }
  }
  return sum;
}

std::size_t count_within(const NodeArrays& nodes, cplx z, double t, std::size_t begin) {
  const double x = z.real(), y = z.imag();
  const double t2 = t * t;
  std::size_t count = 0;
  for (std::size_t n = begin; n < nodes.size(); ++n) {
    const double dre = (nodes.anchor_re[n] - x) + nodes.offset_re[n];
    const double dim = (nodes.anchor_im[n] - y) + nodes.offset_im[n];
    if (dre * dre + dim * dim <= t2) ++count;
  }
  return count;
}

}  // namespace discinterp::kernels::scalar
