// AVX2/FMA variants of the node kernels. Compiled with -mavx2 -mfma; only
// entered through dispatch after a CPU check.

#include <immintrin.h>

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "discinterp/kernels.hpp"

namespace discinterp::kernels::avx2 {

namespace {

struct Lanes {
  __m256d dre, dim, vr, vi, c, den_re, den_im;
};

inline Lanes load_lanes(const NodeArrays& nodes, std::size_t n, __m256d x, __m256d y) {
  Lanes l;
  l.dre = _mm256_add_pd(_mm256_sub_pd(_mm256_loadu_pd(&nodes.anchor_re[n]), x),
                        _mm256_loadu_pd(&nodes.offset_re[n]));
  l.dim = _mm256_add_pd(_mm256_sub_pd(_mm256_loadu_pd(&nodes.anchor_im[n]), y),
                        _mm256_loadu_pd(&nodes.offset_im[n]));
  l.vr = _mm256_loadu_pd(&nodes.value_re[n]);
  l.vi = _mm256_loadu_pd(&nodes.value_im[n]);
  l.c = _mm256_loadu_pd(&nodes.weight[n]);
  // 1 - conj(z_n) z = c + conj(z_n)(z_n - z)
  l.den_re = _mm256_add_pd(l.c, _mm256_add_pd(_mm256_mul_pd(l.vr, l.dre), _mm256_mul_pd(l.vi, l.dim)));
  l.den_im = _mm256_sub_pd(_mm256_mul_pd(l.vr, l.dim), _mm256_mul_pd(l.vi, l.dre));
  return l;
}

inline double hsum(__m256d v) {
  alignas(32) double buf[4];
  _mm256_store_pd(buf, v);
  return (buf[0] + buf[1]) + (buf[2] + buf[3]);
}

// Splits positive normal doubles into mantissa in [1,2) and unbiased exponent.
inline void frexp_lanes(__m256d v, __m256d& mantissa, __m256d& exponent) {
  const __m256i bits = _mm256_castpd_si256(v);
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
  mantissa = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
  // biased exponent as a double: OR into 2^52 and subtract
  const __m256i e = _mm256_srli_epi64(bits, 52);
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
  const __m256d e_d = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(e, magic)),
                                    _mm256_set1_pd(4503599627370496.0));
  exponent = _mm256_sub_pd(e_d, _mm256_set1_pd(1023.0));
}

}  // namespace

double mobius_power_sum(const NodeArrays& nodes, cplx z, int power) {
  const std::size_t size = nodes.size();
  const __m256d x = _mm256_set1_pd(z.real()), y = _mm256_set1_pd(z.imag());
  __m256d acc = _mm256_setzero_pd();
  std::size_t n = 0;
  for (; n + 4 <= size; n += 4) {
    const Lanes l = load_lanes(nodes, n, x, y);
    const __m256d mod2 = _mm256_fmadd_pd(l.den_re, l.den_re, _mm256_mul_pd(l.den_im, l.den_im));
    const __m256d a = _mm256_div_pd(l.c, _mm256_sqrt_pd(mod2));
    __m256d p = _mm256_set1_pd(1.0);
    for (int j = 0; j < power; ++j) p = _mm256_mul_pd(p, a);
    acc = _mm256_add_pd(acc, p);
  }
  double sum = hsum(acc);
  if (n < size) sum += scalar::mobius_power_sum(nodes, z, power, n);
  return sum;
}

double log_abs_canonical(const NodeArrays& nodes, cplx z, int genus) {
  const std::size_t size = nodes.size();
  const __m256d x = _mm256_set1_pd(z.real()), y = _mm256_set1_pd(z.imag());
  const __m256d tiny = _mm256_set1_pd(DBL_MIN);
  __m256d prod = _mm256_set1_pd(1.0);
  __m256d exp_sum = _mm256_setzero_pd();
  __m256d re_q = _mm256_setzero_pd();
  int degenerate = 0;
  std::size_t n = 0;
  for (; n + 4 <= size; n += 4) {
    const Lanes l = load_lanes(nodes, n, x, y);
    const __m256d d2 = _mm256_fmadd_pd(l.dre, l.dre, _mm256_mul_pd(l.dim, l.dim));
    const __m256d v2 = _mm256_fmadd_pd(l.vr, l.vr, _mm256_mul_pd(l.vi, l.vi));
    const __m256d den2 = _mm256_fmadd_pd(l.den_re, l.den_re, _mm256_mul_pd(l.den_im, l.den_im));
    // |1 - A|^2 = |z_n|^2 |z_n - z|^2 / |den|^2
    const __m256d m2 = _mm256_div_pd(_mm256_mul_pd(v2, d2), den2);
    degenerate |= _mm256_movemask_pd(_mm256_cmp_pd(m2, tiny, _CMP_LT_OQ));
    __m256d mant, expo;
    frexp_lanes(_mm256_mul_pd(prod, m2), mant, expo);
    prod = mant;
    exp_sum = _mm256_add_pd(exp_sum, expo);
    if (genus > 0) {
      const __m256d inv = _mm256_div_pd(l.c, den2);
      const __m256d ar = _mm256_mul_pd(l.den_re, inv);
      const __m256d ai = _mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(l.den_im, inv));
      __m256d pr = ar, pi = ai;
      re_q = _mm256_add_pd(re_q, pr);
      for (int j = 2; j <= genus; ++j) {
        const __m256d nr = _mm256_fmsub_pd(pr, ar, _mm256_mul_pd(pi, ai));
        pi = _mm256_fmadd_pd(pr, ai, _mm256_mul_pd(pi, ar));
        pr = nr;
        re_q = _mm256_add_pd(re_q, _mm256_div_pd(pr, _mm256_set1_pd(static_cast<double>(j))));
      }
    }
  }
  // A factor below DBL_MIN (z on top of a node, or a sub-1e-154 gap) cannot be
  // squared safely; the reference path takes logs factor by factor instead.
  if (degenerate) return scalar::log_abs_canonical(nodes, z, genus);

  alignas(32) double p[4], e[4];
  _mm256_store_pd(p, prod);
  _mm256_store_pd(e, exp_sum);
  double sum = 0.0;
  for (int lane = 0; lane < 4; ++lane) sum += std::log(p[lane]) + e[lane] * std::numbers::ln2;
  sum = 0.5 * sum + hsum(re_q);
  if (n < size) sum += scalar::log_abs_canonical(nodes, z, genus, n);
  return sum;
}

std::size_t count_within(const NodeArrays& nodes, cplx z, double t) {
  const std::size_t size = nodes.size();
  const __m256d x = _mm256_set1_pd(z.real()), y = _mm256_set1_pd(z.imag());
  const __m256d t2 = _mm256_set1_pd(t * t);
  std::size_t count = 0;
  std::size_t n = 0;
  for (; n + 4 <= size; n += 4) {
    const __m256d dre = _mm256_add_pd(_mm256_sub_pd(_mm256_loadu_pd(&nodes.anchor_re[n]), x),
                                      _mm256_loadu_pd(&nodes.offset_re[n]));
    const __m256d dim = _mm256_add_pd(_mm256_sub_pd(_mm256_loadu_pd(&nodes.anchor_im[n]), y),
                                      _mm256_loadu_pd(&nodes.offset_im[n]));
    // no FMA here: the comparison must round exactly like the scalar path
    const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dre, dre), _mm256_mul_pd(dim, dim));
    count += static_cast<std::size_t>(
        __builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(d2, t2, _CMP_LE_OQ)))));
  }
  if (n < size) count += scalar::count_within(nodes, z, t, n);
  return count;
}

}  // namespace discinterp::kernels::avx2
