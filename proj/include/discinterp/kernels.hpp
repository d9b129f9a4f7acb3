#pragma once

// Data-parallel sums over the nodes of a sequence. Every kernel has a scalar
// reference implementation; an AVX2/FMA variant is compiled on x86-64 and
// picked at runtime when the CPU supports it. DISCINTERP_KERNEL=scalar in the
// environment forces the reference path.

#include <cstddef>
#include <string_view>

#include "discinterp/geometry.hpp"

namespace discinterp::kernels {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b);
/// True when the AVX2 variant was compiled in and the CPU supports AVX2+FMA.
bool avx2_available();
/// The backend chosen at first use (environment override, then CPU detection).
Backend active_backend();

/// sum_n |A_n(z)|^power.
double mobius_power_sum(const NodeArrays& nodes, cplx z, int power, Backend backend);
/// sum_n ln|E(A_n(z), genus)|; -inf when z is a node.
double log_abs_canonical(const NodeArrays& nodes, cplx z, int genus, Backend backend);
/// #{n : |z_n - z| <= t}.
std::size_t count_within(const NodeArrays& nodes, cplx z, double t, Backend backend);

inline double mobius_power_sum(const NodeArrays& nodes, cplx z, int power) {
  return mobius_power_sum(nodes, z, power, active_backend());
}
inline double log_abs_canonical(const NodeArrays& nodes, cplx z, int genus) {
  return log_abs_canonical(nodes, z, genus, active_backend());
}
inline std::size_t count_within(const NodeArrays& nodes, cplx z, double t) {
  return count_within(nodes, z, t, active_backend());
}

namespace scalar {
// Reference implementations; `begin` skips the first nodes (vector tails).
double mobius_power_sum(const NodeArrays& nodes, cplx z, int power, std::size_t begin = 0);
double log_abs_canonical(const NodeArrays& nodes, cplx z, int genus, std::size_t begin = 0);
std::size_t count_within(const NodeArrays& nodes, cplx z, double t, std::size_t begin = 0);
}  // namespace scalar

namespace avx2 {
// Only callable when avx2_available().
double mobius_power_sum(const NodeArrays& nodes, cplx z, int power);
double log_abs_canonical(const NodeArrays& nodes, cplx z, int genus);
std::size_t count_within(const NodeArrays& nodes, cplx z, double t);
}  // namespace avx2

}  // namespace discinterp::kernels
