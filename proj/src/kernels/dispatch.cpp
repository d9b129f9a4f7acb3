#include <cstdlib>
#include <cstring>

#include "discinterp/kernels.hpp"

namespace discinterp::kernels {

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(DISCINTERP_HAVE_AVX2)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Backend active_backend() {
  static const Backend chosen = [] {
    const char* env = std::getenv("DISCINTERP_KERNEL");
    if (env && std::strcmp(env, "scalar") == 0) return Backend::scalar;
    return avx2_available() ? Backend::avx2 : Backend::scalar;
  }();
  return chosen;
}

#if defined(DISCINTERP_HAVE_AVX2)
#define DISCINTERP_DISPATCH(fn, ...)                                      \
  return (backend == Backend::avx2 && avx2_available()) ? avx2::fn(__VA_ARGS__) \
                                                         : scalar::fn(__VA_ARGS__)
#else
#define DISCINTERP_DISPATCH(fn, ...) \
  (void)backend;                      \
  return scalar::fn(__VA_ARGS__)
#endif

double mobius_power_sum(const NodeArrays& nodes, cplx z, int power, Backend backend) {
  DISCINTERP_DISPATCH(mobius_power_sum, nodes, z, power);
}

double log_abs_canonical(const NodeArrays& nodes, cplx z, int genus, Backend backend) {
  DISCINTERP_DISPATCH(log_abs_canonical, nodes, z, genus);
}

std::size_t count_within(const NodeArrays& nodes, cplx z, double t, Backend backend) {
  DISCINTERP_DISPATCH(count_within, nodes, z, t);
}

#undef DISCINTERP_DISPATCH

}  // namespace discinterp::kernels
