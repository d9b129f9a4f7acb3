#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include "discinterp/geometry.hpp"
#include "discinterp/kernels.hpp"
#include "discinterp/sharpness.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace discinterp;
namespace k = discinterp::kernels;

namespace {

DiscSequence random_sequence(std::uint64_t seed, std::size_t n, double r_max) {
  std::mt19937_64 rng(seed);
  std::vector<cplx> v;
  while (v.size() < n) {
    const cplx z = oracle::random_in_disc(rng, r_max);
    if (std::abs(z) > 1e-3) v.push_back(z);
  }
  return DiscSequence::from_values(v);
}

// Sizes that exercise empty input, pure tails and full vectors plus tails.
constexpr std::size_t kSizes[] = {0, 1, 3, 4, 5, 7, 8, 13, 64, 101};

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar kernels match direct sums") {
    const DiscSequence seq = random_sequence(1, 37, 0.99);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 50; ++i) {
      const cplx z = oracle::random_in_disc(rng, 0.999);
      double power = 0.0, log_abs = 0.0;
      std::size_t count = 0;
      for (std::size_t n = 0; n < seq.size(); ++n) {
        const cplx zn = seq[n].value();
        const cplx a = (1.0 - std::norm(zn)) / (1.0 - std::conj(zn) * z);
        power += std::pow(std::abs(a), 3);
        log_abs += std::log(std::abs(oracle::primary_factor(a, 2)));
        count += std::abs(zn - z) <= 0.3;
      }
      const NodeArrays& arr = seq.arrays();
      CHECK(k::scalar::mobius_power_sum(arr, z, 3) == doctest::Approx(power).epsilon(1e-13));
      CHECK(k::scalar::log_abs_canonical(arr, z, 2) == doctest::Approx(log_abs).epsilon(1e-11).scale(1.0));
      CHECK(k::scalar::count_within(arr, z, 0.3) == count);
    }
  }

  TEST_CASE("avx2 kernels agree with the scalar reference") {
    if (!k::avx2_available()) {
      MESSAGE("AVX2/FMA not available on this host; equivalence not exercised");
      return;
    }
    std::mt19937_64 rng(3);
    for (std::size_t size : kSizes) {
      const DiscSequence seq = random_sequence(10 + size, size, 0.999);
      const NodeArrays& arr = seq.arrays();
      for (int i = 0; i < 40; ++i) {
        const cplx z = oracle::random_in_disc(rng, 0.9999);
        for (int power : {1, 2, 3, 7}) {
          const double s = k::scalar::mobius_power_sum(arr, z, power);
          CHECK(k::avx2::mobius_power_sum(arr, z, power) == doctest::Approx(s).epsilon(1e-13));
        }
        for (int genus : {0, 1, 2, 5}) {
          const double s = k::scalar::log_abs_canonical(arr, z, genus);
          CHECK(k::avx2::log_abs_canonical(arr, z, genus) == doctest::Approx(s).epsilon(1e-12).scale(1.0));
        }
        for (double t : {0.0, 0.05, 0.5, 2.0}) CHECK(k::avx2::count_within(arr, z, t) == k::scalar::count_within(arr, z, t));
      }
    }
  }

  TEST_CASE("avx2 kernels at nodes and on anchored pairs") {
    if (!k::avx2_available()) return;
    const DiscSequence seq = random_sequence(4, 21, 0.99);
    for (std::size_t n = 0; n < seq.size(); ++n) {
      const cplx z = seq[n].value();
      CHECK(k::avx2::log_abs_canonical(seq.arrays(), z, 1) == -std::numeric_limits<double>::infinity());
      CHECK(k::avx2::count_within(seq.arrays(), z, 0.0) == k::scalar::count_within(seq.arrays(), z, 0.0));
    }
    // pairs whose gaps underflow a product of two factors
    const DiscSequence paired = SharpnessSequence(1.0, 9).representable_sequence();
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
      const cplx z = oracle::random_in_disc(rng, 0.999);
      const double s = k::scalar::log_abs_canonical(paired.arrays(), z, 0);
      CHECK(k::avx2::log_abs_canonical(paired.arrays(), z, 0) == doctest::Approx(s).epsilon(1e-12).scale(1.0));
    }
    for (std::size_t n = 0; n < paired.size(); ++n) {
      const cplx z = paired[n].value();
      CHECK(k::avx2::count_within(paired.arrays(), z, 1e-3) == k::scalar::count_within(paired.arrays(), z, 1e-3));
    }
  }

  TEST_CASE("dispatch honours the requested backend") {
    const DiscSequence seq = random_sequence(6, 9, 0.9);
    const cplx z(0.1, -0.2);
    CHECK(k::mobius_power_sum(seq.arrays(), z, 2, k::Backend::scalar) ==
          k::scalar::mobius_power_sum(seq.arrays(), z, 2));
    CHECK(k::backend_name(k::Backend::avx2) == "avx2");
    CHECK(k::backend_name(k::Backend::scalar) == "scalar");
    if (!k::avx2_available()) CHECK(k::active_backend() == k::Backend::scalar);
  }
}

TEST_SUITE("kernels_override") {
  TEST_CASE("DISCINTERP_KERNEL=scalar forces the reference path") {
    const char* env = std::getenv("DISCINTERP_KERNEL");
    if (!env || std::strcmp(env, "scalar") != 0) {
      MESSAGE("DISCINTERP_KERNEL is not set to scalar; nothing to check");
      return;
    }
    CHECK(k::active_backend() == k::Backend::scalar);
  }
}
