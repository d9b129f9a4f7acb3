#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "discinterp/counting.hpp"
#include "discinterp/errors.hpp"
#include "discinterp/products.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace discinterp;

namespace {

std::vector<cplx> random_points(std::uint64_t seed, std::size_t n, double r_max) {
  std::mt19937_64 rng(seed);
  std::vector<cplx> out;
  for (std::size_t i = 0; i < n; ++i) {
    cplx z;
    do z = oracle::random_in_disc(rng, r_max);
    while (std::abs(z) < 0.1);
    out.push_back(z);
  }
  return out;
}

cplx mobius(cplx zn, cplx z) { return (1.0 - std::norm(zn)) / (1.0 - std::conj(zn) * z); }

double relative_error(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("products") {
  TEST_CASE("elementary factor values") {
    CHECK(weierstrass_E(cplx(0.3, 0.2), 0) == cplx(0.7, -0.2));
    for (int s : {0, 1, 4}) CHECK(weierstrass_E(0.0, s) == cplx(1.0, 0.0));
    CHECK(std::abs(weierstrass_E(0.5, 1) - 0.5 * std::exp(0.5)) < 1e-15);
    CHECK(harmonic_number(0) == 0.0);
    CHECK(harmonic_number(3) == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
      const cplx w = oracle::random_in_disc(rng, 0.95);
      for (int s : {0, 1, 3, 6}) {
        CHECK(relative_error(weierstrass_E(w, s), oracle::primary_factor(w, s)) < 1e-14);
        auto e = [s](cplx x) { return oracle::primary_factor(x, s); };
        CHECK(std::abs(weierstrass_E_prime(w, s) - oracle::cauchy_derivative(e, w, 0.02, 1)) < 1e-11);
        CHECK(std::abs(weierstrass_E_second(w, s) - oracle::cauchy_derivative(e, w, 0.02, 2)) < 1e-9);
      }
    }
  }

  TEST_CASE("log value matches the multiplied-out product") {
    for (std::uint64_t seed = 2; seed < 7; ++seed) {
      const std::vector<cplx> v = random_points(seed, 10, 0.95);
      for (int s : {1, 2, 5}) {
        const CanonicalProduct cp(DiscSequence::from_values(v), s);
        CHECK(relative_error(cp.value(0.0), oracle::direct_product(v, s, 0.0)) < 1e-10);
        std::mt19937_64 rng(seed + 100);
        for (int i = 0; i < 20; ++i) {
          const cplx z = oracle::random_in_disc(rng, 0.97);
          const cplx direct = oracle::direct_product(v, s, z);
          CHECK(relative_error(cp.value(z), direct) < 1e-10);
          CHECK(cp.log_abs_value(z) == doctest::Approx(std::log(std::abs(direct))).epsilon(1e-10).scale(1.0));
        }
      }
    }
  }

  TEST_CASE("genus-0 product is a Blaschke product") {
    const std::vector<cplx> v = random_points(7, 12, 0.9);
    const CanonicalProduct b = CanonicalProduct::blaschke(DiscSequence::from_values(v));
    std::mt19937_64 rng(8);
    for (int i = 0; i < 50; ++i) {
      const cplx z = oracle::random_in_disc(rng, 0.99);
      cplx direct = 1.0;
      for (cplx zn : v) direct *= std::conj(zn) * (zn - z) / (1.0 - std::conj(zn) * z);
      CHECK(relative_error(b.value(z), direct) < 1e-12);
    }
  }

  TEST_CASE("empty product and zeros") {
    const CanonicalProduct empty(DiscSequence{}, 2);
    CHECK(empty.value(cplx(0.4, 0.4)) == cplx(1.0, 0.0));
    CHECK(empty.log_derivative(0.3) == cplx(0.0, 0.0));
    const std::vector<cplx> v{0.5, cplx(0.0, 0.7)};
    const CanonicalProduct cp(DiscSequence::from_values(v), 1);
    CHECK(cp.log_value(0.5).log_modulus == -std::numeric_limits<double>::infinity());
    CHECK(cp.log_abs_value(cplx(0.0, 0.7)) == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(cp.log_derivative(0.5), PoleError);
    CHECK_THROWS_AS(CanonicalProduct(DiscSequence::from_values(v), -1), DomainError);
  }

  TEST_CASE("tsuji bound on random sequences") {
    for (int s : {1, 2, 3}) {
      const CanonicalProduct cp(DiscSequence::from_values(random_points(9 + s, 50, 0.99)), s);
      std::mt19937_64 rng(20 + s);
      int violations = 0;
      for (int i = 0; i < 1000; ++i) {
        const cplx z = oracle::random_in_disc(rng, 0.999);
        const TsujiReport r = tsuji_bound_check(cp, z);
        double rhs = 0.0;
        for (std::size_t n = 0; n < cp.size(); ++n) rhs += std::pow(std::abs(mobius(cp.sequence()[n].value(), z)), s + 1);
        CHECK(r.rhs == doctest::Approx(std::ldexp(rhs, s + 2)).epsilon(1e-12));
        violations += !r.holds;
      }
      CHECK(violations == 0);
    }
  }

  TEST_CASE("mobius power sums against direct sums") {
    const std::vector<cplx> v = random_points(30, 37, 0.98);
    const CanonicalProduct cp(DiscSequence::from_values(v), 2);
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
      const cplx z = oracle::random_in_disc(rng, 0.99);
      double direct = 0.0;
      for (cplx zn : v) direct += std::pow(std::abs(mobius(zn, z)), 3);
      CHECK(cp.mobius_power_sum(z) == doctest::Approx(direct).epsilon(1e-13));
    }
    double at_node = 0.0;
    for (cplx zn : v) at_node += std::pow(std::abs(mobius(zn, v[4])), 3);
    CHECK(cp.mobius_power_sum_at_node(4) == doctest::Approx(at_node).epsilon(1e-13));
  }

  TEST_CASE("mobius sum constant against a direct scan") {
    const std::vector<cplx> v = random_points(32, 30, 0.95);
    const CanonicalProduct cp(DiscSequence::from_values(v), 1);
    const GrowthFunction gf = GrowthFunction::power(1.0);
    std::vector<cplx> grid = random_points(33, 200, 0.99);
    grid.push_back(0.0);  // psi~ = 0 there, skipped
    double best = 0.0;
    for (cplx z : grid) {
      const double pt = 1.0 / (1.0 - std::abs(z)) - 1.0;
      if (pt <= 0.0) continue;
      double sum = 0.0;
      for (cplx zn : v) sum += std::norm(mobius(zn, z));
      best = std::max(best, sum / pt);
    }
    CHECK(lemma1_psi_bound(cp, gf, grid).best_constant == doctest::Approx(best).epsilon(1e-12));
  }

  TEST_CASE("derivative at a node") {
    // singleton: P'(z_1) = -e^{H_s} conj(z_1) / (1 - |z_1|^2)
    const cplx z1(0.3, 0.4);
    for (int s : {1, 2, 4}) {
      const CanonicalProduct single(DiscSequence::from_values(std::vector<cplx>{z1}), s);
      const cplx expected = -std::exp(harmonic_number(s)) * std::conj(z1) / (1.0 - std::norm(z1));
      CHECK(relative_error(single.prime_at_node(0), expected) < 1e-14);
    }
    const std::vector<cplx> v = random_points(34, 15, 0.95);
    for (int s : {1, 3}) {
      const CanonicalProduct cp(DiscSequence::from_values(v), s);
      auto p = [&](cplx z) { return oracle::direct_product(v, s, z); };
      for (std::size_t k = 0; k < v.size(); ++k) {
        const double r = 0.25 * (1.0 - std::abs(v[k]));
        CHECK(relative_error(cp.prime_at_node(k), oracle::richardson_derivative(p, v[k], 1e-3 * r)) < 1e-7);
        double gap = 1.0;
        for (cplx w : v)
          if (w != v[k]) gap = std::min(gap, std::abs(w - v[k]));
        const double rc = 0.5 * std::min(r, gap);
        CHECK(relative_error(cp.prime_at_node(k), oracle::cauchy_derivative(p, v[k], rc, 1, 256)) < 1e-9);
      }
    }
  }

  TEST_CASE("logarithmic derivative") {
    const std::vector<cplx> v = random_points(35, 12, 0.9);
    const CanonicalProduct cp(DiscSequence::from_values(v), 2);
    auto p = [&](cplx z) { return oracle::direct_product(v, 2, z); };
    std::mt19937_64 rng(36);
    for (int i = 0; i < 50; ++i) {
      const cplx z = oracle::random_in_disc(rng, 0.95);
      double gap = 1.0 - std::abs(z);
      for (cplx w : v) gap = std::min(gap, std::abs(w - z));
      if (gap < 1e-3) continue;
      const cplx ld = oracle::richardson_derivative(p, z, 0.05 * gap) / p(z);
      CHECK(std::abs(cp.log_derivative(z) - ld) < 1e-7 * std::max(1.0, std::abs(ld)));
      auto lg = [&](cplx x) { return cp.log_derivative(x); };
      const cplx ldp = oracle::richardson_derivative(lg, z, 0.05 * gap);
      CHECK(std::abs(cp.log_derivative_prime(z) - ldp) < 1e-6 * std::max(1.0, std::abs(ldp)));
    }
    // residue 1 at every simple zero
    for (std::size_t k = 0; k < v.size(); ++k) {
      double gap = 1.0 - std::abs(v[k]);
      for (cplx w : v)
        if (w != v[k]) gap = std::min(gap, std::abs(w - v[k]));
      auto g = [&](cplx x) { return cp.log_derivative(x); };
      CHECK(std::abs(oracle::contour_mean(g, v[k], 0.3 * gap, 256) - 1.0) < 1e-10);
    }
  }

  TEST_CASE("second derivative") {
    const std::vector<cplx> v = random_points(37, 10, 0.9);
    for (int s : {1, 2}) {
      const CanonicalProduct cp(DiscSequence::from_values(v), s);
      auto p = [&](cplx z) { return oracle::direct_product(v, s, z); };
      std::mt19937_64 rng(38);
      for (int i = 0; i < 30; ++i) {
        const cplx z = oracle::random_in_disc(rng, 0.95);
        double gap = 1.0 - std::abs(z);
        for (cplx w : v) gap = std::min(gap, std::abs(w - z));
        if (gap < 1e-2) continue;
        const cplx cauchy = oracle::cauchy_derivative(p, z, 0.5 * (1.0 - std::abs(z)), 2, 512);
        CHECK(std::abs(cp.second_derivative(z) - cauchy) < 1e-8 * std::max(1.0, std::abs(cauchy)));
        auto d1 = [&](cplx x) { return oracle::richardson_derivative(p, x, 1e-3 * gap); };
        const cplx fd = oracle::richardson_derivative(d1, z, 1e-2 * gap);
        CHECK(std::abs(cp.second_derivative(z) - fd) < 1e-4 * std::max(1.0, std::abs(fd)));
      }
      for (std::size_t k = 0; k < v.size(); ++k) {
        const double r = 0.5 * (1.0 - std::abs(v[k]));
        const cplx cauchy = oracle::cauchy_derivative(p, v[k], r, 2, 512);
        CHECK(std::abs(cp.second_derivative_at_node(k) - cauchy) < 1e-8 * std::max(1.0, std::abs(cauchy)));
        CHECK(std::abs(cp.second_derivative(v[k]) - cp.second_derivative_at_node(k)) < 1e-14 * std::abs(cauchy) + 1e-300);
        // -P''/(2P') through the cancelled node form
        const cplx ratio = -cp.second_derivative_at_node(k) / (2.0 * cp.prime_at_node(k));
        CHECK(relative_error(cp.derivative_ratio_at_node(k), ratio) < 1e-11);
      }
    }
  }

  TEST_CASE("reduced product index quantities") {
    const CanonicalProduct single(DiscSequence::from_values(std::vector<cplx>{0.6}), 1);
    const Lemma2Report r1 = lemma2_index_check(single);
    CHECK(r1.lhs[0] == 0.0);
    CHECK(r1.rhs[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r1.constant == 0.0);

    // two close points: |ln|E(A_j(z_k))| + ln(delta (1-|z_k|) / d)| over 1 + |A_j(z_k)|^{s+1}
    const std::vector<cplx> two{0.6, cplx(0.62, 0.05)};
    const int s = 2;
    const CanonicalProduct cp(DiscSequence::from_values(two), s);
    const Lemma2Report r2 = lemma2_index_check(cp);
    for (std::size_t k = 0; k < 2; ++k) {
      const cplx zk = two[k], zj = two[1 - k];
      const double d = std::abs(zj - zk), radius = 0.5 * (1.0 - std::abs(zk));
      REQUIRE(d < radius);
      const double lhs = std::abs(std::log(std::abs(oracle::primary_factor(mobius(zj, zk), s))) + std::log(radius / d));
      const double rhs = 1.0 + std::pow(std::abs(mobius(zj, zk)), s + 1);
      CHECK(r2.lhs[k] == doctest::Approx(lhs).epsilon(1e-12));
      CHECK(r2.rhs[k] == doctest::Approx(rhs).epsilon(1e-13));
      CHECK(r2.ratio[k] == doctest::Approx(lhs / rhs).epsilon(1e-12));
    }
    CHECK(r2.constant == doctest::Approx(std::max(r2.ratio[0], r2.ratio[1])));
    CHECK_THROWS_AS(lemma2_index_check(cp, 1.0), DomainError);
  }

  TEST_CASE("node derivative constants on a singleton") {
    const CanonicalProduct cp(DiscSequence::from_values(std::vector<cplx>{0.5}), 1);
    const Proposition1Report r = proposition1_check(cp, GrowthFunction::power(1.0));
    // (1 - |z|)|P'(z)| = 0.5 * e * 0.5 / 0.75 = e / 3, psi(2) = 2
    CHECK(r.ln_prime_bound == doctest::Approx(std::abs(1.0 - std::log(3.0)) / 2.0).epsilon(1e-14));
    CHECK(r.n_bound == doctest::Approx(0.5));
    CHECK(r.N_bound == 0.0);
    CHECK(r.class_R);
    CHECK_FALSE(proposition1_check(cp, GrowthFunction::log_power(0.0)).class_R);
  }

  TEST_CASE("node derivative constants against direct products") {
    const std::vector<cplx> v = random_points(39, 20, 0.95);
    const CanonicalProduct cp(DiscSequence::from_values(v), 1);
    const GrowthFunction gf = GrowthFunction::power(1.0);
    double best = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const double scale = 1.0 - std::abs(v[k]);
      const cplx pk = -std::exp(1.0) * std::conj(v[k]) * oracle::direct_reduced_product(v, 1, k, v[k]) /
                      (1.0 - std::norm(v[k]));
      best = std::max(best, std::abs(std::log(scale * std::abs(pk))) / gf.psi(1.0 / scale));
    }
    const Proposition1Report r = proposition1_check(cp, gf);
    CHECK(r.ln_prime_bound == doctest::Approx(best).epsilon(1e-10));
    CHECK(r.N_bound == doctest::Approx(check_concentration(cp.sequence(), gf).best_constant));
  }
}
