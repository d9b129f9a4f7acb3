#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "discinterp/errors.hpp"
#include "discinterp/geometry.hpp"
#include "discinterp/log_complex.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace discinterp;

TEST_SUITE("geometry") {
  TEST_CASE("pseudo distance of a point to itself is zero") {
    CHECK(pseudo_dist(cplx(0.3, -0.2), cplx(0.3, -0.2)) == 0.0);
    const DiscPoint p(cplx(0.7, 0.1));
    CHECK(pseudo_dist(p, p) == 0.0);
  }

  TEST_CASE("pseudo distance from the origin is the modulus") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
      const cplx w = oracle::random_in_disc(rng, 0.999);
      CHECK(pseudo_dist(0.0, w) == doctest::Approx(std::abs(w)).epsilon(1e-15));
    }
  }

  TEST_CASE("pseudo distance of 0.5 and 0.75 is 0.25 / 0.625") {
    CHECK(pseudo_dist(0.5, 0.75) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(pseudo_dist(DiscPoint(0.5), DiscPoint(0.75)) == doctest::Approx(0.4).epsilon(1e-15));
  }

  TEST_CASE("pseudo distance is symmetric and invariant under disc automorphisms") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
      const cplx z = oracle::random_in_disc(rng, 0.99), w = oracle::random_in_disc(rng, 0.99);
      const cplx a = oracle::random_in_disc(rng, 0.9);
      const double d = pseudo_dist(z, w);
      CHECK(pseudo_dist(w, z) == doctest::Approx(d).epsilon(1e-13));
      CHECK(pseudo_dist(disc_automorphism(a, z), disc_automorphism(a, w)) == doctest::Approx(d).epsilon(1e-10));
      CHECK(d < 1.0);
    }
  }

  TEST_CASE("disc automorphism is an involution swapping a and 0") {
    const cplx a(0.4, -0.3), z(-0.2, 0.6);
    CHECK(std::abs(disc_automorphism(a, disc_automorphism(a, z)) - z) < 1e-15);
    CHECK(std::abs(disc_automorphism(a, a)) == 0.0);
    CHECK(std::abs(disc_automorphism(a, 0.0) - a) < 1e-16);
  }

  TEST_CASE("mobius factor at its own node is one and at the origin is 1 - |z_n|^2") {
    const DiscPoint node(cplx(0.6, 0.3));
    CHECK(std::abs(mobius_factor(node.value(), node) - 1.0) < 1e-15);
    CHECK(std::abs(mobius_factor(0.0, node) - (1.0 - std::norm(node.value()))) < 1e-15);
  }

  TEST_CASE("mobius factor is bounded by 2 on the disc") {
    std::mt19937_64 rng(3);
    double sup = 0.0;
    for (int n = 0; n < 50; ++n) {
      const DiscPoint node(oracle::random_in_disc(rng, 0.999));
      for (int i = 0; i < 400; ++i) sup = std::max(sup, std::abs(mobius_factor(oracle::random_in_disc(rng, 0.9999), node)));
      // the supremum is approached at z = node direction on the circle
      sup = std::max(sup, std::abs(mobius_factor(0.99999 * node.value() / node.modulus(), node)));
    }
    CHECK(sup <= 2.0);
    CHECK(sup > 1.9);
  }

  TEST_CASE("pseudo disc radius") {
    CHECK(pseudo_disc_radius(0.5) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK_THROWS_AS(pseudo_disc_radius(1.0), DomainError);
    CHECK_THROWS_AS(pseudo_disc_radius(0.0), DomainError);
  }

  TEST_CASE("pseudo disc of radius delta/(2+delta) lies in the Euclidean disc of radius delta(1-|z|)") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int inside = 0;
    for (int i = 0; i < 10000; ++i) {
      const double delta = 0.05 + 0.9 * u(rng);
      const cplx z = oracle::random_in_disc(rng, 0.999);
      const double rad = pseudo_disc_radius(delta);
      // w = phi_z(v) with |v| < rad covers the pseudo disc
      const cplx v = std::polar(rad * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
      const cplx w = disc_automorphism(z, v);
      if (pseudo_dist(z, w) < rad) {
        ++inside;
        CHECK(std::abs(w - z) < (1.0 - std::abs(z)) * delta);
      }
    }
    CHECK(inside > 9000);
  }

  TEST_CASE("points are validated") {
    CHECK_THROWS_AS(DiscPoint(cplx(1.0, 0.0)), DomainError);
    CHECK_THROWS_AS(DiscPoint(cplx(0.8, 0.7)), DomainError);
    CHECK_THROWS_AS(DiscPoint(cplx(NAN, 0.0)), DomainError);
    const std::vector<cplx> dup{0.5, 0.3, 0.5};
    CHECK_THROWS_AS(DiscSequence::from_values(dup), DuplicatePointError);
    const std::vector<cplx> origin{0.5, 0.0};
    CHECK_THROWS_AS(DiscSequence::from_values(origin), DegenerateNodeError);
  }

  TEST_CASE("anchored points keep tiny differences exact") {
    const cplx anchor(0.9990234375, 0.0);
    const DiscPoint a(anchor, 0.0), b(anchor, 1e-200);
    CHECK(b.minus(a) == cplx(1e-200, 0.0));
    const DiscSequence seq(std::vector<DiscPoint>{a, b});
    CHECK(seq.difference(1, 0) == cplx(1e-200, 0.0));
    CHECK(pseudo_dist(a, b) > 0.0);
    // 1 - |z| from the split form
    CHECK(a.one_minus_modulus() == doctest::Approx(1.0 - 0.9990234375).epsilon(1e-15));
  }

  TEST_CASE("sequence bookkeeping") {
    const std::vector<cplx> v{0.5, cplx(0.0, -0.75), cplx(0.1, 0.1)};
    const DiscSequence seq = DiscSequence::from_values(v);
    CHECK(seq.size() == 3);
    CHECK(seq.max_modulus() == doctest::Approx(0.75));
    CHECK(seq.min_modulus() == doctest::Approx(std::abs(cplx(0.1, 0.1))));
    CHECK(seq.arrays().weight[1] == doctest::Approx(1.0 - 0.5625));
  }
}

TEST_SUITE("log_complex") {
  TEST_CASE("round trip and arithmetic") {
    const cplx a(3.0, -4.0), b(-0.25, 0.5);
    CHECK(std::abs(LogComplex::from(a).value() - a) < 1e-14);
    CHECK(std::abs((LogComplex::from(a) * LogComplex::from(b)).value() - a * b) < 1e-14);
    CHECK(std::abs((LogComplex::from(a) / LogComplex::from(b)).value() - a / b) < 1e-13);
    CHECK(std::abs(LogComplex::from(a).pow(3).value() - a * a * a) < 1e-11);
    CHECK(std::abs((-LogComplex::from(a)).value() + a) < 1e-14);
    CHECK(LogComplex::from(0.0).is_zero());
    CHECK(LogComplex::zero().value() == cplx{});
  }

  TEST_CASE("phase is kept in (-pi, pi]") {
    LogComplex x = LogComplex::from(cplx(-1.0, 1e-3));
    for (int i = 0; i < 50; ++i) x *= LogComplex::from(cplx(-1.0, 1e-3));
    CHECK(x.phase > -std::numbers::pi);
    CHECK(x.phase <= std::numbers::pi);
    CHECK(normalize_phase(3.0 * std::numbers::pi) == doctest::Approx(std::numbers::pi));
  }

  TEST_CASE("log sum matches the direct sum") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<cplx> w;
      std::vector<LogComplex> lw;
      cplx direct = 0.0;
      for (int i = 0; i < 20; ++i) {
        w.emplace_back(g(rng), g(rng));
        lw.push_back(LogComplex::from(w.back()));
        direct += w.back();
      }
      CHECK(std::abs(log_sum(lw).value() - direct) < 1e-13 * 20);
    }
  }

  TEST_CASE("log sum beyond double range") {
    const LogComplex big{1000.0, 0.5}, half{1000.0 - std::log(2.0), 0.5};
    const LogComplex s = log_sum(big, half);
    CHECK(s.log_modulus == doctest::Approx(1000.0 + std::log(1.5)).epsilon(1e-15));
    CHECK(s.phase == doctest::Approx(0.5));
    CHECK(log_sum(LogComplex::zero(), big).log_modulus == 1000.0);
    const std::vector<LogComplex> none;
    CHECK(log_sum(none).is_zero());
  }
}
