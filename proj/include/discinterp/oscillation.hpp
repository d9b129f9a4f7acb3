#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "discinterp/geometry.hpp"
#include "discinterp/growth.hpp"
#include "discinterp/interpolation.hpp"
#include "discinterp/products.hpp"

namespace discinterp {

/// b_k = -P''(z_k) / (2 P'(z_k)), the values h(z_k) that make a analytic at z_k.
std::vector<cplx> osc_targets(const CanonicalProduct& cp);

/// Smallest C with ln|b_k| <= C psi~(1/(1-|z_k|)) + ln(4/(1-|z_k|)) for all k (0 if none is needed).
double osc_target_constant(const CanonicalProduct& cp, const GrowthFunction& gf, std::span<const cplx> targets);

/// f = P e^g solves f'' + a f = 0 with a = -(P'/P + h)^2 - (P'/P)' - h', where h = g'
/// interpolates osc_targets on the zero sequence and g(0) = 0.
class OscillationSolution {
 public:
  explicit OscillationSolution(Interpolant h);

  const CanonicalProduct& product() const { return h_.product(); }
  const Interpolant& gprime() const { return h_; }

  cplx h(cplx z) const { return h_.eval(z); }
  cplx h_prime(cplx z) const { return h_.derivative(z); }
  /// int h along the segment [z0, z1] (adaptive Gauss-Kronrod).
  cplx integral(cplx z0, cplx z1) const;
  /// g(z) = int_0^z h along the radius.
  cplx g(cplx z) const { return integral(0.0, z); }
  /// ln f(z) = ln P(z) + g(z).
  LogComplex log_f(cplx z) const;
  /// f'/f = P'/P + h.
  cplx log_derivative(cplx z) const;
  /// ln a(z); within 0.1 rho_k of node k the value comes from a Cauchy integral on |zeta - z_k| = rho_k.
  LogComplex log_coefficient(cplx z) const;
  /// a(z); NumericError when it overflows a double.
  cplx coefficient(cplx z) const;
  /// rho_k = min(1-|z_k|, distance to the other nodes) / 4.
  double node_radius(std::size_t k) const { return node_radius_[k]; }

 private:
  LogComplex log_coefficient_direct(cplx z) const;

  Interpolant h_;
  std::vector<double> node_radius_;
};

OscillationSolution build_coefficient(const DiscSequence& seq, const GrowthFunction& gf,
                                      const InterpolationOptions& options = {});

struct ResidualSample {
  cplx z;
  cplx f_second_over_f;  // from a Cauchy integral of f(zeta)/f(z)
  cplx a;
  double residual;       // |f''/f + a| / (|f''/f| + |a| + 1e-300)
};

/// Checks f'' + a f = 0 at z. f''/f is computed independently of the formula for a:
/// (2/rho^2) mean_j f(z + rho e^{i t_j}) / f(z) e^{-2 i t_j}, with
/// f(zeta)/f(z) = P(zeta)/P(z) exp(int_z^zeta h) and
/// rho = min(dist(z, Z)/2, (1-|z|)/10, 1/(2|f'/f(z)|)).
ResidualSample ode_residual(const OscillationSolution& sol, cplx z, std::size_t points = 64);

/// (1/2 pi i) of the contour integral of f'/f over |zeta - c| = radius (trapezoid rule).
cplx zero_count(const OscillationSolution& sol, cplx center, double radius, std::size_t points = 1024);

}  // namespace discinterp
