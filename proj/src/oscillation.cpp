#include "discinterp/oscillation.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "discinterp/errors.hpp"

namespace discinterp {

namespace {

constexpr std::size_t kCauchyPoints = 64;

cplx unit(std::size_t j, std::size_t m) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m));
}

}  // namespace

std::vector<cplx> osc_targets(const CanonicalProduct& cp) {
  std::vector<cplx> b(cp.size());
  for (std::size_t k = 0; k < cp.size(); ++k) b[k] = cp.derivative_ratio_at_node(k);
  return b;
}

double osc_target_constant(const CanonicalProduct& cp, const GrowthFunction& gf, std::span<const cplx> targets) {
  double c = 0.0;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const double scale = cp.sequence()[k].one_minus_modulus();
    const double excess = std::log(std::abs(targets[k])) - std::log(4.0 / scale);
    if (excess > 0.0) c = std::max(c, excess / gf.psi_tilde(1.0 / scale));
  }
  return c;
}

OscillationSolution::OscillationSolution(Interpolant h) : h_(std::move(h)) {
  const DiscSequence& seq = h_.product().sequence();
  node_radius_.resize(seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) {
    double r = seq[k].one_minus_modulus();
    for (std::size_t j = 0; j < seq.size(); ++j)
      if (j != k) r = std::min(r, std::abs(seq.difference(j, k)));
    node_radius_[k] = 0.25 * r;
  }
}

cplx OscillationSolution::integral(cplx z0, cplx z1) const {
  if (!(std::abs(z0) < 1.0 && std::abs(z1) < 1.0)) throw DomainError("integral: endpoint outside the disc");
  if (z0 == z1) return {};
  const cplx dz = z1 - z0;
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  const cplx value = gauss_kronrod<double, 31>::integrate(
      [&](double t) { return h_.eval(z0 + t * dz); }, 0.0, 1.0, 15, 1e-11, &error);
  if (!(error <= 1e-10 * std::max(1.0, std::abs(value))))
    throw NumericError("integral: quadrature of h did not converge");
  return value * dz;
}

LogComplex OscillationSolution::log_f(cplx z) const {
  return product().log_value(z) * LogComplex::from_log(g(z));
}

cplx OscillationSolution::log_derivative(cplx z) const { return product().log_derivative(z) + h(z); }

LogComplex OscillationSolution::log_coefficient_direct(cplx z) const {
  // a = -(w^2 + (P'/P)' + h'), w = P'/P + h; h and h' may exceed double range
  const LogComplex w = log_sum(LogComplex::from(product().log_derivative(z)), h_.log_eval(z));
  const std::array<LogComplex, 3> parts{w.pow(2), LogComplex::from(product().log_derivative_prime(z)),
                                        h_.log_eval_derivative(z)};
  return -log_sum(parts);
}

LogComplex OscillationSolution::log_coefficient(cplx z) const {
  if (!(std::abs(z) < 1.0)) throw DomainError("coefficient: z outside the disc");
  const DiscSequence& seq = product().sequence();
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const double rho = node_radius_[k];
    const cplx offset = -seq[k].minus(z);  // z - z_k
    if (std::abs(offset) >= 0.1 * rho) continue;
    // a(z) = mean_j a(zeta_j) (zeta_j - z_k) / (zeta_j - z)
    std::vector<LogComplex> parts;
    parts.reserve(kCauchyPoints);
    for (std::size_t j = 0; j < kCauchyPoints; ++j) {
      const cplx step = rho * unit(j, kCauchyPoints);
      parts.push_back(log_coefficient_direct(seq[k].value() + step) * LogComplex::from(step / (step - offset)));
    }
    return log_sum(parts) / LogComplex::from(static_cast<double>(kCauchyPoints));
  }
  return log_coefficient_direct(z);
}

cplx OscillationSolution::coefficient(cplx z) const {
  const cplx a = log_coefficient(z).value();
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
    throw NumericError("coefficient: a(z) overflowed");
  return a;
}

OscillationSolution build_coefficient(const DiscSequence& seq, const GrowthFunction& gf,
                                      const InterpolationOptions& options) {
  const CanonicalProduct cp(seq, gf.genus());
  return OscillationSolution(build_interpolant(seq, osc_targets(cp), gf, options));
}

ResidualSample ode_residual(const OscillationSolution& sol, cplx z, std::size_t points) {
  const DiscSequence& seq = sol.product().sequence();
  double dist = std::numeric_limits<double>::infinity();
  for (const DiscPoint& p : seq.points()) dist = std::min(dist, std::abs(p.minus(z)));
  double rho = std::min(0.5 * dist, 0.1 * (1.0 - std::abs(z)));
  if (!(rho > 0.0)) throw DomainError("ode_residual: z must be off the nodes and inside the disc");
  // Keep |f'/f| rho <= 1/2 so that f(zeta)/f(z) stays O(1) on the circle (step size only).
  rho = std::min(rho, 0.5 / std::abs(sol.log_derivative(z)));
  const LogComplex log_pz = sol.product().log_value(z);
  cplx sum{};
  for (std::size_t j = 0; j < points; ++j) {
    const cplx e = unit(j, points);
    const cplx zeta = z + rho * e;
    const LogComplex ratio = sol.product().log_value(zeta) / log_pz * LogComplex::from_log(sol.integral(z, zeta));
    sum += ratio.value() / (e * e);
  }
  ResidualSample s;
  s.z = z;
  s.f_second_over_f = 2.0 / (rho * rho) * sum / static_cast<double>(points);
  s.a = sol.coefficient(z);
  s.residual = std::abs(s.f_second_over_f + s.a) / (std::abs(s.f_second_over_f) + std::abs(s.a) + 1e-300);
  return s;
}

cplx zero_count(const OscillationSolution& sol, cplx center, double radius, std::size_t points) {
  if (!(radius > 0.0) || !(std::abs(center) + radius < 1.0))
    throw DomainError("zero_count: circle must lie inside the disc");
  cplx sum{};
  for (std::size_t j = 0; j < points; ++j) {
    const cplx step = radius * unit(j, points);
    sum += sol.log_derivative(center + step) * step;
  }
  return sum / static_cast<double>(points);
}

}  // namespace discinterp
