#include "discinterp/growth.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "discinterp/errors.hpp"

namespace discinterp {

std::string to_string(GrowthFamily family) {
  switch (family) {
    case GrowthFamily::power: return "power";
    case GrowthFamily::log_power: return "log_power";
    case GrowthFamily::exp_log_power: return "exp_log_power";
  }
  return "unknown";
}

GrowthFamily growth_family_from_string(const std::string& name) {
  if (name == "power") return GrowthFamily::power;
  if (name == "log_power") return GrowthFamily::log_power;
  if (name == "exp_log_power") return GrowthFamily::exp_log_power;
  throw DomainError("unknown growth family '" + name + "'");
}

GrowthFunction GrowthFunction::power(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("power growth needs rho > 0");
  return {GrowthFamily::power, rho};
}

GrowthFunction GrowthFunction::log_power(double p) {
  if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("log_power growth needs p >= 0");
  return {GrowthFamily::log_power, p};
}

GrowthFunction GrowthFunction::exp_log_power(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("exp_log_power growth needs beta in (0, 1)");
  return {GrowthFamily::exp_log_power, beta};
}

GrowthFunction GrowthFunction::make(GrowthFamily family, double param) {
  switch (family) {
    case GrowthFamily::power: return power(param);
    case GrowthFamily::log_power: return log_power(param);
    case GrowthFamily::exp_log_power: return exp_log_power(param);
  }
  throw DomainError("unknown growth family");
}

std::string GrowthFunction::name() const {
  std::ostringstream os;
  os << to_string(family_) << "(" << param_ << ")";
  return os.str();
}

double GrowthFunction::polya_order() const {
  return family_ == GrowthFamily::power ? param_ : 0.0;
}

int GrowthFunction::genus() const { return static_cast<int>(std::floor(polya_order())) + 1; }

bool GrowthFunction::unbounded() const {
  return !(family_ == GrowthFamily::log_power && param_ == 0.0);
}

double GrowthFunction::psi(double x) const {
  if (!(x >= 1.0)) throw DomainError("psi: argument must be >= 1");
  switch (family_) {
    case GrowthFamily::power: return std::pow(x, param_);
    case GrowthFamily::log_power: return param_ == 0.0 ? 1.0 : std::pow(std::log(x), param_);
    case GrowthFamily::exp_log_power: return std::exp(std::pow(std::log(x), param_));
  }
  return 0.0;
}

double GrowthFunction::log_psi_at_log(double u) const {
  if (!(u >= 0.0)) throw DomainError("psi: argument must be >= 1");
  switch (family_) {
    case GrowthFamily::power: return param_ * u;
    case GrowthFamily::log_power:
      if (param_ == 0.0) return 0.0;
      return u == 0.0 ? -std::numeric_limits<double>::infinity() : param_ * std::log(u);
    case GrowthFamily::exp_log_power: return std::pow(u, param_);
  }
  return 0.0;
}

double GrowthFunction::psi_tilde(double x) const {
  if (!(x >= 1.0)) throw DomainError("psi_tilde: argument must be >= 1");
  return psi_tilde_at_log(std::log(x));
}

double GrowthFunction::psi_tilde_at_log(double u) const {
  if (!(u >= 0.0)) throw DomainError("psi_tilde: argument must be >= 1");
  if (u == 0.0) return 0.0;
  switch (family_) {
    case GrowthFamily::power: return std::expm1(param_ * u) / param_;
    case GrowthFamily::log_power: return std::pow(u, param_ + 1.0) / (param_ + 1.0);
    case GrowthFamily::exp_log_power: {
      // psi~(e^u) = int_0^u exp(v^beta) dv; with X = u^beta and x = v^beta this is
      // u sum_k X^k / (k! (1 + k beta)), or e^X / beta int_0^X x^{1/beta - 1} e^{x - X} dx.
      const double beta = param_;
      const double top = std::pow(u, beta);
      if (top <= 1.0) {
        double term = 1.0, sum = 1.0;
        for (int k = 1; term > 1e-18 * sum; ++k) {
          term *= top / k;
          sum += term / (1.0 + k * beta);
        }
        return u * sum;
      }
      const double p = 1.0 / beta - 1.0;
      boost::math::quadrature::tanh_sinh<double> quad;
      double error = 0.0;
      const double scaled =
          quad.integrate([p, top](double x) { return std::pow(x, p) * std::exp(x - top); }, 0.0, top, 1e-12, &error);
      if (!(error <= 1e-10 * std::abs(scaled)))
        throw NumericError("psi_tilde: quadrature missed the 1e-10 relative tolerance");
      return std::exp(top) * scaled / beta;
    }
  }
  return 0.0;
}

PolyaEstimate polya_order_estimate(const GrowthFunction& gf, int k_lo, int k_hi) {
  double sup = -std::numeric_limits<double>::infinity();
  for (int k = k_lo; k <= k_hi; ++k) {
    const double u = k * std::numbers::ln2;
    const double step = gf.log_psi_at_log(u + std::numbers::ln2) - gf.log_psi_at_log(u);
    sup = std::max(sup, step / std::numbers::ln2);
  }
  return {gf.polya_order(), sup};
}

ClassRReport class_R_check(const GrowthFunction& gf, double x_max, int grid_points) {
  if (!(x_max >= 2.0)) throw DomainError("class_R_check: x_max must be >= 2");
  ClassRReport report{0.0, 1.0, gf.family() == GrowthFamily::power};
  const double u_max = std::log(x_max);
  for (int i = 0; i < grid_points; ++i) {
    const double u = u_max * i / (grid_points - 1);
    const double psi = std::exp(gf.log_psi_at_log(u));
    // psi~/psi -> 0 as x -> 1 for every family; psi(1) = 0 only for log_power
    const double ratio = psi > 0.0 ? gf.psi_tilde_at_log(u) / psi : 0.0;
    if (ratio > report.ratio_sup) {
      report.ratio_sup = ratio;
      report.argsup = std::exp(u);
    }
  }
  return report;
}

}  // namespace discinterp
