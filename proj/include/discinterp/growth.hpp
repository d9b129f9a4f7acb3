#pragma once

#include <string>

namespace discinterp {

enum class GrowthFamily { power, log_power, exp_log_power };

std::string to_string(GrowthFamily family);
GrowthFamily growth_family_from_string(const std::string& name);

/// A growth scale psi: [1, inf) -> R+ from one of three parametric families:
///   power          psi(x) = x^rho,            rho > 0
///   log_power      psi(x) = ln^p x,           p >= 0
///   exp_log_power  psi(x) = exp((ln x)^beta), 0 < beta < 1
/// together with its logarithmic integral psi~(x) = int_1^x psi(t)/t dt.
class GrowthFunction {
 public:
  static GrowthFunction power(double rho);
  static GrowthFunction log_power(double p);
  static GrowthFunction exp_log_power(double beta);
  static GrowthFunction make(GrowthFamily family, double param);

  GrowthFamily family() const { return family_; }
  double param() const { return param_; }
  std::string name() const;

  /// Analytic Polya order: rho for power, 0 otherwise.
  double polya_order() const;
  /// floor(polya order) + 1.
  int genus() const;
  /// psi is unbounded (false only for log_power with p = 0).
  bool unbounded() const;

  double psi(double x) const;
  /// ln psi(e^u), finite far beyond the range where psi itself overflows.
  double log_psi_at_log(double u) const;
  double psi_tilde(double x) const;
  /// psi~(e^u).
  double psi_tilde_at_log(double u) const;

 private:
  GrowthFunction(GrowthFamily family, double param) : family_(family), param_(param) {}
  GrowthFamily family_;
  double param_;
};

struct PolyaEstimate {
  double analytic;
  /// sup over x = 2^k, k in [k_lo, k_hi], of log2(psi(2x)/psi(x)).
  double numeric;
};

PolyaEstimate polya_order_estimate(const GrowthFunction& gf, int k_lo = 64, int k_hi = 1024);

struct ClassRReport {
  double ratio_sup;  // sup of psi~/psi on the grid
  double argsup;
  bool member;       // from the family's closed form
};

/// Membership in the class of psi with psi~ = O(psi), plus the sampled ratio on [1, x_max].
ClassRReport class_R_check(const GrowthFunction& gf, double x_max, int grid_points = 512);

}  // namespace discinterp
