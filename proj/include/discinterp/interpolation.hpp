#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "discinterp/geometry.hpp"
#include "discinterp/growth.hpp"
#include "discinterp/log_complex.hpp"
#include "discinterp/products.hpp"

namespace discinterp {

/// Interpolation data b_n with its admissibility constant
/// max_n ln+|b_n| / psi~(1/(1-|z_n|)).
struct TargetData {
  std::vector<cplx> values;
  double admissibility = 0.0;
};

TargetData make_targets(const DiscSequence& seq, const GrowthFunction& gf, std::vector<cplx> values);

/// Log-concave coefficient sequence phi_n of an entire series, with
///   ln phi_n = -sup_{u >= 0} (n u - w psi~(C0 e^u)),
/// replaced by its upper concave hull (Newton majorant) so that the ratios
/// kappa_n = phi_{n-1}/phi_n are nondecreasing.
class CoefficientLadder {
 public:
  CoefficientLadder(std::vector<double> log_coeffs, double c0, double weight);

  std::size_t n_max() const { return log_coeffs_.size() - 1; }
  double C0() const { return c0_; }
  double weight() const { return weight_; }
  const std::vector<double>& log_coeffs() const { return log_coeffs_; }
  /// ln kappa_n; index 0 is -inf.
  const std::vector<double>& log_kappas() const { return log_kappas_; }

  /// Largest n with kappa_n <= t (ties go to the larger index).
  std::size_t bucket(double t) const;
  /// ln mu(t) = max_n (ln phi_n + n ln t), attained at bucket(t).
  double log_max_term(double t) const;

 private:
  std::vector<double> log_coeffs_;
  std::vector<double> log_kappas_;
  double c0_;
  double weight_;
};

/// Ladder with indices 0..n_max. C0 >= 2, n_max >= 1, weight > 0.
CoefficientLadder build_ladder(const GrowthFunction& gf, double c0, std::size_t n_max, double weight = 1.0);
/// Smallest doubling of n_max (from 64) with kappa_{n_max} > 2 t_max.
CoefficientLadder build_ladder_covering(const GrowthFunction& gf, double c0, double t_max,
                                        double weight = 1.0);

/// s_n = max(bucket(1/(1-|z_n|)), 1); LadderTooShortError when the ladder ends below a node.
std::vector<int> select_exponents(const CoefficientLadder& ladder, const DiscSequence& seq);

struct InterpolationOptions {
  double c0 = 8.0;
  double ladder_weight = 1.0;
};

/// f(z) = sum_n b_n P(z) / ((z - z_n) P'(z_n)) A_n(z)^{s_n - 1}.
///
/// Each term is evaluated as b_n e^{q(A_n) - H_s} A_n^{s_n} B_n(z) / B_n(z_n),
/// which equals the displayed form and is regular at every node.
class Interpolant {
 public:
  Interpolant(CanonicalProduct product, TargetData targets, CoefficientLadder ladder, std::vector<int> exponents);

  const CanonicalProduct& product() const { return product_; }
  const TargetData& targets() const { return targets_; }
  const CoefficientLadder& ladder() const { return ladder_; }
  const std::vector<int>& exponents() const { return exponents_; }

  /// ln of every term at z (LogComplex::zero() for vanishing terms).
  std::vector<LogComplex> log_terms(cplx z) const;
  LogComplex log_eval(cplx z) const;
  cplx eval(cplx z) const { return log_eval(z).value(); }
  /// f(z_k), using exact node differences (no rounding of z_k to a double).
  LogComplex log_eval_at_node(std::size_t k) const;
  cplx eval_at_node(std::size_t k) const { return log_eval_at_node(k).value(); }
  /// ln f'(z), from term-wise analytic differentiation.
  LogComplex log_eval_derivative(cplx z) const;
  cplx derivative(cplx z) const { return log_eval_derivative(z).value(); }

 private:
  struct PointData;
  /// diffs[j] = z_j - z.
  PointData point_data(const std::vector<cplx>& diffs) const;
  std::vector<cplx> diffs_to(cplx z) const;
  std::vector<LogComplex> log_terms(const PointData& pd) const;

  CanonicalProduct product_;
  TargetData targets_;
  CoefficientLadder ladder_;
  std::vector<int> exponents_;
  double harmonic_;
};

Interpolant build_interpolant(const DiscSequence& seq, std::vector<cplx> targets, const GrowthFunction& gf,
                              const InterpolationOptions& options = {});

struct GrowthRow {
  double r;
  double log_max_modulus;  // -inf when f vanishes on the circle
  double psi_tilde;
  double ratio;            // NaN when log_max_modulus is -inf
};

/// ln max_theta |F(r e^{i theta})| over theta_count angles; log_abs returns ln|F|.
std::vector<GrowthRow> growth_table(const std::function<double(cplx)>& log_abs, const GrowthFunction& gf,
                                    std::span<const double> r_grid, std::size_t theta_count, unsigned threads = 1);

std::vector<GrowthRow> growth_report(const Interpolant& f, const GrowthFunction& gf, std::span<const double> r_grid,
                                     std::size_t theta_count, unsigned threads = 1);

struct TermDecayReport {
  /// max over (n, z) of (ln|T_n(z)| - ln mu(2/(1-|z|)) + ln mu(1/(1-|z_n|))) / psi~(1/(1-|z_n|)).
  double constant;
  std::size_t terms_checked;
};

TermDecayReport term_decay_check(const Interpolant& f, const GrowthFunction& gf, std::span<const cplx> z_grid);

}  // namespace discinterp
