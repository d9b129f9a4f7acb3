#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "discinterp/geometry.hpp"
#include "discinterp/growth.hpp"

namespace discinterp {

/// Best constant of an "exists C" condition over a finite sequence.
struct ConditionReport {
  std::string condition_name;
  double best_constant = 0.0;
  std::size_t witness_index = 0;
  std::optional<double> holds_with;

  /// True when no constant was supplied, or the supplied one suffices.
  bool holds() const { return !holds_with || best_constant <= *holds_with; }
};

/// n_z(t): number of points in the closed disc |w - z| <= t.
std::size_t counting_n(const DiscSequence& seq, cplx z, double t);
std::size_t counting_n_at_node(const DiscSequence& seq, std::size_t k, double t);

/// N_z(r) = int_0^r (n_z(t) - 1)^+ / t dt = sum over sorted distances d_j, j >= 2, d_j <= r, of ln(r/d_j).
double counting_N(const DiscSequence& seq, cplx z, double r);
/// N at a node, using exact split differences (the node itself is the nearest point).
double counting_N_at_node(const DiscSequence& seq, std::size_t k, double r);

/// max_k N_{z_k}(delta (1-|z_k|)) / psi(1/(1-|z_k|)).
ConditionReport check_concentration(const DiscSequence& seq, const GrowthFunction& gf, double delta = 0.5);

/// Sum of ln 1/sigma(z_n, z_j) over 0 < |z_n - z_j| < delta(1-|z_n|), per node.
double korenblum_sum_at_node(const DiscSequence& seq, std::size_t n, double delta = 0.5);
/// max_n korenblum_sum_at_node / psi(1/(1-|z_n|)).
ConditionReport check_korenblum_sum(const DiscSequence& seq, const GrowthFunction& gf, double delta = 0.5);

/// inf_k prod_{j != k} sigma(z_j, z_k) (1 for a singleton).
double carleson_delta(const DiscSequence& seq);
/// ln prod_{j != k} sigma(z_j, z_k).
double carleson_log_product(const DiscSequence& seq, std::size_t k);

/// min_{j != k} sigma(z_j, z_k); needs at least two points.
double separation(const DiscSequence& seq);

/// Finite-sample estimate of the upper density
///   sup_z sum_{1/2 < sigma(z,z_j) < r} ln(1/sigma(z,z_j)) / ln(1/(1-r))
/// over z in z_grid and all nodes, and r in r_grid. A lower bound of the lim sup, not the limit.
double seip_density_estimate(const DiscSequence& seq, std::span<const double> r_grid,
                             std::span<const cplx> z_grid);

struct EquivalenceReport {
  double c_ii = 0.0;       // N_{z_k}(delta(1-|z_k|)) / psi
  double c_iii = 0.0;      // korenblum sum (closed radius) / psi
  double c_ii_wide = 0.0;  // N_{z_k}(alpha delta(1-|z_k|)) / psi
  double ratio_bound = 0.0;
  bool lower_holds = true;  // c_iii >= c_ii node by node
  bool upper_holds = true;  // c_iii <= ratio_bound * c_ii_wide node by node
  // per-term ln(1/sigma) - ln((1-|z_k|)/|z_n-z_k|) over admissible pairs
  std::size_t pair_count = 0;
  double min_term = 0.0;
  double max_term = 0.0;
};

/// Compares the counting condition with the Korenblum-sum condition node by node, with the factor
/// 1 + (ln(1/delta) + ln(2+delta)) / ln(alpha).
EquivalenceReport check_equivalence_ii_iii(const DiscSequence& seq, const GrowthFunction& gf,
                                           double delta = 0.5, double alpha = 2.0);

struct SandwichReport {
  ConditionReport n_bound;  // max n_z((1-|z|)/2) / psi(1/(1-|z|))
  bool sandwich_holds = true;
  double worst_slack = 0.0;  // min over points of N - (n - 1)^+ ln alpha
  std::size_t points_checked = 0;
};

/// (n_z(delta/alpha (1-|z|)) - 1)^+ ln alpha <= N_z(delta (1-|z|)) at every node and extra point.
SandwichReport check_nu_from_N(const DiscSequence& seq, const GrowthFunction& gf, double delta = 0.5,
                               double alpha = 2.0, std::span<const cplx> extra_points = {});

/// max over z in z_grid of N_z(delta1 (1-|z|)) / psi(1/(1-|z|)) (the all-z form of the concentration condition).
ConditionReport concentration_grid_constant(const DiscSequence& seq, const GrowthFunction& gf,
                                            std::span<const cplx> z_grid, double delta1 = 0.5);

}  // namespace discinterp
