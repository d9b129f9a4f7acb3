#include "discinterp/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "discinterp/errors.hpp"
#include "discinterp/kernels.hpp"

namespace discinterp {

namespace {

double psi_at_node(const GrowthFunction& gf, const DiscPoint& p) {
  return gf.psi(1.0 / p.one_minus_modulus());
}

// Accumulates ln(r/d) over the given distances with 0 < d <= r, skipping the nearest one.
double log_sum_skip_nearest(std::vector<double>& dists, double r) {
  if (dists.size() < 2) return 0.0;
  std::sort(dists.begin(), dists.end());
  double sum = 0.0;
  for (std::size_t j = 1; j < dists.size() && dists[j] <= r; ++j) sum += std::log(r / dists[j]);
  return sum;
}

void update(ConditionReport& report, double value, std::size_t index) {
  if (value > report.best_constant) {
    report.best_constant = value;
    report.witness_index = index;
  }
}

}  // namespace

std::size_t counting_n(const DiscSequence& seq, cplx z, double t) {
  if (!(t >= 0.0)) throw DomainError("counting_n: radius must be >= 0");
  return kernels::count_within(seq.arrays(), z, t);
}

std::size_t counting_n_at_node(const DiscSequence& seq, std::size_t k, double t) {
  if (!(t >= 0.0)) throw DomainError("counting_n: radius must be >= 0");
  std::size_t count = 0;
  for (std::size_t j = 0; j < seq.size(); ++j)
    if (std::abs(seq.difference(j, k)) <= t) ++count;
  return count;
}

double counting_N(const DiscSequence& seq, cplx z, double r) {
  if (!(r > 0.0)) throw DomainError("counting_N: radius must be > 0");
  std::vector<double> d;
  d.reserve(seq.size());
  for (const DiscPoint& p : seq.points()) d.push_back(std::abs(p.minus(z)));
  return log_sum_skip_nearest(d, r);
}

double counting_N_at_node(const DiscSequence& seq, std::size_t k, double r) {
  if (!(r > 0.0)) throw DomainError("counting_N: radius must be > 0");
  double sum = 0.0;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    if (j == k) continue;
    const double d = std::abs(seq.difference(j, k));
    if (d <= r) sum += std::log(r / d);
  }
  return sum;
}

ConditionReport check_concentration(const DiscSequence& seq, const GrowthFunction& gf, double delta) {
  if (seq.empty()) throw DomainError("check_concentration: empty sequence");
  ConditionReport report{"concentration", 0.0, 0, std::nullopt};
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const DiscPoint& p = seq[k];
    update(report, counting_N_at_node(seq, k, delta * p.one_minus_modulus()) / psi_at_node(gf, p), k);
  }
  return report;
}

double korenblum_sum_at_node(const DiscSequence& seq, std::size_t n, double delta) {
  const double radius = delta * seq[n].one_minus_modulus();
  double sum = 0.0;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    if (j == n) continue;
    if (std::abs(seq.difference(j, n)) < radius) sum -= std::log(pseudo_dist(seq[n], seq[j]));
  }
  return sum;
}

ConditionReport check_korenblum_sum(const DiscSequence& seq, const GrowthFunction& gf, double delta) {
  if (seq.empty()) throw DomainError("check_korenblum_sum: empty sequence");
  ConditionReport report{"korenblum_sum", 0.0, 0, std::nullopt};
  for (std::size_t n = 0; n < seq.size(); ++n)
    update(report, korenblum_sum_at_node(seq, n, delta) / psi_at_node(gf, seq[n]), n);
  return report;
}

double carleson_log_product(const DiscSequence& seq, std::size_t k) {
  double sum = 0.0;
  for (std::size_t j = 0; j < seq.size(); ++j)
    if (j != k) sum += std::log(pseudo_dist(seq[j], seq[k]));
  return sum;
}

double carleson_delta(const DiscSequence& seq) {
  double worst = 0.0;  // ln 1
  for (std::size_t k = 0; k < seq.size(); ++k) worst = std::min(worst, carleson_log_product(seq, k));
  return std::exp(worst);
}

double separation(const DiscSequence& seq) {
  if (seq.size() < 2) throw DomainError("separation: needs at least two points");
  double best = 1.0;
  for (std::size_t j = 0; j < seq.size(); ++j)
    for (std::size_t k = j + 1; k < seq.size(); ++k) best = std::min(best, pseudo_dist(seq[j], seq[k]));
  return best;
}

double seip_density_estimate(const DiscSequence& seq, std::span<const double> r_grid,
                             std::span<const cplx> z_grid) {
  if (r_grid.empty()) throw DomainError("seip_density_estimate: empty r grid");
  double best = 0.0;
  auto evaluate = [&](auto&& sigma_to) {
    std::vector<double> sig;
    sig.reserve(seq.size());
    for (std::size_t j = 0; j < seq.size(); ++j) sig.push_back(sigma_to(j));
    for (double r : r_grid) {
      if (!(r > 0.0 && r < 1.0)) throw DomainError("seip_density_estimate: r must lie in (0, 1)");
      double numerator = 0.0;
      for (double s : sig)
        if (s > 0.5 && s < r) numerator -= std::log(s);
      best = std::max(best, numerator / -std::log1p(-r));
    }
  };
  for (cplx z : z_grid) {
    if (!(std::abs(z) < 1.0)) throw DomainError("seip_density_estimate: grid point outside the disc");
    evaluate([&](std::size_t j) { return pseudo_dist(z, seq[j].value()); });
  }
  for (std::size_t k = 0; k < seq.size(); ++k)
    evaluate([&](std::size_t j) { return j == k ? 0.0 : pseudo_dist(seq[k], seq[j]); });
  return best;
}

EquivalenceReport check_equivalence_ii_iii(const DiscSequence& seq, const GrowthFunction& gf,
                                           double delta, double alpha) {
  if (seq.empty()) throw DomainError("check_equivalence_ii_iii: empty sequence");
  if (!(delta > 0.0 && delta < 1.0) || !(alpha > 1.0))
    throw DomainError("check_equivalence_ii_iii: need 0 < delta < 1 < alpha");
  EquivalenceReport report;
  report.ratio_bound = 1.0 + (std::log(1.0 / delta) + std::log(2.0 + delta)) / std::log(alpha);
  report.min_term = std::numeric_limits<double>::infinity();
  report.max_term = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const DiscPoint& zk = seq[k];
    const double scale = zk.one_minus_modulus();
    const double radius = delta * scale;
    double closed_sum = 0.0;
    for (std::size_t n = 0; n < seq.size(); ++n) {
      if (n == k) continue;
      const double d = std::abs(seq.difference(n, k));
      if (d > radius) continue;
      const double log_inv_sigma = -std::log(pseudo_dist(seq[n], zk));
      const double term = log_inv_sigma - std::log(scale / d);
      closed_sum += log_inv_sigma;
      ++report.pair_count;
      report.min_term = std::min(report.min_term, term);
      report.max_term = std::max(report.max_term, term);
    }
    const double psi = psi_at_node(gf, zk);
    const double n_ii = counting_N_at_node(seq, k, radius);
    const double n_wide = counting_N_at_node(seq, k, alpha * radius);
    const double tol = 1e-12 * std::max(1.0, closed_sum);
    if (closed_sum < n_ii - tol) report.lower_holds = false;
    if (closed_sum > report.ratio_bound * n_wide + tol) report.upper_holds = false;
    report.c_ii = std::max(report.c_ii, n_ii / psi);
    report.c_iii = std::max(report.c_iii, closed_sum / psi);
    report.c_ii_wide = std::max(report.c_ii_wide, n_wide / psi);
  }
  if (report.pair_count == 0) report.min_term = report.max_term = 0.0;
  return report;
}

SandwichReport check_nu_from_N(const DiscSequence& seq, const GrowthFunction& gf, double delta,
                               double alpha, std::span<const cplx> extra_points) {
  if (!(delta > 0.0 && delta < 1.0) || !(alpha > 1.0))
    throw DomainError("check_nu_from_N: need 0 < delta < 1 < alpha");
  SandwichReport report;
  report.n_bound.condition_name = "n_bound";
  report.worst_slack = std::numeric_limits<double>::infinity();
  const double log_alpha = std::log(alpha);
  auto check_point = [&](double scale, std::size_t n_inner, double big_n, std::size_t n_half,
                         std::size_t index) {
    const double lhs = (n_inner > 0 ? static_cast<double>(n_inner - 1) : 0.0) * log_alpha;
    const double slack = big_n - lhs;
    report.worst_slack = std::min(report.worst_slack, slack);
    if (slack < -1e-12 * std::max(1.0, big_n)) report.sandwich_holds = false;
    const double psi = gf.psi(1.0 / scale);
    if (psi > 0.0) update(report.n_bound, static_cast<double>(n_half) / psi, index);
    ++report.points_checked;
  };
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const double scale = seq[k].one_minus_modulus();
    check_point(scale, counting_n_at_node(seq, k, delta / alpha * scale),
                counting_N_at_node(seq, k, delta * scale), counting_n_at_node(seq, k, 0.5 * scale), k);
  }
  for (std::size_t i = 0; i < extra_points.size(); ++i) {
    const cplx z = extra_points[i];
    const double scale = 1.0 - std::abs(z);
    if (!(scale > 0.0)) throw DomainError("check_nu_from_N: point outside the disc");
    check_point(scale, counting_n(seq, z, delta / alpha * scale), counting_N(seq, z, delta * scale),
                counting_n(seq, z, 0.5 * scale), seq.size() + i);
  }
  if (report.points_checked == 0) report.worst_slack = 0.0;
  return report;
}

ConditionReport concentration_grid_constant(const DiscSequence& seq, const GrowthFunction& gf,
                                            std::span<const cplx> z_grid, double delta1) {
  ConditionReport report{"concentration_all_z", 0.0, 0, std::nullopt};
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    const double scale = 1.0 - std::abs(z_grid[i]);
    if (!(scale > 0.0)) throw DomainError("concentration_grid_constant: point outside the disc");
    const double psi = gf.psi(1.0 / scale);
    if (psi > 0.0) update(report, counting_N(seq, z_grid[i], delta1 * scale) / psi, i);
  }
  return report;
}

}  // namespace discinterp
