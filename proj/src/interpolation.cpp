#include "discinterp/interpolation.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "discinterp/errors.hpp"
#include "discinterp/parallel.hpp"

namespace discinterp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kLadderCap = std::size_t{1} << 23;

}  // namespace

TargetData make_targets(const DiscSequence& seq, const GrowthFunction& gf, std::vector<cplx> values) {
  if (values.size() != seq.size())
    throw DomainError("make_targets: " + std::to_string(values.size()) + " targets for " +
                      std::to_string(seq.size()) + " nodes");
  TargetData data;
  for (std::size_t n = 0; n < values.size(); ++n) {
    const cplx b = values[n];
    if (!std::isfinite(b.real()) || !std::isfinite(b.imag()))
      throw DomainError("make_targets: target " + std::to_string(n) + " is not finite");
    if (std::abs(b) <= 1.0) continue;
    const double pt = gf.psi_tilde(1.0 / seq[n].one_minus_modulus());
    data.admissibility = std::max(data.admissibility, std::log(std::abs(b)) / pt);
  }
  data.values = std::move(values);
  return data;
}

CoefficientLadder::CoefficientLadder(std::vector<double> log_coeffs, double c0, double weight)
    : log_coeffs_(std::move(log_coeffs)), c0_(c0), weight_(weight) {
  if (log_coeffs_.size() < 2) throw DomainError("CoefficientLadder: needs n_max >= 1");
  // Upper concave hull; slopes along the hull decrease strictly.
  const std::size_t n = log_coeffs_.size();
  std::vector<std::size_t> hull;
  hull.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2], b = hull.back();
      const double s_ab = (log_coeffs_[b] - log_coeffs_[a]) / static_cast<double>(b - a);
      const double s_bi = (log_coeffs_[i] - log_coeffs_[b]) / static_cast<double>(i - b);
      if (s_ab > s_bi) break;
      hull.pop_back();
    }
    hull.push_back(i);
  }
  log_kappas_.assign(n, -kInf);
  for (std::size_t h = 1; h < hull.size(); ++h) {
    const std::size_t a = hull[h - 1], b = hull[h];
    const double slope = (log_coeffs_[b] - log_coeffs_[a]) / static_cast<double>(b - a);
    for (std::size_t i = a + 1; i < b; ++i) log_coeffs_[i] = log_coeffs_[a] + slope * static_cast<double>(i - a);
    for (std::size_t i = a + 1; i <= b; ++i) log_kappas_[i] = -slope;
  }
}

std::size_t CoefficientLadder::bucket(double t) const {
  if (!(t > 0.0)) throw DomainError("CoefficientLadder::bucket: t must be positive");
  const double lt = std::log(t);
  const auto it = std::upper_bound(log_kappas_.begin() + 1, log_kappas_.end(), lt);
  return static_cast<std::size_t>(it - log_kappas_.begin()) - 1;
}

double CoefficientLadder::log_max_term(double t) const {
  const std::size_t s = bucket(t);
  return log_coeffs_[s] + static_cast<double>(s) * std::log(t);
}

CoefficientLadder build_ladder(const GrowthFunction& gf, double c0, std::size_t n_max, double weight) {
  if (!(c0 >= 2.0)) throw DomainError("build_ladder: C0 must be >= 2");
  if (n_max < 1) throw DomainError("build_ladder: n_max must be >= 1");
  if (!(weight > 0.0)) throw DomainError("build_ladder: weight must be positive");
  const double lc0 = std::log(c0);
  // d/du (n u - w psi~(C0 e^u)) = n - w psi(C0 e^u); the objective is concave in u.
  auto slope_sign_positive = [&](double n, double u) {
    return std::log(n / weight) > gf.log_psi_at_log(lc0 + u);
  };
  std::vector<double> log_coeffs(n_max + 1);
  for (std::size_t i = 0; i <= n_max; ++i) {
    const double n = static_cast<double>(i);
    auto objective = [&](double u) { return n * u - weight * gf.psi_tilde_at_log(lc0 + u); };
    if (i == 0 || !slope_sign_positive(n, 0.0)) {
      log_coeffs[i] = -objective(0.0);
      continue;
    }
    double lo = 0.0, hi = 1.0;
    while (slope_sign_positive(n, hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e6)
        throw UnboundedConjugateError(i, "build_ladder: sup over u is infinite at n = " + std::to_string(i) +
                                             " (psi~ grows too slowly)");
    }
    const auto best = boost::math::tools::brent_find_minima([&](double u) { return -objective(u); }, lo, hi,
                                                            std::numeric_limits<double>::digits / 2);
    log_coeffs[i] = best.second;
  }
  return CoefficientLadder(std::move(log_coeffs), c0, weight);
}

CoefficientLadder build_ladder_covering(const GrowthFunction& gf, double c0, double t_max, double weight) {
  const double target = std::log(2.0 * std::max(t_max, 1.0));
  for (std::size_t n_max = 64;; n_max *= 2) {
    CoefficientLadder ladder = build_ladder(gf, c0, n_max, weight);
    if (ladder.log_kappas().back() > target) return ladder;
    if (n_max >= kLadderCap)
      throw LadderTooShortError(n_max, t_max,
                                "build_ladder: kappa_n stays below 2 t_max = " + std::to_string(2.0 * t_max) +
                                    " up to n_max = " + std::to_string(n_max));
  }
}

std::vector<int> select_exponents(const CoefficientLadder& ladder, const DiscSequence& seq) {
  std::vector<int> s(seq.size());
  const double top = ladder.log_kappas().back();
  for (std::size_t n = 0; n < seq.size(); ++n) {
    const double t = 1.0 / seq[n].one_minus_modulus();
    if (!(std::log(t) < top))
      throw LadderTooShortError(ladder.n_max(), t,
                                "select_exponents: node " + std::to_string(n) + " needs kappa beyond n_max = " +
                                    std::to_string(ladder.n_max()));
    s[n] = std::max<int>(static_cast<int>(ladder.bucket(t)), 1);
  }
  return s;
}

struct Interpolant::PointData {
  std::vector<FactorTerms> terms;
  std::vector<cplx> excluded_log;    // sum_{j != n, j != zero} ln E(A_j(z))
  std::vector<cplx> excluded_logd;   // sum_{j != n, j != zero} A_j^{s+1} / (z - z_j)
  std::size_t zero;                  // index of the node equal to z, or size
};

Interpolant::Interpolant(CanonicalProduct product, TargetData targets, CoefficientLadder ladder,
                         std::vector<int> exponents)
    : product_(std::move(product)),
      targets_(std::move(targets)),
      ladder_(std::move(ladder)),
      exponents_(std::move(exponents)),
      harmonic_(harmonic_number(product_.genus())) {
  if (targets_.values.size() != product_.size() || exponents_.size() != product_.size())
    throw DomainError("Interpolant: targets and exponents must match the sequence length");
}

std::vector<cplx> Interpolant::diffs_to(cplx z) const {
  const DiscSequence& seq = product_.sequence();
  std::vector<cplx> d(seq.size());
  for (std::size_t j = 0; j < seq.size(); ++j) d[j] = seq[j].minus(z);
  return d;
}

Interpolant::PointData Interpolant::point_data(const std::vector<cplx>& diffs) const {
  const DiscSequence& seq = product_.sequence();
  const std::size_t n = seq.size();
  const int s = product_.genus();
  PointData pd;
  pd.terms.resize(n);
  pd.zero = n;
  std::vector<cplx> ell(n), lam(n);
  for (std::size_t j = 0; j < n; ++j) {
    pd.terms[j] = factor_terms_from_diff(seq[j], diffs[j]);
    if (diffs[j] == cplx{}) {
      pd.zero = j;
      continue;
    }
    ell[j] = product_.log_factor_from_diff(j, diffs[j]);
    cplx as{1.0, 0.0};
    for (int i = 0; i <= s; ++i) as *= pd.terms[j].A;
    lam[j] = -as / pd.terms[j].diff;
  }
  auto exclusive_sums = [n](const std::vector<cplx>& v) {
    std::vector<cplx> prefix(n + 1), out(n);
    for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + v[j];
    cplx suffix{};
    for (std::size_t j = n; j-- > 0;) {
      out[j] = prefix[j] + suffix;
      suffix += v[j];
    }
    return out;
  };
  pd.excluded_log = exclusive_sums(ell);
  pd.excluded_logd = exclusive_sums(lam);
  return pd;
}

namespace {

// ln b_n + q(A_n) - H_s + s_n ln A_n - ln B_n(z_n): everything in T_n except B_n(z).
LogComplex term_prefactor(cplx b, const FactorTerms& t, const DiscPoint& node, int genus, int s_n, double harmonic,
                          const LogComplex& log_b_node) {
  const cplx log_a = std::log(node.one_minus_modulus_sq()) - std::log(t.denominator);
  const cplx log_w = primary_exponent(t.A, genus) - harmonic + static_cast<double>(s_n) * log_a;
  return LogComplex::from(b) * LogComplex::from_log(log_w) / log_b_node;
}

}  // namespace

std::vector<LogComplex> Interpolant::log_terms(cplx z) const { return log_terms(point_data(diffs_to(z))); }

std::vector<LogComplex> Interpolant::log_terms(const PointData& pd) const {
  const DiscSequence& seq = product_.sequence();
  std::vector<LogComplex> out(seq.size(), LogComplex::zero());
  for (std::size_t n = 0; n < seq.size(); ++n) {
    if (pd.zero < seq.size() && n != pd.zero) continue;
    out[n] = term_prefactor(targets_.values[n], pd.terms[n], seq[n], product_.genus(), exponents_[n], harmonic_,
                            product_.log_reduced_at_node(n)) *
             LogComplex::from_log(pd.excluded_log[n]);
  }
  return out;
}

LogComplex Interpolant::log_eval(cplx z) const {
  if (!(std::abs(z) < 1.0)) throw DomainError("Interpolant: z outside the disc");
  const std::vector<LogComplex> terms = log_terms(z);
  return log_sum(terms);
}

LogComplex Interpolant::log_eval_at_node(std::size_t k) const {
  const DiscSequence& seq = product_.sequence();
  if (k >= seq.size()) throw DomainError("Interpolant: node index out of range");
  std::vector<cplx> d(seq.size());
  for (std::size_t j = 0; j < seq.size(); ++j) d[j] = seq.difference(j, k);
  const std::vector<LogComplex> terms = log_terms(point_data(d));
  return log_sum(terms);
}

LogComplex Interpolant::log_eval_derivative(cplx z) const {
  if (!(std::abs(z) < 1.0)) throw DomainError("Interpolant: z outside the disc");
  const DiscSequence& seq = product_.sequence();
  const int genus = product_.genus();
  const PointData pd = point_data(diffs_to(z));
  std::vector<LogComplex> parts(seq.size(), LogComplex::zero());
  for (std::size_t n = 0; n < seq.size(); ++n) {
    const FactorTerms& t = pd.terms[n];
    const LogComplex pre = term_prefactor(targets_.values[n], t, seq[n], genus, exponents_[n], harmonic_,
                                          product_.log_reduced_at_node(n)) *
                           LogComplex::from_log(pd.excluded_log[n]);
    if (pd.zero < seq.size() && n != pd.zero) {
      // B_n(z) vanishes at z = z_m; B_n'(z_m) = E'(1) A_m'(z_m) prod_{j != n, m} E(A_j(z_m)).
      const DiscPoint& zm = seq[pd.zero];
      const cplx lead = -std::exp(harmonic_) * std::conj(zm.value()) / zm.one_minus_modulus_sq();
      parts[n] = pre * LogComplex::from(lead);
      continue;
    }
    const cplx zbar = std::conj(seq[n].value());
    const cplx a_prime = zbar * t.A * t.A / seq[n].one_minus_modulus_sq();
    const cplx ratio = primary_exponent_prime(t.A, genus) * a_prime +
                       static_cast<double>(exponents_[n]) * zbar / t.denominator + pd.excluded_logd[n];
    parts[n] = pre * LogComplex::from(ratio);
  }
  return log_sum(parts);
}

Interpolant build_interpolant(const DiscSequence& seq, std::vector<cplx> targets, const GrowthFunction& gf,
                              const InterpolationOptions& options) {
  TargetData data = make_targets(seq, gf, std::move(targets));
  CanonicalProduct product(seq, gf.genus());
  double t_max = 1.0;
  for (const DiscPoint& p : seq.points()) t_max = std::max(t_max, 1.0 / p.one_minus_modulus());
  CoefficientLadder ladder = build_ladder_covering(gf, options.c0, t_max, options.ladder_weight);
  std::vector<int> exponents = select_exponents(ladder, seq);
  return Interpolant(std::move(product), std::move(data), std::move(ladder), std::move(exponents));
}

std::vector<GrowthRow> growth_table(const std::function<double(cplx)>& log_abs, const GrowthFunction& gf,
                                    std::span<const double> r_grid, std::size_t theta_count, unsigned threads) {
  if (theta_count == 0) throw DomainError("growth_table: theta_count must be positive");
  for (double r : r_grid)
    if (!(r > 0.0 && r < 1.0)) throw DomainError("growth_table: radii must lie in (0, 1)");
  std::vector<double> values(r_grid.size() * theta_count);
  parallel_for(values.size(), threads, [&](std::size_t i) {
    const double r = r_grid[i / theta_count];
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(i % theta_count) / theta_count;
    values[i] = log_abs(std::polar(r, theta));
  });
  std::vector<GrowthRow> rows;
  rows.reserve(r_grid.size());
  for (std::size_t k = 0; k < r_grid.size(); ++k) {
    double lm = -kInf;
    for (std::size_t j = 0; j < theta_count; ++j) lm = std::max(lm, values[k * theta_count + j]);
    const double pt = gf.psi_tilde(1.0 / (1.0 - r_grid[k]));
    const double ratio = std::isinf(lm) && lm < 0 ? std::numeric_limits<double>::quiet_NaN() : lm / pt;
    rows.push_back({r_grid[k], lm, pt, ratio});
  }
  return rows;
}

std::vector<GrowthRow> growth_report(const Interpolant& f, const GrowthFunction& gf, std::span<const double> r_grid,
                                     std::size_t theta_count, unsigned threads) {
  return growth_table([&f](cplx z) { return f.log_eval(z).log_modulus; }, gf, r_grid, theta_count, threads);
}

TermDecayReport term_decay_check(const Interpolant& f, const GrowthFunction& gf, std::span<const cplx> z_grid) {
  const DiscSequence& seq = f.product().sequence();
  TermDecayReport report{-kInf, 0};
  for (cplx z : z_grid) {
    const double lmu_z = f.ladder().log_max_term(2.0 / (1.0 - std::abs(z)));
    const std::vector<LogComplex> terms = f.log_terms(z);
    for (std::size_t n = 0; n < seq.size(); ++n) {
      if (terms[n].is_zero()) continue;
      const double tn = 1.0 / seq[n].one_minus_modulus();
      const double c = (terms[n].log_modulus - lmu_z + f.ladder().log_max_term(tn)) / gf.psi_tilde(tn);
      report.constant = std::max(report.constant, c);
      ++report.terms_checked;
    }
  }
  if (report.terms_checked == 0) report.constant = 0.0;
  return report;
}

}  // namespace discinterp
