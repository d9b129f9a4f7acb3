#include "discinterp/products.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "discinterp/counting.hpp"
#include "discinterp/errors.hpp"
#include "discinterp/kernels.hpp"

namespace discinterp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

cplx ipow(cplx w, int k) {
  cplx r{1.0, 0.0};
  for (int j = 0; j < k; ++j) r *= w;
  return r;
}

}  // namespace

double harmonic_number(int s) {
  double h = 0.0;
  for (int j = 1; j <= s; ++j) h += 1.0 / j;
  return h;
}

cplx primary_exponent(cplx w, int s) {
  cplx sum{}, p{1.0, 0.0};
  for (int j = 1; j <= s; ++j) {
    p *= w;
    sum += p / static_cast<double>(j);
  }
  return sum;
}

cplx primary_exponent_prime(cplx w, int s) {
  cplx sum{}, p{1.0, 0.0};
  for (int j = 1; j <= s; ++j) {
    sum += p;
    p *= w;
  }
  return sum;
}

cplx weierstrass_E(cplx w, int s) {
  if (s < 0) throw DomainError("weierstrass_E: genus must be >= 0");
  return (1.0 - w) * std::exp(primary_exponent(w, s));
}

cplx weierstrass_E_prime(cplx w, int s) {
  if (s < 0) throw DomainError("weierstrass_E_prime: genus must be >= 0");
  return -ipow(w, s) * std::exp(primary_exponent(w, s));
}

cplx weierstrass_E_second(cplx w, int s) {
  if (s < 0) throw DomainError("weierstrass_E_second: genus must be >= 0");
  const cplx lead = s == 0 ? cplx{} : static_cast<double>(s) * ipow(w, s - 1);
  return -std::exp(primary_exponent(w, s)) * (lead + ipow(w, s) * primary_exponent_prime(w, s));
}

FactorTerms factor_terms_from_diff(const DiscPoint& node, cplx diff) {
  FactorTerms t;
  t.diff = diff;
  t.denominator = mobius_denominator(node, diff);
  t.A = node.one_minus_modulus_sq() / t.denominator;
  t.one_minus_A = std::conj(node.value()) * diff / t.denominator;
  return t;
}

FactorTerms factor_terms(const DiscPoint& node, cplx z) { return factor_terms_from_diff(node, node.minus(z)); }

namespace {

// ln E(A_n, s) from the exact difference; -inf real part on the node.
cplx log_primary_factor(const DiscPoint& node, cplx diff, int genus) {
  if (diff == cplx{}) return {-kInf, 0.0};
  const FactorTerms t = factor_terms_from_diff(node, diff);
  return std::log(std::conj(node.value())) + std::log(diff) - std::log(t.denominator) +
         primary_exponent(t.A, genus);
}

}  // namespace

CanonicalProduct::CanonicalProduct(DiscSequence seq, int genus)
    : CanonicalProduct(std::move(seq), genus, Unchecked{}) {
  if (genus < 1) throw DomainError("CanonicalProduct: genus must be >= 1");
}

CanonicalProduct CanonicalProduct::blaschke(DiscSequence seq) {
  return CanonicalProduct(std::move(seq), 0, Unchecked{});
}

CanonicalProduct::CanonicalProduct(DiscSequence seq, int genus, Unchecked)
    : seq_(std::move(seq)), genus_(genus), harmonic_(harmonic_number(genus)) {
  if (genus < 0) throw DomainError("CanonicalProduct: negative genus");
  const std::size_t n = seq_.size();
  log_b_node_.resize(n);
  reduced_logd_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx log_b{};
    cplx logd{};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      const cplx diff = seq_.difference(j, k);
      log_b += log_primary_factor(seq_[j], diff, genus_);
      const FactorTerms t = factor_terms_from_diff(seq_[j], diff);
      logd -= ipow(t.A, genus_ + 1) / diff;
    }
    log_b_node_[k] = LogComplex::from_log(log_b);
    reduced_logd_[k] = logd;
  }
}

cplx CanonicalProduct::log_factor(std::size_t n, cplx z) const {
  return log_primary_factor(seq_[n], seq_[n].minus(z), genus_);
}

cplx CanonicalProduct::log_factor_from_diff(std::size_t n, cplx diff) const {
  return log_primary_factor(seq_[n], diff, genus_);
}

LogComplex CanonicalProduct::log_value(cplx z) const {
  cplx sum{};
  for (std::size_t n = 0; n < seq_.size(); ++n) {
    const cplx l = log_factor(n, z);
    if (std::isinf(l.real())) return LogComplex::zero();
    sum += l;
  }
  return LogComplex::from_log(sum);
}

double CanonicalProduct::log_abs_value(cplx z) const {
  return kernels::log_abs_canonical(seq_.arrays(), z, genus_);
}

LogComplex CanonicalProduct::log_reduced(std::size_t k, cplx z) const {
  cplx sum{};
  for (std::size_t n = 0; n < seq_.size(); ++n) {
    if (n == k) continue;
    const cplx l = log_factor(n, z);
    if (std::isinf(l.real())) return LogComplex::zero();
    sum += l;
  }
  return LogComplex::from_log(sum);
}

LogComplex CanonicalProduct::log_prime_at_node(std::size_t k) const {
  const DiscPoint& zk = seq_[k];
  const cplx lead = -std::exp(harmonic_) * std::conj(zk.value()) / zk.one_minus_modulus_sq();
  return LogComplex::from(lead) * log_b_node_[k];
}

std::size_t CanonicalProduct::node_near(cplx z) const {
  for (std::size_t k = 0; k < seq_.size(); ++k)
    if (std::abs(seq_[k].minus(z)) <= 1e-12 * seq_[k].one_minus_modulus()) return k;
  return seq_.size();
}

void CanonicalProduct::check_pole(cplx z, const char* who) const {
  const std::size_t k = node_near(z);
  if (k < seq_.size())
    throw PoleError(std::string(who) + ": z is within 1e-12 (1-|z_k|) of node " + std::to_string(k));
}

cplx CanonicalProduct::log_derivative(cplx z) const {
  check_pole(z, "log_derivative");
  cplx sum{};
  for (const DiscPoint& p : seq_.points()) {
    const FactorTerms t = factor_terms(p, z);
    sum -= ipow(t.A, genus_ + 1) / t.diff;
  }
  return sum;
}

cplx CanonicalProduct::log_derivative_prime(cplx z) const {
  check_pole(z, "log_derivative_prime");
  cplx sum{};
  const double s1 = genus_ + 1.0;
  for (const DiscPoint& p : seq_.points()) {
    const FactorTerms t = factor_terms(p, z);
    const cplx u = -t.diff;  // z - z_n
    const cplx a_prime = std::conj(p.value()) * t.A * t.A / p.one_minus_modulus_sq();
    const cplx a_s = ipow(t.A, genus_);
    sum += s1 * a_s * a_prime / u - a_s * t.A / (u * u);
  }
  return sum;
}

cplx CanonicalProduct::second_derivative(cplx z) const {
  const std::size_t k = node_near(z);
  if (k < seq_.size()) return second_derivative_at_node(k);
  const cplx l = log_derivative(z);
  const cplx bracket = l * l + log_derivative_prime(z);
  if (bracket == cplx{}) return {};
  return (log_value(z) * LogComplex::from(bracket)).value();
}

cplx CanonicalProduct::second_derivative_at_node(std::size_t k) const {
  const DiscPoint& zk = seq_[k];
  const cplx a1 = std::conj(zk.value()) / zk.one_minus_modulus_sq();  // A_k'(z_k)
  const cplx a2 = 2.0 * a1 * a1;                                       // A_k''(z_k)
  const cplx e1 = weierstrass_E_prime(1.0, genus_);
  const cplx e2 = weierstrass_E_second(1.0, genus_);
  const cplx bracket = 2.0 * e1 * a1 * reduced_logd_[k] + e2 * a1 * a1 + e1 * a2;
  if (bracket == cplx{}) return {};
  return (LogComplex::from(bracket) * log_b_node_[k]).value();
}

cplx CanonicalProduct::derivative_ratio_at_node(std::size_t k) const {
  const DiscPoint& zk = seq_[k];
  return -reduced_logd_[k] - (genus_ + 1.0) * std::conj(zk.value()) / zk.one_minus_modulus_sq();
}

double CanonicalProduct::mobius_power_sum(cplx z) const {
  return kernels::mobius_power_sum(seq_.arrays(), z, genus_ + 1);
}

double CanonicalProduct::mobius_power_sum_at_node(std::size_t k) const {
  double sum = 0.0;
  for (std::size_t n = 0; n < seq_.size(); ++n) {
    if (n == k) {
      sum += 1.0;
      continue;
    }
    const FactorTerms t = factor_terms_from_diff(seq_[n], seq_.difference(n, k));
    sum += std::pow(std::abs(t.A), genus_ + 1);
  }
  return sum;
}

TsujiReport tsuji_bound_check(const CanonicalProduct& cp, cplx z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("tsuji_bound_check: z outside the disc");
  TsujiReport r;
  r.lhs = cp.log_abs_value(z);
  r.rhs = std::ldexp(cp.mobius_power_sum(z), cp.genus() + 2);
  r.holds = r.lhs <= r.rhs + 1e-9;
  return r;
}

BestConstant lemma1_psi_bound(const CanonicalProduct& cp, const GrowthFunction& gf,
                              std::span<const cplx> z_grid) {
  BestConstant best;
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    const double scale = 1.0 - std::abs(z_grid[i]);
    if (!(scale > 0.0)) throw DomainError("lemma1_psi_bound: point outside the disc");
    const double pt = gf.psi_tilde(1.0 / scale);
    if (!(pt > 0.0)) continue;
    const double v = cp.mobius_power_sum(z_grid[i]) / pt;
    if (v > best.best_constant) best = {v, i};
  }
  return best;
}

Lemma2Report lemma2_index_check(const CanonicalProduct& cp, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("lemma2_index_check: delta must lie in (0, 1)");
  const DiscSequence& seq = cp.sequence();
  Lemma2Report r;
  r.min_ratio = seq.empty() ? 0.0 : kInf;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const double n_val = counting_N_at_node(seq, k, delta * seq[k].one_minus_modulus());
    const double lhs = std::abs(cp.log_reduced_at_node(k).log_modulus + n_val);
    const double rhs = cp.mobius_power_sum_at_node(k);
    r.lhs.push_back(lhs);
    r.rhs.push_back(rhs);
    r.ratio.push_back(lhs / rhs);
    if (lhs / rhs > r.constant) {
      r.constant = lhs / rhs;
      r.witness_index = k;
    }
    r.min_ratio = std::min(r.min_ratio, lhs / rhs);
  }
  return r;
}

Proposition1Report proposition1_check(const CanonicalProduct& cp, const GrowthFunction& gf) {
  const DiscSequence& seq = cp.sequence();
  Proposition1Report r{0.0, 0.0, 0.0, 0, class_R_check(gf, 1e6).member};
  if (seq.empty()) return r;
  r.N_bound = check_concentration(seq, gf).best_constant;
  r.n_bound = check_nu_from_N(seq, gf).n_bound.best_constant;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const double scale = seq[k].one_minus_modulus();
    const double v = std::abs(std::log(scale) + cp.log_prime_at_node(k).log_modulus) / gf.psi(1.0 / scale);
    if (v > r.ln_prime_bound) {
      r.ln_prime_bound = v;
      r.ln_prime_witness = k;
    }
  }
  return r;
}

}  // namespace discinterp
