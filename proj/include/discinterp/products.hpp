#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "discinterp/geometry.hpp"
#include "discinterp/growth.hpp"
#include "discinterp/log_complex.hpp"

namespace discinterp {

/// H_s = 1 + 1/2 + ... + 1/s (0 for s = 0).
double harmonic_number(int s);
/// q(w) = w + w^2/2 + ... + w^s/s.
cplx primary_exponent(cplx w, int s);
/// q'(w) = 1 + w + ... + w^{s-1}.
cplx primary_exponent_prime(cplx w, int s);

/// E(w, s) = (1 - w) exp(q(w)).
cplx weierstrass_E(cplx w, int s);
/// E'(w, s) = -w^s exp(q(w)).
cplx weierstrass_E_prime(cplx w, int s);
/// E''(w, s) = -exp(q(w)) (s w^{s-1} + w^s q'(w)).
cplx weierstrass_E_second(cplx w, int s);

/// Per-node quantities of one factor E(A_n(z), s) at a point z.
struct FactorTerms {
  cplx diff;         // z_n - z
  cplx denominator;  // 1 - conj(z_n) z
  cplx A;            // A_n(z)
  cplx one_minus_A;  // conj(z_n)(z_n - z) / (1 - conj(z_n) z), without cancellation
};

FactorTerms factor_terms(const DiscPoint& node, cplx z);
/// Same, from an exact difference z_n - z.
FactorTerms factor_terms_from_diff(const DiscPoint& node, cplx diff);

/// P(z) = prod_n E(A_n(z), s) over a finite sequence, evaluated in log-space.
///
/// Node data (B_k(z_k) and the reduced log-derivatives B_k'/B_k at z_k) is
/// computed once at construction from exact split differences.
class CanonicalProduct {
 public:
  /// genus >= 1.
  CanonicalProduct(DiscSequence seq, int genus);
  /// Genus-0 product (a finite Blaschke product up to unimodular factors).
  static CanonicalProduct blaschke(DiscSequence seq);

  const DiscSequence& sequence() const { return seq_; }
  std::size_t size() const { return seq_.size(); }
  int genus() const { return genus_; }

  /// ln E(A_n(z), s) (any branch); -inf modulus when z = z_n.
  cplx log_factor(std::size_t n, cplx z) const;
  /// Same, from an exact difference z_n - z.
  cplx log_factor_from_diff(std::size_t n, cplx diff) const;
  /// ln P(z); log_modulus = -inf at nodes.
  LogComplex log_value(cplx z) const;
  /// ln|P(z)| through the node-sum kernel.
  double log_abs_value(cplx z) const;
  cplx value(cplx z) const { return log_value(z).value(); }

  /// B_k(z) = prod_{n != k} E(A_n(z), s).
  LogComplex log_reduced(std::size_t k, cplx z) const;
  /// B_k(z_k), cached.
  const LogComplex& log_reduced_at_node(std::size_t k) const { return log_b_node_[k]; }
  /// (B_k'/B_k)(z_k) = sum_{n != k} A_n(z_k)^{s+1} / (z_k - z_n), cached.
  cplx reduced_log_derivative_at_node(std::size_t k) const { return reduced_logd_[k]; }

  /// P'(z_k) = -e^{H_s} conj(z_k) B_k(z_k) / (1 - |z_k|^2).
  LogComplex log_prime_at_node(std::size_t k) const;
  cplx prime_at_node(std::size_t k) const { return log_prime_at_node(k).value(); }

  /// P'/P = sum_n A_n(z)^{s+1} / (z - z_n); PoleError within 1e-12 (1 - |z_k|) of a node.
  cplx log_derivative(cplx z) const;
  /// (P'/P)'.
  cplx log_derivative_prime(cplx z) const;
  /// P'' = P ((P'/P)^2 + (P'/P)') away from nodes, the split formula at nodes.
  cplx second_derivative(cplx z) const;
  /// 2 E'(A_k) A_k' B_k' + (E''(A_k) A_k'^2 + E'(A_k) A_k'') B_k at z = z_k.
  cplx second_derivative_at_node(std::size_t k) const;
  /// -P''(z_k) / (2 P'(z_k)) = -(B_k'/B_k)(z_k) - (s+1) conj(z_k) / (1 - |z_k|^2).
  cplx derivative_ratio_at_node(std::size_t k) const;

  /// sum_n |A_n(z)|^{s+1}.
  double mobius_power_sum(cplx z) const;
  double mobius_power_sum_at_node(std::size_t k) const;

 private:
  struct Unchecked {};
  CanonicalProduct(DiscSequence seq, int genus, Unchecked);
  /// Throws PoleError when z is numerically on a node.
  void check_pole(cplx z, const char* who) const;
  /// Index of a node within 1e-12 (1 - |z_k|) of z, or size().
  std::size_t node_near(cplx z) const;

  DiscSequence seq_;
  int genus_;
  double harmonic_;
  std::vector<LogComplex> log_b_node_;
  std::vector<cplx> reduced_logd_;
};

struct TsujiReport {
  double lhs;  // ln|P(z)|
  double rhs;  // 2^{s+2} sum |A_n(z)|^{s+1}
  bool holds;
};

/// ln|P(z)| <= 2^{s+2} sum_n |A_n(z)|^{s+1} at one point (tolerance 1e-9).
TsujiReport tsuji_bound_check(const CanonicalProduct& cp, cplx z);

struct BestConstant {
  double best_constant = 0.0;
  std::size_t witness_index = 0;
};

/// max over z_grid of sum |A_n(z)|^{s+1} / psi~(1/(1-|z|)); points with psi~ = 0 are skipped.
BestConstant lemma1_psi_bound(const CanonicalProduct& cp, const GrowthFunction& gf,
                              std::span<const cplx> z_grid);

struct Lemma2Report {
  std::vector<double> lhs;    // |ln|B_k(z_k)| + N_{z_k}(delta (1-|z_k|))|
  std::vector<double> rhs;    // sum_n |A_n(z_k)|^{s+1}
  std::vector<double> ratio;  // lhs / rhs
  double constant = 0.0;      // max ratio
  double min_ratio = 0.0;
  std::size_t witness_index = 0;
};

Lemma2Report lemma2_index_check(const CanonicalProduct& cp, double delta = 0.5);

struct Proposition1Report {
  double n_bound;      // max n_{z_k}((1-|z_k|)/2) / psi
  double N_bound;      // concentration constant
  double ln_prime_bound;  // max |ln((1-|z_k|)|P'(z_k)|)| / psi
  std::size_t ln_prime_witness;
  bool class_R;        // equivalence is only claimed for psi in R
};

Proposition1Report proposition1_check(const CanonicalProduct& cp, const GrowthFunction& gf);

}  // namespace discinterp
