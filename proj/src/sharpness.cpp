#include "discinterp/sharpness.hpp"

#include <cmath>
#include <numbers>

#include "discinterp/errors.hpp"
#include "discinterp/products.hpp"

namespace discinterp {

namespace {

constexpr double kMaxRepresentableExponent = 700.0;

}  // namespace

SharpnessSequence::SharpnessSequence(double rho, int n_max) : rho_(rho), n_max_(n_max) {
  if (!(rho > 0.0)) throw DomainError("SharpnessSequence: rho must be positive");
  if (n_max < 1 || n_max > 50) throw DomainError("SharpnessSequence: n_max must lie in [1, 50]");
  for (int n = 1; n <= n_max; ++n) {
    const bool rep = representable(n);
    if (rep) representable_levels_ = n;
    const double ln_base = -n * std::numbers::ln2;
    // 1 - |z_{2n}| = 2^{-n} (1 - eps_n 2^n)
    const double shift = rep ? std::log1p(-std::exp(log_gap(n) - ln_base)) : 0.0;
    nodes_.push_back({static_cast<std::size_t>(2 * n - 1), n, false, ln_base, rep});
    nodes_.push_back({static_cast<std::size_t>(2 * n), n, true, ln_base + shift, rep});
  }
}

double SharpnessSequence::log_gap(int n) const { return -std::exp2(n * rho_) - std::numbers::ln2; }

bool SharpnessSequence::representable(int n) const { return std::exp2(n * rho_) <= kMaxRepresentableExponent; }

DiscSequence SharpnessSequence::representable_sequence() const {
  std::vector<DiscPoint> pts;
  for (int n = 1; n <= representable_levels_; ++n) {
    const double anchor = 1.0 - std::exp2(-n);
    pts.emplace_back(cplx{anchor, 0.0});
    pts.emplace_back(cplx{anchor, 0.0}, cplx{std::exp(log_gap(n)), 0.0});
  }
  return DiscSequence(std::move(pts));
}

std::vector<SharpnessCountRow> sharpness_counting_check(const SharpnessSequence& seq) {
  const auto& nodes = seq.nodes();
  // 1 - z_m; the gap is dropped on log-only levels, where it is below 2^{-n} e^{-700}.
  std::vector<double> x(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const int n = nodes[i].level;
    x[i] = std::exp2(-n) - (nodes[i].shifted && nodes[i].representable ? std::exp(seq.log_gap(n)) : 0.0);
  }
  std::vector<SharpnessCountRow> rows;
  rows.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double log_r = nodes[i].log_one_minus_modulus - std::numbers::ln2;
    double total = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j == i) continue;
      const double log_d =
          nodes[j].level == nodes[i].level ? seq.log_gap(nodes[i].level) : std::log(std::abs(x[i] - x[j]));
      if (log_d <= log_r) total += log_r - log_d;
    }
    const double target = std::exp(-seq.rho() * nodes[i].log_one_minus_modulus);
    rows.push_back({nodes[i].m, nodes[i].level, total, target, total / target});
  }
  return rows;
}

WitnessReport sharpness_growth_witness(const SharpnessSequence& seq, double epsilon0) {
  if (!(epsilon0 >= 0.0)) throw DomainError("sharpness_growth_witness: epsilon0 must be >= 0");
  WitnessReport report;
  const CanonicalProduct blaschke = CanonicalProduct::blaschke(seq.representable_sequence());
  for (const SharpnessNode& node : seq.nodes()) {
    if (!node.shifted) continue;
    const int n = node.level;
    WitnessRow row;
    row.level = n;
    row.lower = std::exp2(n * seq.rho()) - std::log(5.0);
    row.upper = std::exp(-(seq.rho() - 0.5 * epsilon0) * node.log_one_minus_modulus);
    row.crossed = row.lower > row.upper;
    if (n <= seq.representable_levels())
      row.computed_log_ratio = std::log(std::abs(blaschke.derivative_ratio_at_node(2 * n - 1)));
    report.rows.push_back(row);
  }
  for (auto it = report.rows.rbegin(); it != report.rows.rend() && it->crossed; ++it)
    report.crossing_level = it->level;
  return report;
}

}  // namespace discinterp
