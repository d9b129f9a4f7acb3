#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "discinterp/geometry.hpp"

namespace discinterp {

/// One point of the paired sequence z_{2n-1} = 1 - 2^{-n}, z_{2n} = 1 - 2^{-n} + eps_n.
struct SharpnessNode {
  std::size_t m;                  // 1-based index in the paired sequence
  int level;                      // n
  bool shifted;                   // true for z_{2n}
  double log_one_minus_modulus;   // ln(1 - |z_m|)
  bool representable;             // eps_n is a normal double
};

/// The paired sequence with eps_n = e^{-2^{n rho}} / 2, kept in log-space so that
/// levels whose gap underflows ("log-only" levels) still take part in counting.
class SharpnessSequence {
 public:
  SharpnessSequence(double rho, int n_max);

  double rho() const { return rho_; }
  int n_max() const { return n_max_; }
  const std::vector<SharpnessNode>& nodes() const { return nodes_; }

  /// ln eps_n = -2^{n rho} - ln 2, exact.
  double log_gap(int n) const;
  /// Levels with 2^{n rho} <= 700 are stored as doubles as well.
  bool representable(int n) const;
  /// Number of leading representable levels.
  int representable_levels() const { return representable_levels_; }
  /// Nodes of the representable levels, as anchor + offset points (z_{2n} shares z_{2n-1}'s anchor).
  DiscSequence representable_sequence() const;

 private:
  double rho_;
  int n_max_;
  int representable_levels_ = 0;
  std::vector<SharpnessNode> nodes_;
};

struct SharpnessCountRow {
  std::size_t m;
  int level;
  double N_value;  // N_{z_m}((1 - |z_m|)/2), in log-space arithmetic
  double target;   // (1/(1 - |z_m|))^rho
  double ratio;
};

std::vector<SharpnessCountRow> sharpness_counting_check(const SharpnessSequence& seq);

struct WitnessRow {
  int level;
  double lower;  // 2^{n rho} - ln 5, forced lower bound for ln|g'(z_{2n})|
  double upper;  // (1/(1 - |z_{2n}|))^{rho - eps0/2}, the hypothetical bound
  bool crossed;  // lower > upper
  /// ln|B''/(2B')|(z_{2n}) for the genus-0 product on representable levels.
  std::optional<double> computed_log_ratio;
};

struct WitnessReport {
  std::vector<WitnessRow> rows;
  /// Smallest n from which lower > upper holds through n_max.
  std::optional<int> crossing_level;
};

WitnessReport sharpness_growth_witness(const SharpnessSequence& seq, double epsilon0);

}  // namespace discinterp
