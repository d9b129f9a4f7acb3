#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "discinterp/log_complex.hpp"

namespace discinterp {

/// Nodes closer to the origin than this are rejected (A_n would be ~constant).
inline constexpr double kMinNodeModulus = 1e-9;
/// Euclidean duplicate tolerance for points that do not share an anchor.
inline constexpr double kDuplicateTolerance = 1e-15;

/// A point of the open unit disc.
///
/// The value is stored as anchor + offset. Ordinary points have a zero offset;
/// points that sit extremely close to another point (closer than double
/// resolution near the boundary) are given the neighbour's anchor and a tiny
/// offset, so that differences between them stay exact.
class DiscPoint {
 public:
  explicit DiscPoint(cplx value);
  DiscPoint(cplx anchor, cplx offset);

  cplx value() const { return value_; }
  cplx anchor() const { return anchor_; }
  cplx offset() const { return offset_; }
  double modulus() const { return modulus_; }
  /// 1 - |z|, computed from the split representation.
  double one_minus_modulus() const { return one_minus_modulus_; }
  /// 1 - |z|^2.
  double one_minus_modulus_sq() const { return one_minus_modulus_sq_; }

  /// this - other, with shared anchors cancelled exactly.
  cplx minus(const DiscPoint& other) const;
  /// this - z for a plain complex z.
  cplx minus(cplx z) const { return (anchor_ - z) + offset_; }

 private:
  cplx anchor_;
  cplx offset_;
  cplx value_;
  double modulus_;
  double one_minus_modulus_;
  double one_minus_modulus_sq_;
};

/// Structure-of-arrays copy of a sequence's node data, consumed by the kernels.
struct NodeArrays {
  std::vector<double> anchor_re, anchor_im;
  std::vector<double> offset_re, offset_im;
  std::vector<double> value_re, value_im;
  std::vector<double> weight;  // 1 - |z_n|^2
  std::size_t size() const { return weight.size(); }
};

/// Finite sequence of distinct nonzero points of the disc; index k is identity.
class DiscSequence {
 public:
  DiscSequence() = default;
  explicit DiscSequence(std::vector<DiscPoint> points);
  static DiscSequence from_values(std::span<const cplx> values);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const DiscPoint& operator[](std::size_t k) const { return points_[k]; }
  const std::vector<DiscPoint>& points() const { return points_; }
  double min_modulus() const { return min_modulus_; }
  double max_modulus() const { return max_modulus_; }
  const NodeArrays& arrays() const { return arrays_; }

  /// z_j - z_k with exact anchor cancellation.
  cplx difference(std::size_t j, std::size_t k) const { return points_[j].minus(points_[k]); }

 private:
  std::vector<DiscPoint> points_;
  double min_modulus_ = 0.0;
  double max_modulus_ = 0.0;
  NodeArrays arrays_;
};

/// sigma(z, w) = |z - w| / |1 - conj(z) w|.
double pseudo_dist(const DiscPoint& z, const DiscPoint& w);
double pseudo_dist(cplx z, cplx w);

/// A_n(z) = (1 - |z_n|^2) / (1 - conj(z_n) z).
cplx mobius_factor(cplx z, const DiscPoint& node);
/// 1 - conj(z_n) z written as (1 - |z_n|^2) + conj(z_n)(z_n - z), given diff = z_n - z.
cplx mobius_denominator(const DiscPoint& node, cplx diff);

/// delta / (2 + delta): pseudohyperbolic radius whose disc sits inside U(z, (1-|z|) delta).
double pseudo_disc_radius(double delta);

/// The disc automorphism phi_a(z) = (a - z) / (1 - conj(a) z).
cplx disc_automorphism(cplx a, cplx z);

}  // namespace discinterp
