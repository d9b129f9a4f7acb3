#include "discinterp/geometry.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>

#include "discinterp/errors.hpp"

namespace discinterp {

namespace {

std::string describe(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

}  // namespace

DiscPoint::DiscPoint(cplx value) : DiscPoint(value, cplx{}) {}

DiscPoint::DiscPoint(cplx anchor, cplx offset)
    : anchor_(anchor), offset_(offset), value_(anchor + offset) {
  if (!std::isfinite(value_.real()) || !std::isfinite(value_.imag()))
    throw DomainError("DiscPoint: non-finite coordinates");
  const double a = std::abs(anchor_);
  // 1 - |a + o|^2 = (1 - |a|)(1 + |a|) - 2 Re(conj(a) o) - |o|^2
  const double one_minus_sq =
      (1.0 - a) * (1.0 + a) - 2.0 * (std::conj(anchor_) * offset_).real() - std::norm(offset_);
  modulus_ = std::abs(value_);
  if (!(one_minus_sq > 0.0) || !(modulus_ < 1.0))
    throw DomainError("DiscPoint: point " + describe(value_) + " is not inside the unit disc");
  one_minus_modulus_sq_ = one_minus_sq;
  one_minus_modulus_ = one_minus_sq / (1.0 + modulus_);
}

cplx DiscPoint::minus(const DiscPoint& other) const {
  if (anchor_ == other.anchor_) return offset_ - other.offset_;
  return (anchor_ - other.anchor_) + (offset_ - other.offset_);
}

DiscSequence::DiscSequence(std::vector<DiscPoint> points) : points_(std::move(points)) {
  const std::size_t n = points_.size();
  min_modulus_ = n ? 1.0 : 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const DiscPoint& p = points_[k];
    if (p.modulus() < kMinNodeModulus)
      throw DegenerateNodeError("DiscSequence: node " + std::to_string(k) + " at " +
                                describe(p.value()) + " is too close to the origin");
    min_modulus_ = std::min(min_modulus_, p.modulus());
    max_modulus_ = std::max(max_modulus_, p.modulus());
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const double d = std::abs(points_[j].minus(points_[k]));
      const bool shared = points_[j].anchor() == points_[k].anchor();
      const double tol = shared ? DBL_MIN : kDuplicateTolerance;
      if (!(d >= tol))
        throw DuplicatePointError(j, k,
                                  "DiscSequence: points " + std::to_string(j) + " and " +
                                      std::to_string(k) + " coincide at " +
                                      describe(points_[j].value()));
    }
  }
  arrays_.anchor_re.reserve(n);
  for (const DiscPoint& p : points_) {
    arrays_.anchor_re.push_back(p.anchor().real());
    arrays_.anchor_im.push_back(p.anchor().imag());
    arrays_.offset_re.push_back(p.offset().real());
    arrays_.offset_im.push_back(p.offset().imag());
    arrays_.value_re.push_back(p.value().real());
    arrays_.value_im.push_back(p.value().imag());
    arrays_.weight.push_back(p.one_minus_modulus_sq());
  }
}

DiscSequence DiscSequence::from_values(std::span<const cplx> values) {
  std::vector<DiscPoint> pts;
  pts.reserve(values.size());
  for (cplx v : values) pts.emplace_back(v);
  return DiscSequence(std::move(pts));
}

cplx mobius_denominator(const DiscPoint& node, cplx diff) {
  return node.one_minus_modulus_sq() + std::conj(node.value()) * diff;
}

double pseudo_dist(const DiscPoint& z, const DiscPoint& w) {
  const cplx diff = z.minus(w);
  if (diff == cplx{}) return 0.0;
  return std::abs(diff) / std::abs(mobius_denominator(z, diff));
}

double pseudo_dist(cplx z, cplx w) {
  if (z == w) return 0.0;
  return std::abs(z - w) / std::abs(1.0 - std::conj(z) * w);
}

cplx mobius_factor(cplx z, const DiscPoint& node) {
  if (node.modulus() < kMinNodeModulus)
    throw DegenerateNodeError("mobius_factor: node at the origin");
  return node.one_minus_modulus_sq() / mobius_denominator(node, node.minus(z));
}

double pseudo_disc_radius(double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw DomainError("pseudo_disc_radius: delta must lie in (0, 1)");
  return delta / (2.0 + delta);
}

cplx disc_automorphism(cplx a, cplx z) { return (a - z) / (1.0 - std::conj(a) * z); }

}  // namespace discinterp
