#include "discinterp/log_complex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace discinterp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double normalize_phase(double phase) {
  if (!std::isfinite(phase)) return phase;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(phase, two_pi);  // in [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

LogComplex LogComplex::zero() { return {-kInf, 0.0}; }

LogComplex LogComplex::from(cplx w) {
  if (w == cplx{}) return zero();
  return {std::log(std::abs(w)), std::arg(w)};
}

LogComplex LogComplex::from_log(cplx log_w) {
  if (std::isinf(log_w.real()) && log_w.real() < 0) return zero();
  return {log_w.real(), normalize_phase(log_w.imag())};
}

bool LogComplex::is_zero() const { return log_modulus == -kInf; }

cplx LogComplex::value() const {
  if (is_zero()) return {};
  return std::polar(std::exp(log_modulus), phase);
}

LogComplex& LogComplex::operator*=(const LogComplex& other) {
  if (is_zero() || other.is_zero()) {
    *this = zero();
    return *this;
  }
  log_modulus += other.log_modulus;
  phase = normalize_phase(phase + other.phase);
  return *this;
}

LogComplex& LogComplex::operator/=(const LogComplex& other) {
  if (is_zero()) return *this;
  log_modulus -= other.log_modulus;
  phase = normalize_phase(phase - other.phase);
  return *this;
}

LogComplex LogComplex::operator-() const {
  if (is_zero()) return *this;
  return {log_modulus, normalize_phase(phase + std::numbers::pi)};
}

LogComplex LogComplex::pow(int k) const {
  if (k == 0) return one();
  if (is_zero()) return zero();
  return {k * log_modulus, normalize_phase(k * phase)};
}

LogComplex log_sum(std::span<const LogComplex> terms) {
  std::vector<const LogComplex*> live;
  live.reserve(terms.size());
  for (const auto& t : terms)
    if (!t.is_zero()) live.push_back(&t);
  if (live.empty()) return LogComplex::zero();
  std::sort(live.begin(), live.end(),
            [](const LogComplex* a, const LogComplex* b) { return a->log_modulus > b->log_modulus; });
  const double scale = live.front()->log_modulus;
  cplx acc{};
  for (const LogComplex* t : live) acc += std::polar(std::exp(t->log_modulus - scale), t->phase);
  if (acc == cplx{}) return LogComplex::zero();
  LogComplex out = LogComplex::from(acc);
  out.log_modulus += scale;
  return out;
}

LogComplex log_sum(const LogComplex& a, const LogComplex& b) {
  const LogComplex both[2] = {a, b};
  return log_sum(std::span<const LogComplex>(both, 2));
}

}  // namespace discinterp
