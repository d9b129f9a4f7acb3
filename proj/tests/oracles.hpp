#pragma once

// Independent reference computations used by the tests. None of these call the
// library's evaluation code: products are multiplied out directly, derivatives
// come from difference quotients or contour means, counting integrals are
// summed interval by interval.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// (1 - w) exp(w + w^2/2 + ... + w^s/s), term by term.
inline cplx primary_factor(cplx w, int s) {
  cplx q = 0.0, p = 1.0;
  for (int j = 1; j <= s; ++j) {
    p *= w;
    q += p / static_cast<double>(j);
  }
  return (1.0 - w) * std::exp(q);
}

/// prod_n E((1 - |z_n|^2) / (1 - conj(z_n) z), s) by plain complex multiplication.
inline cplx direct_product(const std::vector<cplx>& nodes, int s, cplx z) {
  cplx p = 1.0;
  for (cplx zn : nodes) p *= primary_factor((1.0 - std::norm(zn)) / (1.0 - std::conj(zn) * z), s);
  return p;
}

/// Same, skipping node k.
inline cplx direct_reduced_product(const std::vector<cplx>& nodes, int s, std::size_t k, cplx z) {
  cplx p = 1.0;
  for (std::size_t n = 0; n < nodes.size(); ++n)
    if (n != k) p *= primary_factor((1.0 - std::norm(nodes[n])) / (1.0 - std::conj(nodes[n]) * z), s);
  return p;
}

/// Central difference along the real direction, two Richardson steps (error O(h^6)).
inline cplx richardson_derivative(const std::function<cplx(cplx)>& f, cplx z, double h) {
  auto d = [&](double step) { return (f(z + step) - f(z - step)) / (2.0 * step); };
  const cplx d1 = d(h), d2 = d(h / 2.0), d4 = d(h / 4.0);
  const cplx r1 = (4.0 * d2 - d1) / 3.0, r2 = (4.0 * d4 - d2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

/// k-th Taylor coefficient times k!, from the trapezoid rule on |zeta - c| = r.
inline cplx cauchy_derivative(const std::function<cplx(cplx)>& f, cplx c, double r, int order,
                              std::size_t points = 128) {
  cplx sum = 0.0;
  for (std::size_t j = 0; j < points; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(points);
    sum += f(c + std::polar(r, t)) * std::polar(1.0, -order * t);
  }
  return std::tgamma(order + 1.0) * sum / (static_cast<double>(points) * std::pow(r, order));
}

/// (1 / 2 pi i) contour integral of g over |zeta - c| = r.
inline cplx contour_mean(const std::function<cplx(cplx)>& g, cplx c, double r, std::size_t points) {
  cplx sum = 0.0;
  for (std::size_t j = 0; j < points; ++j) {
    const cplx u = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(points));
    sum += g(c + u) * u;
  }
  return sum / static_cast<double>(points);
}

/// int_0^r (n(t) - 1)^+ / t dt for the distances d_j, summed over the intervals
/// on which the counting function is constant.
inline double counting_integral(std::vector<double> distances, double r) {
  std::sort(distances.begin(), distances.end());
  double total = 0.0;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    const double lo = distances[i];
    if (lo > r) break;
    const double hi = i + 1 < distances.size() ? std::min(distances[i + 1], r) : r;
    const double count = static_cast<double>(i + 1);
    if (count > 1.0 && hi > lo) total += (count - 1.0) * std::log(hi / lo);
  }
  return total;
}

/// sup over a uniform grid of [0, u_max] of n u - w f(u); the grid is refined
/// around the best node by repeated tenfold subdivision.
inline double grid_sup(const std::function<double(double)>& f, double n, double weight, double u_max,
                       std::size_t points = 20001) {
  double lo = 0.0, hi = u_max, best = -std::numeric_limits<double>::infinity();
  for (int round = 0; round < 6; ++round) {
    const double step = (hi - lo) / static_cast<double>(points - 1);
    double arg = lo;
    for (std::size_t i = 0; i < points; ++i) {
      const double u = lo + step * static_cast<double>(i);
      const double v = n * u - weight * f(u);
      if (v > best) {
        best = v;
        arg = u;
      }
    }
    lo = std::max(0.0, arg - 10.0 * step);
    hi = arg + 10.0 * step;
  }
  return best;
}

/// Uniform point in |z| <= r_max.
inline cplx random_in_disc(std::mt19937_64& rng, double r_max) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = r_max * std::sqrt(u(rng));
  return std::polar(r, 2.0 * std::numbers::pi * u(rng));
}

/// Clusters of `per_cluster` points around `clusters` random centres, each point within
/// spread (1 - |c|) of its centre: gives pairs with |z_n - z_k| < (1 - |z_k|)/2.
inline std::vector<cplx> clustered_points(std::mt19937_64& rng, std::size_t clusters, std::size_t per_cluster,
                                          double r_max, double spread) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> out;
  for (std::size_t c = 0; c < clusters; ++c) {
    const cplx centre = std::polar(0.3 + (r_max - 0.3) * u(rng), 2.0 * std::numbers::pi * u(rng));
    const double d = spread * (1.0 - std::abs(centre));
    for (std::size_t i = 0; i < per_cluster; ++i)
      out.push_back(centre + std::polar(d * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng)));
  }
  return out;
}

}  // namespace oracle
