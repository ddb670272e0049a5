#pragma once

// Predictor stage: along z(alpha) = (x + alpha dx, s + alpha ds, (1-alpha) w)
// the residual deviation d(alpha) = r(z(alpha)) - rho(w(alpha)) e is the exact
// quadratic base + alpha h + alpha^2 g, so psi(z(alpha)) can be evaluated in
// O(n) without touching M.

#include <cmath>
#include <cstddef>
#include <optional>

#include "ptslcp/directions.hpp"
#include "ptslcp/error.hpp"
#include "ptslcp/linalg.hpp"
#include "ptslcp/pts_core.hpp"
#include "ptslcp/quadratic.hpp"

namespace ptslcp {

struct RayExpansion {
  Vector base;  // r(z) - rho(w) e
  Vector h;
  Vector g;
  double rho0 = 0.0;
  double vnorm2 = 0.0;
  std::size_t n = 0;

  /// d(alpha) = base + alpha h + alpha^2 g
  Vector d(double alpha) const {
    Vector out(base.size());
    for (std::size_t i = 0; i < base.size(); ++i)
      out[i] = base[i] + alpha * (h[i] + alpha * g[i]);
    return out;
  }
};

/// rho(w(alpha)) = (1 - alpha) (rho(w) + alpha ||v||^2 / (n+1))
inline double rho_along_ray(double rho0, double vnorm2, std::size_t n,
                            double alpha) {
  return (1.0 - alpha) *
         (rho0 + alpha * vnorm2 / static_cast<double>(n + 1));
}

inline double rho_along_ray(const TargetPoint& w, double alpha) {
  return rho_along_ray(w.rho(), w.v_norm2(), w.n(), alpha);
}

inline double rho_along_ray(const RayExpansion& e, double alpha) {
  return rho_along_ray(e.rho0, e.vnorm2, e.n, alpha);
}

inline RayExpansion expand_ray(const Iterate& z, const SearchDirection& dir) {
  const std::size_t n = z.n();
  const double rho = z.rho();
  const double vn2 = z.w().v_norm2();
  const double vbar = vn2 / static_cast<double>(n + 1);
  const auto& v = z.w().v;

  RayExpansion e{Vector(n + 1), Vector(n + 1), Vector(n + 1), rho, vn2, n};
  for (std::size_t i = 0; i <= n; ++i) e.base[i] = z.r()[i] - rho;

  double dxds = 0.0;
  for (std::size_t i = 0; i < n; ++i) dxds += dir.dx[i] * dir.ds[i];

  e.h[0] = -z.w().v0 - sum(dir.a) + rho - vbar;
  e.g[0] = vbar - dxds;
  for (std::size_t i = 0; i < n; ++i) {
    const double vi2 = v[i] * v[i];
    e.h[i + 1] = dir.a[i] + 2.0 * vi2 + rho - vbar;
    e.g[i + 1] = dir.dx[i] * dir.ds[i] - vi2 + vbar;
  }
  return e;
}

/// psi(z(alpha)) = -sum ln(1 + d_i(alpha) / rho(w(alpha))), or nullopt when
/// some residual is nonpositive at alpha.
inline std::optional<double> psi_along_ray(const RayExpansion& e, double alpha) {
  const double rho_a = rho_along_ray(e, alpha);
  if (!(rho_a > 0.0)) return std::nullopt;
  double psi = 0.0;
  for (std::size_t i = 0; i < e.base.size(); ++i) {
    const double di = e.base[i] + alpha * (e.h[i] + alpha * e.g[i]);
    const double arg = 1.0 + di / rho_a;
    if (!(arg > 0.0)) return std::nullopt;
    psi -= std::log(arg);
  }
  return psi;
}

/// Largest alpha in (0, 1] keeping every residual r_i(z(alpha)) =
/// d_i(alpha) + rho(w(alpha)) positive, from the closed-form quadratic roots.
inline double ray_feasibility_limit(const RayExpansion& e) {
  const double vbar = e.vnorm2 / static_cast<double>(e.n + 1);
  double limit = 1.0;
  for (std::size_t i = 0; i < e.base.size(); ++i) {
    const double c0 = e.base[i] + e.rho0;
    const double c1 = e.h[i] + vbar - e.rho0;
    const double c2 = e.g[i] - vbar;
    limit = std::min(limit, first_positive_root(c0, c1, c2));
  }
  return limit;
}

struct PredictorResult {
  double alpha_p = 0.0;
  Iterate new_iterate;
  double psi_at_alpha = 0.0;
  std::size_t bisection_iters = 0;
};

struct PredictorOptions {
  std::size_t scan_points = 32;
  std::size_t max_bisections = 60;
  double alpha_tol = 1e-10;
  double psi_tol = 1e-7;
};

/// Largest alpha of the first connected piece of {alpha : psi(z(alpha)) <=
/// tau} containing 0. A coarse scan over [0, feasibility limit) locates the
/// first crossing, bisection then refines it.
inline PredictorResult predictor_step(const Iterate& z,
                                      const SearchDirection& dir, double tau,
                                      const PredictorOptions& opt = {}) {
  if (!(tau > 0.0)) throw DomainError("predictor_step: tau must be positive");
  const RayExpansion e = expand_ray(z, dir);
  const double psi0 = psi_along_ray(e, 0.0).value_or(INFINITY);
  if (!(psi0 < tau))
    throw DomainError("predictor_step: psi(z) = " + std::to_string(psi0) +
                      " is not below tau");

  auto accepted = [&](double alpha) {
    const auto psi = psi_along_ray(e, alpha);
    return psi.has_value() && *psi <= tau;
  };

  const double limit = ray_feasibility_limit(e);
  double lo = 0.0;
  double hi = limit;
  for (std::size_t k = 1; k < opt.scan_points; ++k) {
    const double alpha = limit * static_cast<double>(k) /
                         static_cast<double>(opt.scan_points);
    if (!accepted(alpha)) {
      hi = alpha;
      break;
    }
    lo = alpha;
  }
  // hi == limit is never accepted: some residual (or rho) vanishes there.

  std::size_t iters = 0;
  for (; iters < opt.max_bisections; ++iters) {
    const double psi_lo = psi_along_ray(e, lo).value_or(INFINITY);
    if (hi - lo <= opt.alpha_tol && tau - psi_lo <= opt.psi_tol) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (accepted(mid))
      lo = mid;
    else
      hi = mid;
  }

  if (!(lo > 1e-14))
    throw StalledPredictor("predictor step length " + std::to_string(lo) +
                           " below 1e-14");

  auto materialise = [&](double alpha) -> std::optional<Iterate> {
    try {
      Iterate next(axpy(z.x(), alpha, dir.dx), axpy(z.s(), alpha, dir.ds),
                   z.w().scaled(1.0 - alpha));
      if (proximities(next).psi <= tau) return next;
    } catch (const NotInteriorPoint&) {
    } catch (const DomainError&) {
    }
    return std::nullopt;
  };

  // For alpha close to 1 the stored x + alpha dx loses digits to cancellation,
  // so the recomputed psi can exceed the expansion's value. Retreat along the
  // ray until the stored iterate itself lies in the neighbourhood.
  double alpha = lo;
  std::optional<Iterate> next = materialise(alpha);
  if (!next) {
    double good = 0.0, bad = alpha;
    for (std::size_t k = 0; k < opt.max_bisections; ++k, ++iters) {
      const double mid = 0.5 * (good + bad);
      if (mid <= good || mid >= bad) break;
      if (materialise(mid))
        good = mid;
      else
        bad = mid;
    }
    alpha = good;
    if (!(alpha > 1e-14))
      throw StalledPredictor("predictor step length " + std::to_string(alpha) +
                             " below 1e-14 after recomputation");
    next = materialise(alpha);
    if (!next) throw StalledPredictor("predictor cannot keep psi <= tau");
  }
  const double psi_new = proximities(*next).psi;
  return {alpha, std::move(*next), psi_new, iters};
}

/// Lower bound on the predictor step guaranteed when delta(z) <= beta < 1/3
/// and tau >= omega_*(2 beta / (1 - beta)):
/// (1/2) sqrt(beta/(1-beta)) (abar - 1)/abar / sqrt(n).
inline double predictor_step_lower_bound(const TargetPoint& w, double beta) {
  const double abar = alpha_under(w);
  const double frac = std::isinf(abar) ? 1.0 : (abar - 1.0) / abar;
  return 0.5 * std::sqrt(beta / (1.0 - beta)) * frac /
         std::sqrt(static_cast<double>(w.n()));
}

}  // namespace ptslcp
