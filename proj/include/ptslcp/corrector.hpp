#pragma once

// Corrector stage: Newton steps with rhs a_c at fixed w. Along z + alpha dz the
// residuals are exact quadratics, so the barrier restriction
// f(alpha) = F(z + alpha dz) and its derivatives cost O(n) per evaluation.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "ptslcp/directions.hpp"
#include "ptslcp/error.hpp"
#include "ptslcp/linalg.hpp"
#include "ptslcp/problem.hpp"
#include "ptslcp/pts_core.hpp"
#include "ptslcp/quadratic.hpp"

namespace ptslcp {

/// r_i(z + alpha dz) = c0_i + alpha c1_i + alpha^2 c2_i, i = 0..n.
struct CorrectorLine {
  Vector c0;
  Vector c1;
  Vector c2;
  double rho = 0.0;

  double residual(std::size_t i, double alpha) const {
    return c0[i] + alpha * (c1[i] + alpha * c2[i]);
  }
};

/// Residual quadratics along a fixed-w direction with rhs a:
/// r_0(alpha) = r_0 - alpha e^T a - alpha^2 dx^T ds,
/// r_i(alpha) = r_i + alpha a_i + alpha^2 dx_i ds_i.
/// For a = a_c this is (1-alpha) r + alpha rho + alpha^2 (-dx^T ds | dx ds).
inline CorrectorLine corrector_line(const Iterate& z, const SearchDirection& dir) {
  const std::size_t n = z.n();
  CorrectorLine line{z.r(), Vector(n + 1), Vector(n + 1), z.rho()};
  double dxds = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double prod = dir.dx[i] * dir.ds[i];
    line.c1[i + 1] = dir.a[i];
    line.c2[i + 1] = prod;
    dxds += prod;
  }
  line.c1[0] = -sum(dir.a);
  line.c2[0] = -dxds;
  return line;
}

/// f(alpha) = F(z + alpha dz); nullopt outside the domain.
inline std::optional<double> f_value(const CorrectorLine& line, double alpha) {
  double f = 0.0;
  for (std::size_t i = 0; i < line.c0.size(); ++i) {
    const double ri = line.residual(i, alpha);
    if (!(ri > 0.0)) return std::nullopt;
    f -= std::log(ri);
  }
  return f;
}

inline std::optional<double> f_prime(const CorrectorLine& line, double alpha) {
  double fp = 0.0;
  for (std::size_t i = 0; i < line.c0.size(); ++i) {
    const double ri = line.residual(i, alpha);
    if (!(ri > 0.0)) return std::nullopt;
    fp -= (line.c1[i] + 2.0 * alpha * line.c2[i]) / ri;
  }
  return fp;
}

inline std::optional<double> f_second(const CorrectorLine& line,
                                      double alpha = 0.0) {
  double fpp = 0.0;
  for (std::size_t i = 0; i < line.c0.size(); ++i) {
    const double ri = line.residual(i, alpha);
    if (!(ri > 0.0)) return std::nullopt;
    const double slope = (line.c1[i] + 2.0 * alpha * line.c2[i]) / ri;
    fpp += slope * slope - 2.0 * line.c2[i] / ri;
  }
  return fpp;
}

/// End of the domain of f on alpha > 0 (+inf if f is defined for all alpha).
inline double corrector_feasibility_limit(const CorrectorLine& line) {
  double limit = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < line.c0.size(); ++i)
    limit = std::min(limit, first_positive_root(line.c0[i], line.c1[i], line.c2[i]));
  return limit;
}

/// Corrector steps allowed by the barrier-decrease argument:
/// floor(tau / omega(beta / sqrt(1 + 2 beta))) + 1.
inline std::size_t corrector_step_bound(double tau, double beta) {
  const double per_step = omega(beta / std::sqrt(1.0 + 2.0 * beta));
  return static_cast<std::size_t>(std::floor(tau / per_step)) + 1;
}

enum class LineSearchBranch { ExactLineSearch, DampedNewton };

struct CorrectorStepResult {
  Iterate iterate;
  double alpha = 0.0;
  double f_before = 0.0;
  double f_after = 0.0;
  double lambda = 0.0;  // Newton decrement |f'(0)| / sqrt(f''(0))
  double delta_before = 0.0;
  LineSearchBranch branch = LineSearchBranch::ExactLineSearch;
  SearchDirection direction;
};

struct CorrectorOptions {
  std::size_t max_bisections = 60;
  double alpha_tol = 1e-12;
  double min_decrease = 1e-14;
};

/// One corrector step: minimise f over its domain by bisection on f'
/// (f is convex there); fall back to the damped Newton step
/// alpha = -f'(0) / ((1 + lambda) f''(0)) when bisection cannot bracket or
/// does not decrease F.
inline CorrectorStepResult corrector_step(const Iterate& z, const LcpProblem& p,
                                          const CorrectorOptions& opt = {}) {
  SearchDirection dir = solve_newton(p, z, rhs_corrector(z), DirectionKind::Corrector);
  const CorrectorLine line = corrector_line(z, dir);
  const double f0 = barrier_F(z);
  const double fp0 = *f_prime(line, 0.0);
  const double fpp0 = *f_second(line, 0.0);
  const double delta = proximities(z).delta;
  if (!(fp0 < 0.0) || !(fpp0 > 0.0))
    throw StalledCorrector("corrector direction is not a descent direction");
  const double lambda = std::abs(fp0) / std::sqrt(fpp0);

  auto try_alpha = [&](double alpha) -> std::optional<Iterate> {
    if (!(alpha > 0.0)) return std::nullopt;
    try {
      Iterate next(axpy(z.x(), alpha, dir.dx), axpy(z.s(), alpha, dir.ds), z.w());
      if (barrier_F(next) < f0 - opt.min_decrease) return next;
    } catch (const NotInteriorPoint&) {
    }
    return std::nullopt;
  };

  std::optional<Iterate> next;
  double alpha = 0.0;
  auto branch = LineSearchBranch::ExactLineSearch;

  double hi = corrector_feasibility_limit(line);
  bool bracketed = std::isfinite(hi);
  if (!bracketed) {
    hi = 1.0;
    for (int k = 0; k < 60; ++k, hi *= 2.0) {
      const auto fp = f_prime(line, hi);
      if (!fp || *fp > 0.0) {
        bracketed = true;
        break;
      }
    }
  }
  if (bracketed) {
    double lo = 0.0;
    for (std::size_t k = 0; k < opt.max_bisections && hi - lo > opt.alpha_tol; ++k) {
      const double mid = 0.5 * (lo + hi);
      const auto fp = f_prime(line, mid);
      if (fp && *fp <= 0.0)
        lo = mid;
      else
        hi = mid;
    }
    alpha = lo;
    next = try_alpha(alpha);
  }
  if (!next) {
    branch = LineSearchBranch::DampedNewton;
    alpha = -fp0 / ((1.0 + lambda) * fpp0);
    next = try_alpha(alpha);
  }
  if (!next) throw StalledCorrector("corrector cannot decrease the barrier");

  const double f1 = barrier_F(*next);
  return {std::move(*next), alpha, f0, f1, lambda, delta, branch, std::move(dir)};
}

struct CorrectorLoopResult {
  Iterate iterate;
  std::size_t steps = 0;
  std::vector<CorrectorStepResult> history;
};

/// Corrector steps until delta(z) <= beta. Raises CorrectorBudgetExceeded after
/// 10x the theoretical step bound for tau.
inline CorrectorLoopResult corrector_loop(
    const Iterate& start, const LcpProblem& p, double beta, double tau,
    bool keep_history = true, const CorrectorOptions& opt = {}) {
  const std::size_t cap = 10 * corrector_step_bound(tau, beta);
  CorrectorLoopResult out{start, 0, {}};
  while (proximities(out.iterate).delta > beta) {
    if (out.steps >= cap)
      throw CorrectorBudgetExceeded("corrector exceeded " + std::to_string(cap) +
                                    " steps");
    CorrectorStepResult step = corrector_step(out.iterate, p, opt);
    out.iterate = step.iterate;
    ++out.steps;
    if (keep_history) out.history.push_back(std::move(step));
  }
  return out;
}

}  // namespace ptslcp
