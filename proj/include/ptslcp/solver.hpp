#pragma once

// Predictor-corrector driver in the parabolic target space. Starts from the
// central lift of a strictly feasible pair, alternates one predictor step
// (w <- (1 - alpha) w) with corrector steps at fixed w until v0 <= eps.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptslcp/corrector.hpp"
#include "ptslcp/directions.hpp"
#include "ptslcp/error.hpp"
#include "ptslcp/predictor.hpp"
#include "ptslcp/problem.hpp"
#include "ptslcp/pts_core.hpp"

namespace ptslcp {

/// tau = omega_*(2 beta / (1 - beta)), the neighbourhood size the complexity
/// bounds are stated for.
inline double theory_tau(double beta) {
  return omega_star(2.0 * beta / (1.0 - beta));
}

/// ceil(4 sqrt(n) ln(mu*(w0) / eps)), 0 when mu*(w0) <= eps.
inline std::size_t outer_iteration_bound(std::size_t n, double mu_star0,
                                         double eps) {
  if (mu_star0 <= eps) return 0;
  return static_cast<std::size_t>(
      std::ceil(4.0 * std::sqrt(static_cast<double>(n)) * std::log(mu_star0 / eps)));
}

struct SolverConfig {
  double beta = 0.25;
  std::optional<double> tau;  // unset: theory_tau(beta)
  double eps = 1e-7;
  DirectionKind direction = DirectionKind::AutoCorrector;
  std::size_t max_outer = 0;  // 0: twice the outer iteration bound
  bool audit = false;

  double effective_tau() const { return tau ? *tau : theory_tau(beta); }
  bool theory_regime() const {
    return effective_tau() >= theory_tau(beta) * (1.0 - 1e-12);
  }
};

enum class Termination { Converged, BudgetExceeded, NumericalFailure };

inline std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::BudgetExceeded: return "budget_exceeded";
    case Termination::NumericalFailure: return "numerical_failure";
  }
  return "?";
}

struct CorrectorRecord {
  double delta_before = 0.0;
  double f_before = 0.0;
  double f_after = 0.0;
  double alpha = 0.0;
  double lambda = 0.0;
  LineSearchBranch branch = LineSearchBranch::ExactLineSearch;
};

struct OuterRecord {
  // State at predictor entry.
  double v0_before = 0.0;
  double mu_star_before = 0.0;
  double xts_before = 0.0;
  double delta_before_pred = 0.0;
  DirectionBoundsReport predictor_bounds;
  double alpha_lower_bound = 0.0;
  // Predictor.
  double alpha_p = 0.0;
  double psi_after_pred = 0.0;
  // Corrector stage and state after it.
  std::size_t corrector_steps = 0;
  std::vector<CorrectorRecord> correctors;
  double delta_after_corr = 0.0;
  double v0 = 0.0;
  double mu_star = 0.0;
  double xts = 0.0;
  double feasibility_drift = 0.0;
  std::vector<std::uint8_t> in_b;  // x_i >= s_i
};

struct SolveTrace {
  std::vector<OuterRecord> records;
  std::size_t predictor_count = 0;
  std::size_t corrector_count = 0;
  Termination termination = Termination::NumericalFailure;
  std::string message;

  double v0_initial = 0.0;
  double mu_star_initial = 0.0;
  double xts_initial = 0.0;
  double feasibility_initial = 0.0;
  std::size_t outer_bound = 0;      // ceil(4 sqrt(n) ln(mu*(w0)/eps))
  std::size_t corrector_bound = 0;  // per outer iteration
  std::size_t direction_checks = 0;
  std::size_t direction_check_failures = 0;
  std::vector<std::string> audit_failures;
};

struct SolveResult {
  Iterate final_iterate;
  SolveTrace trace;

  const Vector& x() const { return final_iterate.x(); }
  const Vector& s() const { return final_iterate.s(); }
  bool converged() const { return trace.termination == Termination::Converged; }
};

/// Invoked for every Newton direction the solver computes, with the iterate it
/// was computed at.
using DirectionObserver =
    std::function<void(const Iterate&, const SearchDirection&)>;

/// Central lift of a strictly feasible start: delta = psi = 0.
inline Iterate initial_iterate(const LcpProblem& p, const FeasiblePair& start) {
  if (start.x.size() != p.n() || start.s.size() != p.n())
    throw DimensionMismatch("initial_iterate: start has wrong dimension");
  TargetPoint w = lift_start(start.x, start.s);
  const double drift = feasibility_residual(p, start.x, start.s);
  if (drift > 1e-9 * (1.0 + norm_inf(p.q)))
    throw DomainError("initial_iterate: start violates -M x + s = q by " +
                      std::to_string(drift));
  return Iterate(start.x, start.s, std::move(w));
}

inline SolveResult solve(const LcpProblem& p, const FeasiblePair& start,
                         const SolverConfig& cfg,
                         const DirectionObserver& observer = {}) {
  if (!(cfg.beta > 0.0) || !(cfg.beta < 1.0 / 3.0))
    throw DomainError("solve: beta must lie in (0, 1/3)");
  if (!(cfg.eps > 0.0)) throw DomainError("solve: eps must be positive");
  if (cfg.direction == DirectionKind::Corrector)
    throw DomainError("solve: predictor direction must be ut or ac");
  const double tau = cfg.effective_tau();
  if (!(tau > 0.0)) throw DomainError("solve: tau must be positive");

  SolveResult res{initial_iterate(p, start), {}};
  SolveTrace& tr = res.trace;
  const std::size_t n = p.n();
  const double feas_scale = 1.0 + norm_inf(p.q);
  const double min_corrector_decrease =
      omega(cfg.beta / std::sqrt(1.0 + 2.0 * cfg.beta));

  tr.v0_initial = res.final_iterate.w().v0;
  tr.mu_star_initial = merit_mu_star(res.final_iterate.w());
  tr.xts_initial = res.final_iterate.xts();
  tr.feasibility_initial = feasibility_residual(p, start.x, start.s);
  tr.outer_bound = outer_iteration_bound(n, tr.mu_star_initial, cfg.eps);
  tr.corrector_bound = corrector_step_bound(tau, cfg.beta);
  const std::size_t max_outer =
      cfg.max_outer ? cfg.max_outer : std::max<std::size_t>(2 * tr.outer_bound, 1);

  auto audit_fail = [&](const std::string& msg) {
    tr.audit_failures.push_back("outer " + std::to_string(tr.records.size()) +
                                ": " + msg);
    if (cfg.audit) throw AuditViolation(tr.audit_failures.back());
  };
  auto check_direction = [&](const Iterate& z, const SearchDirection& dir) {
    if (observer) observer(z, dir);
    const auto rep = direction_bounds_check(dir, z);
    ++tr.direction_checks;
    if (!rep.all_ok()) {
      ++tr.direction_check_failures;
      audit_fail("direction product bounds violated (" +
                 std::string(to_string(dir.kind)) + ")");
    }
    return rep;
  };

  Iterate& z = res.final_iterate;
  bool failed = false;
  while (z.w().v0 > cfg.eps) {
    if (tr.records.size() >= max_outer) {
      tr.termination = Termination::BudgetExceeded;
      tr.message = "outer iteration budget " + std::to_string(max_outer) +
                   " exhausted";
      failed = true;
      break;
    }
    OuterRecord rec;
    try {
      rec.v0_before = z.w().v0;
      rec.mu_star_before = merit_mu_star(z.w());
      rec.xts_before = z.xts();
      rec.delta_before_pred = proximities(z).delta;
      if (rec.delta_before_pred > cfg.beta)
        audit_fail("delta " + std::to_string(rec.delta_before_pred) +
                   " > beta at predictor entry");

      const SearchDirection dir =
          solve_newton(p, z, rhs_for(cfg.direction, z), cfg.direction);
      rec.predictor_bounds = check_direction(z, dir);
      rec.alpha_lower_bound = predictor_step_lower_bound(z.w(), cfg.beta);

      PredictorResult pred = predictor_step(z, dir, tau);
      rec.alpha_p = pred.alpha_p;
      rec.psi_after_pred = pred.psi_at_alpha;
      ++tr.predictor_count;
      if (rec.psi_after_pred > tau + 1e-8)
        audit_fail("psi " + std::to_string(rec.psi_after_pred) +
                   " > tau after predictor");
      if (cfg.theory_regime() && !(rec.alpha_p >= rec.alpha_lower_bound))
        audit_fail("predictor step " + std::to_string(rec.alpha_p) +
                   " below guaranteed " + std::to_string(rec.alpha_lower_bound));

      CorrectorLoopResult corr =
          corrector_loop(pred.new_iterate, p, cfg.beta, tau);
      const Iterate* at = &pred.new_iterate;
      for (const auto& step : corr.history) {
        check_direction(*at, step.direction);
        at = &step.iterate;
        rec.correctors.push_back({step.delta_before, step.f_before, step.f_after,
                                  step.alpha, step.lambda, step.branch});
        if (step.delta_before >= cfg.beta &&
            step.f_before - step.f_after < min_corrector_decrease - 1e-9)
          audit_fail("corrector decrease " +
                     std::to_string(step.f_before - step.f_after) +
                     " below guaranteed " + std::to_string(min_corrector_decrease));
      }
      rec.corrector_steps = corr.steps;
      tr.corrector_count += corr.steps;
      if (corr.steps > tr.corrector_bound)
        audit_fail(std::to_string(corr.steps) + " corrector steps exceed bound " +
                   std::to_string(tr.corrector_bound));

      z = std::move(corr.iterate);
      rec.delta_after_corr = proximities(z).delta;
      rec.v0 = z.w().v0;
      rec.mu_star = merit_mu_star(z.w());
      rec.xts = z.xts();
      rec.feasibility_drift = feasibility_residual(p, z.x(), z.s());
      rec.in_b.resize(n);
      for (std::size_t i = 0; i < n; ++i) rec.in_b[i] = z.x()[i] >= z.s()[i];

      if (!(rec.v0 < rec.v0_before)) audit_fail("v0 did not decrease");
      if (!(rec.mu_star < rec.mu_star_before)) audit_fail("mu* did not decrease");
      if (rec.feasibility_drift > 1e-8 * feas_scale)
        audit_fail("affine feasibility drift " +
                   std::to_string(rec.feasibility_drift));
    } catch (const AuditViolation&) {
      throw;
    } catch (const Error& e) {
      tr.termination = Termination::NumericalFailure;
      tr.message = e.what();
      failed = true;
      break;
    }
    tr.records.push_back(std::move(rec));
  }

  if (!failed) {
    tr.termination = Termination::Converged;
    if (cfg.theory_regime() && std::abs(cfg.beta - 0.25) < 1e-12 &&
        tr.predictor_count > tr.outer_bound)
      audit_fail("predictor count " + std::to_string(tr.predictor_count) +
                 " exceeds bound " + std::to_string(tr.outer_bound));
  }
  return res;
}

}  // namespace ptslcp
