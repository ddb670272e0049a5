#pragma once

#include <cmath>
#include <string_view>

#include "ptslcp/error.hpp"
#include "ptslcp/linalg.hpp"
#include "ptslcp/problem.hpp"
#include "ptslcp/pts_core.hpp"

namespace ptslcp {

enum class DirectionKind { Corrector, UniversalTangent, AutoCorrector };

inline std::string_view to_string(DirectionKind k) {
  switch (k) {
    case DirectionKind::Corrector: return "corrector";
    case DirectionKind::UniversalTangent: return "ut";
    case DirectionKind::AutoCorrector: return "ac";
  }
  return "?";
}

/// Solution of -M dx + ds = 0, S dx + X ds = a.
struct SearchDirection {
  Vector dx;
  Vector ds;
  Vector a;
  DirectionKind kind = DirectionKind::Corrector;
};

/// a_c = rho e - x s + v^2, i.e. rho - r_i for i = 1..n.
inline Vector rhs_corrector(const Iterate& z) {
  Vector a(z.n());
  for (std::size_t i = 0; i < z.n(); ++i) a[i] = z.rho() - z.r()[i + 1];
  return a;
}

/// a_ut = (||v||^2/(n+1) - rho) e - 2 v^2
inline Vector rhs_universal_tangent(const Iterate& z) {
  const auto& v = z.w().v;
  const double shift = z.w().v_norm2() / static_cast<double>(z.n() + 1) - z.rho();
  Vector a(z.n());
  for (std::size_t i = 0; i < z.n(); ++i) a[i] = shift - 2.0 * v[i] * v[i];
  return a;
}

/// a_ac = a_ut + a_c = (||v||^2/(n+1)) e - v^2 - x s
inline Vector rhs_auto_corrector(const Iterate& z) {
  const auto& v = z.w().v;
  const double shift = z.w().v_norm2() / static_cast<double>(z.n() + 1);
  Vector a(z.n());
  for (std::size_t i = 0; i < z.n(); ++i)
    a[i] = shift - v[i] * v[i] - z.x()[i] * z.s()[i];
  return a;
}

inline Vector rhs_for(DirectionKind kind, const Iterate& z) {
  switch (kind) {
    case DirectionKind::Corrector: return rhs_corrector(z);
    case DirectionKind::UniversalTangent: return rhs_universal_tangent(z);
    case DirectionKind::AutoCorrector: return rhs_auto_corrector(z);
  }
  return rhs_corrector(z);
}

/// Eliminates ds = M dx and solves (S + X M) dx = a by LU with partial
/// pivoting. The matrix is rebuilt at every call.
inline SearchDirection solve_newton(const LcpProblem& p, const Iterate& z,
                                    const Vector& a,
                                    DirectionKind kind = DirectionKind::Corrector) {
  const std::size_t n = z.n();
  if (p.n() != n || a.size() != n)
    throw DimensionMismatch("solve_newton: dimensions do not match");
  if (!a.all_finite()) throw DomainError("solve_newton: rhs is not finite");

  DenseMatrix newton(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = z.x()[i];
    for (std::size_t j = 0; j < n; ++j) newton(i, j) = xi * p.M(i, j);
    newton(i, i) += z.s()[i];
  }
  LuFactors lu;
  try {
    lu = lu_factor(newton);
  } catch (const SingularMatrix& e) {
    throw SingularNewtonMatrix(e.what());
  }
  SearchDirection dir{solve(lu, a), Vector(), a, kind};
  dir.ds = p.M * dir.dx;
  return dir;
}

/// Margins of the four product bounds on dx ds for a direction with rhs a,
/// each stated against q = ||a / sqrt(x s)||^2:
///   ||dx ds||_inf <= q/4, ||dx ds||_1 <= q/2,
///   ||dx ds||_2 <= q/(2 sqrt 2), dx^T ds <= q/4.
struct DirectionBoundsReport {
  double scaled_rhs = 0.0;  // q
  double inf_norm = 0.0;
  double one_norm = 0.0;
  double two_norm = 0.0;
  double inner = 0.0;
  bool inf_ok = false;
  bool one_ok = false;
  bool two_ok = false;
  bool inner_ok = false;

  bool all_ok() const { return inf_ok && one_ok && two_ok && inner_ok; }
};

inline DirectionBoundsReport direction_bounds_check(const SearchDirection& dir,
                                                    const Iterate& z,
                                                    double rel_tol = 1e-9) {
  DirectionBoundsReport rep;
  const std::size_t n = z.n();
  for (std::size_t i = 0; i < n; ++i)
    rep.scaled_rhs += dir.a[i] * dir.a[i] / (z.x()[i] * z.s()[i]);
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double prod = dir.dx[i] * dir.ds[i];
    rep.inf_norm = std::max(rep.inf_norm, std::abs(prod));
    rep.one_norm += std::abs(prod);
    sq += prod * prod;
    rep.inner += prod;
  }
  rep.two_norm = std::sqrt(sq);
  const double q = rep.scaled_rhs;
  auto within = [rel_tol](double lhs, double rhs) {
    return lhs <= rhs * (1.0 + rel_tol);
  };
  rep.inf_ok = within(rep.inf_norm, q / 4.0);
  rep.one_ok = within(rep.one_norm, q / 2.0);
  rep.two_ok = within(rep.two_norm, q / (2.0 * std::sqrt(2.0)));
  rep.inner_ok = within(rep.inner, q / 4.0);
  return rep;
}

}  // namespace ptslcp
