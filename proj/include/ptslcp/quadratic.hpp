#pragma once

#include <cmath>
#include <limits>

namespace ptslcp {

/// Smallest root t > 0 of c0 + c1 t + c2 t^2, or +inf if the quadratic stays
/// positive on (0, inf). Assumes c0 > 0. Uses the cancellation-free pairing
/// of q / c2 and c0 / q.
inline double first_positive_root(double c0, double c1, double c2) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (c2 == 0.0) return c1 < 0.0 ? -c0 / c1 : inf;
  const double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc < 0.0) return inf;
  const double root = std::sqrt(disc);
  const double q = -0.5 * (c1 + std::copysign(root, c1));
  double best = inf;
  if (q != 0.0) {
    const double t1 = q / c2;
    const double t2 = c0 / q;
    if (t1 > 0.0) best = std::min(best, t1);
    if (t2 > 0.0) best = std::min(best, t2);
  }
  return best;
}

}  // namespace ptslcp
