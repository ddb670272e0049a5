#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "ptslcp/ptslcp.hpp"

namespace ptslcp::testing {

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

/// Off-centre interior iterate on a generated instance: (x, s) is the
/// instance's feasible pair and w is chosen so that the scaled residuals are
/// log-normal with log-spread `spread` before normalisation.
struct RandomState {
  GeneratedInstance inst;
  Iterate z;
};

inline RandomState random_state(std::size_t n, std::uint64_t seed,
                                double spread = 0.5) {
  GeneratedInstance inst = generate_random({n, 10.0, seed});
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> g(0.0, spread);
  const Vector& x = inst.start.x;
  const Vector& s = inst.start.s;
  Vector t(n + 1);
  for (auto& ti : t) ti = std::exp(g(rng));
  // Scale so that every v_i^2 = x_i s_i - c t_i stays strictly positive.
  double c = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) c = std::min(c, x[i] * s[i] / t[i + 1]);
  c *= 0.9;
  TargetPoint w{dot(x, s) + c * t[0], Vector(n)};
  for (std::size_t i = 0; i < n; ++i) w.v[i] = std::sqrt(x[i] * s[i] - c * t[i + 1]);
  Iterate z(x, s, w);
  return {std::move(inst), std::move(z)};
}

}  // namespace ptslcp::testing
