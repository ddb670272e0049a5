#pragma once

// Parabolic target space: targets w = (v0, v) with v0 > ||v||^2, lifted
// iterates z = (x, s, w), their residuals and proximity measures.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include "ptslcp/error.hpp"
#include "ptslcp/linalg.hpp"

namespace ptslcp {

/// omega(t) = t - ln(1 + t), t >= 0.
inline double omega(double t) {
  if (!(t >= 0.0)) throw DomainError("omega: t must be >= 0");
  return t - std::log1p(t);
}

/// omega_*(t) = -t - ln(1 - t), t in [0, 1).
inline double omega_star(double t) {
  if (!(t >= 0.0) || !(t < 1.0))
    throw DomainError("omega_star: t must lie in [0, 1)");
  return -t - std::log1p(-t);
}

struct TargetPoint {
  double v0 = 0.0;
  Vector v;

  std::size_t n() const { return v.size(); }
  double v_norm2() const { return norm2_squared(v); }
  /// rho(w) = (v0 - ||v||^2) / (n + 1)
  double rho() const { return (v0 - v_norm2()) / static_cast<double>(n() + 1); }
  bool interior() const { return v0 > v_norm2(); }

  TargetPoint scaled(double factor) const {
    TargetPoint out{v0 * factor, v};
    for (auto& vi : out.v) vi *= factor;
    return out;
  }
};

/// r (length n+1), rho and r_hat = sqrt(r / rho) for a lifted point.
struct Residuals {
  Vector r;
  double rho = 0.0;
  Vector r_hat;
};

/// r_0 = v0 - x^T s, r_i = x_i s_i - v_i^2. Throws NotInteriorPoint for the
/// first nonpositive slot; no epsilon slack is applied.
inline Residuals residuals(const Vector& x, const Vector& s,
                           const TargetPoint& w) {
  require_same_size(x, s, "residuals(x, s)");
  require_same_size(x, w.v, "residuals(x, v)");
  const std::size_t n = x.size();
  Residuals out{Vector(n + 1), w.rho(), Vector(n + 1)};
  out.r[0] = w.v0 - dot(x, s);
  for (std::size_t i = 0; i < n; ++i)
    out.r[i + 1] = x[i] * s[i] - w.v[i] * w.v[i];
  for (std::size_t i = 0; i <= n; ++i)
    if (!(out.r[i] > 0.0)) throw NotInteriorPoint(i, out.r[i]);
  if (!(out.rho > 0.0)) throw DomainError("target point is not interior");
  for (std::size_t i = 0; i <= n; ++i)
    out.r_hat[i] = std::sqrt(out.r[i] / out.rho);
  return out;
}

/// Lifted iterate z = (x, s, w) with cached residuals. Construction validates
/// strict interiority, so every Iterate satisfies r > 0.
class Iterate {
 public:
  Iterate(Vector x, Vector s, TargetPoint w)
      : x_(std::move(x)), s_(std::move(s)), w_(std::move(w)) {
    Residuals res = residuals(x_, s_, w_);
    r_ = std::move(res.r);
    rho_ = res.rho;
  }

  std::size_t n() const { return x_.size(); }
  const Vector& x() const { return x_; }
  const Vector& s() const { return s_; }
  const TargetPoint& w() const { return w_; }
  const Vector& r() const { return r_; }
  double rho() const { return rho_; }

  /// r_hat^2 = r / rho, the scaled residuals.
  Vector r_hat_squared() const {
    Vector t(r_.size());
    for (std::size_t i = 0; i < r_.size(); ++i) t[i] = r_[i] / rho_;
    return t;
  }

  double xts() const { return dot(x_, s_); }

 private:
  Vector x_;
  Vector s_;
  TargetPoint w_;
  Vector r_;
  double rho_ = 0.0;
};

struct ProximityReport {
  double zeta0 = 0.0;
  double zeta1 = 0.0;
  double zeta2 = 0.0;
  double delta = 0.0;
  double psi = 0.0;
};

/// Proximity measures of the scaled residuals t = r_hat^2:
/// zeta0^2 = ||r_hat - 1/r_hat||^2, zeta1 = ||1/t - e||, zeta2 = ||t - e||,
/// delta = zeta0^2 / zeta1 (0 when zeta1 = 0), psi = -sum ln t.
inline ProximityReport proximities_from_scaled(const Vector& t) {
  double z0 = 0.0, z1 = 0.0, z2 = 0.0, psi = 0.0;
  for (double ti : t) {
    const double dev = ti - 1.0;
    z0 += dev * dev / ti;
    const double inv_dev = 1.0 / ti - 1.0;
    z1 += inv_dev * inv_dev;
    z2 += dev * dev;
    psi -= std::log(ti);
  }
  ProximityReport rep;
  rep.zeta0 = std::sqrt(z0);
  rep.zeta1 = std::sqrt(z1);
  rep.zeta2 = std::sqrt(z2);
  rep.delta = rep.zeta1 > 0.0 ? z0 / rep.zeta1 : 0.0;
  rep.psi = psi;
  return rep;
}

inline ProximityReport proximities(const Iterate& z) {
  return proximities_from_scaled(z.r_hat_squared());
}

/// F(z) = -sum_{i=0..n} ln r_i(z)
inline double barrier_F(const Iterate& z) {
  double f = 0.0;
  for (double ri : z.r()) f -= std::log(ri);
  return f;
}

/// phi(w) = -(n+1) ln rho(w), the minimum of F over the fibre at w.
inline double control_phi(const TargetPoint& w) {
  const double rho = w.rho();
  if (!(rho > 0.0)) throw NotInteriorPoint(0, rho);
  return -static_cast<double>(w.n() + 1) * std::log(rho);
}

/// Distance coefficient to the boundary of the target space along -w:
/// v0 / ||v||^2, +inf when v = 0.
inline double alpha_under(const TargetPoint& w) {
  const double vn2 = w.v_norm2();
  if (vn2 == 0.0) return std::numeric_limits<double>::infinity();
  return w.v0 / vn2;
}

/// Merit function mu*(w) = v0^2 / (v0 - ||v||^2).
inline double merit_mu_star(const TargetPoint& w) {
  const double gap = w.v0 - w.v_norm2();
  if (!(gap > 0.0)) throw NotInteriorPoint(0, gap);
  return w.v0 * w.v0 / gap;
}

/// Target w(x, s) making (x, s) the central point: with xi = min_i x_i s_i,
/// v = sqrt(x s - xi e) and v0 = x^T s + xi.
inline TargetPoint lift_start(const Vector& x, const Vector& s) {
  require_same_size(x, s, "lift_start");
  if (x.empty()) throw DimensionMismatch("lift_start: empty vectors");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] > 0.0) || !(s[i] > 0.0))
      throw NonPositiveInput("lift_start: x and s must be strictly positive "
                             "(index " + std::to_string(i) + ")");
  const Vector xs = hadamard(x, s);
  const double xi = min_entry(xs);
  TargetPoint w{dot(x, s) + xi, Vector(x.size())};
  for (std::size_t i = 0; i < x.size(); ++i)
    w.v[i] = std::sqrt(std::max(0.0, xs[i] - xi));
  return w;
}

}  // namespace ptslcp
