#pragma once

// Post-hoc local-convergence diagnostics for a converged run on a
// nondegenerate instance: estimated optimal partition (B, N), the scale sigma
// of the solution, kappa = ||M_hat||_inf and the observed v0 tail ratios.

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "ptslcp/directions.hpp"
#include "ptslcp/error.hpp"
#include "ptslcp/linalg.hpp"
#include "ptslcp/problem.hpp"
#include "ptslcp/solver.hpp"

namespace ptslcp {

struct TailPair {
  double v0_k = 0.0;
  double v0_next = 0.0;
  double ratio() const { return v0_next / (v0_k * v0_k); }
};

struct LocalDiagnostics {
  std::vector<std::size_t> partition_b;  // x_i >= s_i at termination
  std::vector<std::size_t> partition_n;
  std::size_t m = 0;
  double sigma = 0.0;
  double kappa = 0.0;
  /// Rows/columns ordered (B, N):
  /// [ M_BB^-1, -M_BB^-1 M_BN ; M_NB M_BB^-1, M_NN - M_NB M_BB^-1 M_BN ].
  DenseMatrix m_hat;
  double nu_d = 0.0;  // max{s_i/x_i (i in B), x_j/s_j (j in N)}
  double nu_a = 0.0;  // ||(X_B^-1 a_B, S_N^-1 a_N)|| for a = a_ac
  double tail_threshold = 0.0;  // sigma^2 / (4 kappa)
  std::vector<TailPair> quad_tail;
  /// Partition identical over the last three outer iterations (or all of
  /// them when fewer were run).
  bool partition_stable = false;
  bool singular_block = false;
};

namespace detail {

inline DenseMatrix submatrix(const DenseMatrix& m,
                             const std::vector<std::size_t>& rows,
                             const std::vector<std::size_t>& cols) {
  DenseMatrix out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

}  // namespace detail

/// Assembles M_hat for the ordering (B, N). Throws SingularBlock when M_BB
/// cannot be factored.
inline DenseMatrix assemble_m_hat(const DenseMatrix& m,
                                  const std::vector<std::size_t>& b,
                                  const std::vector<std::size_t>& nn) {
  const std::size_t mb = b.size(), mn = nn.size(), n = mb + mn;
  DenseMatrix out(n);
  // Columns of M_BB^-1 and of M_BB^-1 M_BN.
  std::vector<Vector> inv_cols, inv_mbn_cols;
  if (mb > 0) {
    LuFactors lu;
    try {
      lu = lu_factor(detail::submatrix(m, b, b));
    } catch (const SingularMatrix& e) {
      throw SingularBlock(std::string("M_BB is singular: ") + e.what());
    }
    for (std::size_t j = 0; j < mb; ++j) {
      Vector e(mb);
      e[j] = 1.0;
      inv_cols.push_back(solve(lu, e));
    }
    for (std::size_t j = 0; j < mn; ++j) {
      Vector col(mb);
      for (std::size_t i = 0; i < mb; ++i) col[i] = m(b[i], nn[j]);
      inv_mbn_cols.push_back(solve(lu, col));
    }
  }
  for (std::size_t i = 0; i < mb; ++i) {
    for (std::size_t j = 0; j < mb; ++j) out(i, j) = inv_cols[j][i];
    for (std::size_t j = 0; j < mn; ++j) out(i, mb + j) = -inv_mbn_cols[j][i];
  }
  for (std::size_t i = 0; i < mn; ++i) {
    for (std::size_t j = 0; j < mb; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < mb; ++k) acc += m(nn[i], b[k]) * inv_cols[j][k];
      out(mb + i, j) = acc;
    }
    for (std::size_t j = 0; j < mn; ++j) {
      double acc = m(nn[i], nn[j]);
      for (std::size_t k = 0; k < mb; ++k)
        acc -= m(nn[i], b[k]) * inv_mbn_cols[j][k];
      out(mb + i, mb + j) = acc;
    }
  }
  return out;
}

inline LocalDiagnostics local_diagnostics(const LcpProblem& p,
                                          const SolveResult& run) {
  const std::size_t n = p.n();
  const Iterate& z = run.final_iterate;
  const auto& x = z.x();
  const auto& s = z.s();
  LocalDiagnostics d;

  for (std::size_t i = 0; i < n; ++i)
    (x[i] >= s[i] ? d.partition_b : d.partition_n).push_back(i);
  d.m = d.partition_b.size();

  d.sigma = std::numeric_limits<double>::infinity();
  for (auto i : d.partition_b) d.sigma = std::min(d.sigma, x[i]);
  for (auto j : d.partition_n) d.sigma = std::min(d.sigma, s[j]);

  const Vector a = rhs_auto_corrector(z);
  double a_sq = 0.0;
  for (auto i : d.partition_b) {
    d.nu_d = std::max(d.nu_d, s[i] / x[i]);
    a_sq += (a[i] / x[i]) * (a[i] / x[i]);
  }
  for (auto j : d.partition_n) {
    d.nu_d = std::max(d.nu_d, x[j] / s[j]);
    a_sq += (a[j] / s[j]) * (a[j] / s[j]);
  }
  d.nu_a = std::sqrt(a_sq);

  const auto& recs = run.trace.records;
  const std::size_t last = std::min<std::size_t>(3, recs.size());
  d.partition_stable = true;
  for (std::size_t k = recs.size() - last; k < recs.size(); ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (recs[k].in_b[i] != (x[i] >= s[i])) d.partition_stable = false;

  try {
    d.m_hat = assemble_m_hat(p.M, d.partition_b, d.partition_n);
  } catch (const SingularBlock&) {
    d.singular_block = true;
    d.kappa = std::numeric_limits<double>::infinity();
    return d;
  }
  d.kappa = d.m_hat.norm_inf();
  d.tail_threshold = d.sigma * d.sigma / (4.0 * d.kappa);

  double prev = run.trace.v0_initial;
  for (const auto& r : recs) {
    if (prev <= d.tail_threshold) d.quad_tail.push_back({prev, r.v0});
    prev = r.v0;
  }
  return d;
}

}  // namespace ptslcp
