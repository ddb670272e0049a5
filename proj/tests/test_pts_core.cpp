#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

using namespace ptslcp;
using ptslcp::testing::random_state;
using ptslcp::testing::rel_err;

TEST(Omega, Values) {
  EXPECT_EQ(omega(0.0), 0.0);
  EXPECT_EQ(omega_star(0.0), 0.0);
  EXPECT_NEAR(omega(1.0), 1.0 - std::log(2.0), 1e-15);
  EXPECT_NEAR(omega(1.0), 0.306853, 1e-6);
  EXPECT_NEAR(omega_star(2.0 / 3.0), std::log(3.0) - 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(omega_star(2.0 / 3.0), 0.431946, 1e-6);
  EXPECT_THROW(omega(-0.1), DomainError);
  EXPECT_THROW(omega_star(1.0), DomainError);
  EXPECT_THROW(omega_star(-0.1), DomainError);
}

TEST(Lift, WorkedExample) {
  const Vector x{1, 2}, s{3, 1};
  const TargetPoint w = lift_start(x, s);
  EXPECT_DOUBLE_EQ(w.v0, 7.0);
  EXPECT_DOUBLE_EQ(w.v[0], 1.0);
  EXPECT_DOUBLE_EQ(w.v[1], 0.0);
  const Iterate z(x, s, w);
  EXPECT_DOUBLE_EQ(z.rho(), 2.0);
  EXPECT_EQ(z.r(), (Vector{2, 2, 2}));
  const auto res = residuals(x, s, w);
  EXPECT_EQ(res.r_hat, (Vector{1, 1, 1}));
  const auto p = proximities(z);
  EXPECT_EQ(p.delta, 0.0);
  EXPECT_NEAR(p.psi, 0.0, 1e-15);
  EXPECT_NEAR(barrier_F(z), -3.0 * std::log(2.0), 1e-14);
  EXPECT_NEAR(control_phi(w), -3.0 * std::log(2.0), 1e-14);
}

TEST(Lift, SymmetricCase) {
  for (std::size_t n : {1u, 3u, 10u}) {
    const TargetPoint w = lift_start(Vector(n, 1.0), Vector(n, 1.0));
    EXPECT_DOUBLE_EQ(w.v0, static_cast<double>(n + 1));
    EXPECT_DOUBLE_EQ(w.v_norm2(), 0.0);
    EXPECT_DOUBLE_EQ(w.rho(), 1.0);
    EXPECT_DOUBLE_EQ(control_phi(w), 0.0);
  }
}

TEST(Lift, GapIdentityAndCentrality) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 7;
    Vector x(n), s(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = u(rng);
      s[i] = u(rng);
    }
    const TargetPoint w = lift_start(x, s);
    const double xi = min_entry(hadamard(x, s));
    EXPECT_LE(rel_err(w.v0 - w.v_norm2(), static_cast<double>(n + 1) * xi), 1e-12);
    const Iterate z(x, s, w);
    const auto p = proximities(z);
    EXPECT_LE(p.delta, 1e-10);
    EXPECT_LE(std::abs(p.psi), 1e-10);
  }
}

TEST(Lift, RejectsNonPositive) {
  EXPECT_THROW(lift_start(Vector{1, 0}, Vector{1, 1}), NonPositiveInput);
  EXPECT_THROW(lift_start(Vector{1, 1}, Vector{-1, 1}), NonPositiveInput);
}

TEST(Residuals, BoundaryRejected) {
  const Vector x{1, 2}, s{3, 1};
  try {
    residuals(x, s, TargetPoint{5.0, Vector{0, 0}});
    FAIL() << "expected NotInteriorPoint";
  } catch (const NotInteriorPoint& e) {
    EXPECT_EQ(e.index(), 0u);
  }
  try {
    residuals(x, s, TargetPoint{9.0, Vector{0, std::sqrt(2.0) * 1.01}});
    FAIL() << "expected NotInteriorPoint";
  } catch (const NotInteriorPoint& e) {
    EXPECT_EQ(e.index(), 2u);
  }
}

TEST(Proximities, WorkedExample) {
  const auto p = proximities_from_scaled(Vector{1.5, 1.0, 0.5});
  EXPECT_NEAR(p.zeta0 * p.zeta0, 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(p.zeta1, std::sqrt(10.0) / 3.0, 1e-14);
  EXPECT_NEAR(p.zeta1, 1.054093, 1e-6);
  EXPECT_NEAR(p.zeta2, std::sqrt(0.5), 1e-14);
  EXPECT_NEAR(p.delta, 0.632456, 1e-6);
  EXPECT_NEAR(p.psi, -(std::log(1.5) + std::log(0.5)), 1e-14);
  EXPECT_NEAR(p.psi, 0.287682, 1e-6);
}

TEST(Proximities, CenterIsZero) {
  const auto p = proximities_from_scaled(Vector(4, 1.0));
  EXPECT_EQ(p.zeta0, 0.0);
  EXPECT_EQ(p.zeta1, 0.0);
  EXPECT_EQ(p.zeta2, 0.0);
  EXPECT_EQ(p.delta, 0.0);
  EXPECT_EQ(p.psi, 0.0);
}

TEST(Merit, WorkedExample) {
  const TargetPoint w{7.0, Vector{1, 0}};
  EXPECT_DOUBLE_EQ(alpha_under(w), 7.0);
  EXPECT_NEAR(merit_mu_star(w), 49.0 / 6.0, 1e-14);
  const TargetPoint w0{3.0, Vector{0, 0}};
  EXPECT_TRUE(std::isinf(alpha_under(w0)));
  EXPECT_DOUBLE_EQ(merit_mu_star(w0), 3.0);
}

TEST(Iterate, ScaledTargetAndRecomputation) {
  const auto st = random_state(5, 2);
  const auto res = residuals(st.z.x(), st.z.s(), st.z.w());
  for (std::size_t i = 0; i <= 5; ++i) EXPECT_LE(rel_err(res.r[i], st.z.r()[i]), 1e-12);
  const TargetPoint half = st.z.w().scaled(0.5);
  EXPECT_DOUBLE_EQ(half.v0, 0.5 * st.z.w().v0);
  EXPECT_DOUBLE_EQ(half.v[3], 0.5 * st.z.w().v[3]);
}

// Property tests over random interior iterates.
class CoreIdentities : public ::testing::TestWithParam<std::size_t> {};

TEST_P(CoreIdentities, HoldOnRandomIterates) {
  const std::size_t n = GetParam();
  for (std::uint64_t seed = 0; seed < 70; ++seed) {
    const auto st = random_state(n, seed, 0.2 + 0.79 * (seed % 10) / 10.0);
    const Iterate& z = st.z;
    const Vector t = z.r_hat_squared();
    EXPECT_LE(rel_err(sum(t), static_cast<double>(n + 1)), 1e-9);

    const auto p = proximities(z);
    EXPECT_GE(p.psi, -1e-12);
    EXPECT_LE(std::abs(barrier_F(z) - control_phi(z.w()) - p.psi),
              1e-9 * std::max(1.0, std::abs(barrier_F(z))));
    if (p.zeta1 > 0.0) EXPECT_LE(rel_err(p.delta, p.zeta0 * p.zeta0 / p.zeta1), 1e-12);

    const double mu = merit_mu_star(z.w());
    EXPECT_GE(mu, z.w().v0);
    EXPECT_GE(z.w().v0, z.w().v_norm2());
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, CoreIdentities, ::testing::Values(2u, 8u, 32u));

TEST(Proximities, TightNeighbourhoodBoundsScaledResiduals) {
  // Points with delta <= beta keep every scaled residual in
  // [1 - beta, 1 / (1 - beta)].
  const double beta = 0.25;
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  int accepted = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    const std::size_t n = 2 + trial % 9;
    Vector t(n + 1);
    for (auto& ti : t) ti = std::exp(u(rng) * (trial % 4 + 1) / 4.0);
    const double scale = static_cast<double>(n + 1) / sum(t);
    for (auto& ti : t) ti *= scale;
    const auto p = proximities_from_scaled(t);
    if (p.delta > beta) continue;
    ++accepted;
    for (double ti : t) {
      EXPECT_GE(ti, 1.0 - beta - 1e-12);
      EXPECT_LE(ti, 1.0 / (1.0 - beta) + 1e-12);
    }
  }
  EXPECT_GT(accepted, 100);
}
