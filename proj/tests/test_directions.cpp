#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

using namespace ptslcp;
using ptslcp::testing::random_state;

namespace {

Iterate worked_center() {
  const Vector x{1, 2}, s{3, 1};
  return Iterate(x, s, lift_start(x, s));
}

}  // namespace

TEST(Rhs, CorrectorVanishesAtCenter) {
  const Vector a = rhs_corrector(worked_center());
  EXPECT_NEAR(norm_inf(a), 0.0, 1e-15);
}

TEST(Rhs, CorrectorWorkedExample) {
  const Iterate z(Vector{1, 2}, Vector{3, 1}, TargetPoint{7.0, Vector{1.2, 0}});
  EXPECT_NEAR(z.r()[1], 1.56, 1e-14);
  EXPECT_NEAR(z.rho(), (7.0 - 1.44) / 3.0, 1e-14);
  const Vector a = rhs_corrector(z);
  EXPECT_NEAR(a[0], 0.293333, 1e-6);
  EXPECT_NEAR(a[1], -0.146667, 1e-6);
}

TEST(Rhs, UniversalTangentWorkedExample) {
  const Iterate z = worked_center();
  const Vector a = rhs_universal_tangent(z);
  EXPECT_NEAR(a[0], -11.0 / 3.0, 1e-14);
  EXPECT_NEAR(a[1], -5.0 / 3.0, 1e-14);
  // At a centred point both forms agree: (v0/(n+1)) e - 2 x s.
  const Vector xs = hadamard(z.x(), z.s());
  for (std::size_t i = 0; i < 2; ++i)
    EXPECT_NEAR(a[i], 7.0 / 3.0 - 2.0 * xs[i], 1e-14);
  const Vector ac = rhs_auto_corrector(z);
  EXPECT_NEAR(ac[0], -11.0 / 3.0, 1e-14);
  EXPECT_NEAR(ac[1], -5.0 / 3.0, 1e-14);
}

TEST(Rhs, ZeroV) {
  const Iterate z(Vector{1, 1, 1}, Vector{2, 2, 2}, TargetPoint{8.0, Vector(3)});
  const Vector a = rhs_universal_tangent(z);
  for (double ai : a) EXPECT_NEAR(ai, -2.0, 1e-14);  // -rho = -v0/(n+1)
  const Vector ac = rhs_auto_corrector(z);
  for (double ai : ac) EXPECT_NEAR(ai, -2.0, 1e-14);  // -mu with x s = 2 e
}

TEST(Rhs, SummationIdentitiesAndAutoCorrectorSplit) {
  for (std::size_t n : {2u, 8u, 32u}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto st = random_state(n, seed);
      const Iterate& z = st.z;
      const double nn = static_cast<double>(n);
      const double vn2 = z.w().v_norm2();
      const Vector ac = rhs_corrector(z), aut = rhs_universal_tangent(z);
      EXPECT_NEAR(sum(ac), nn * z.rho() - z.xts() + vn2, 1e-10 * (1 + z.xts()));
      EXPECT_NEAR(sum(aut), nn * vn2 / (nn + 1) - nn * z.rho() - 2.0 * vn2,
                  1e-10 * (1 + z.xts()));
      const Vector direct = rhs_auto_corrector(z);
      const Vector split = axpy(aut, 1.0, ac);
      EXPECT_LE(norm_inf(axpy(split, -1.0, direct)), 1e-12 * (1 + norm_inf(direct)));
      EXPECT_EQ(rhs_for(DirectionKind::Corrector, z), ac);
      EXPECT_EQ(rhs_for(DirectionKind::UniversalTangent, z), aut);
      EXPECT_EQ(rhs_for(DirectionKind::AutoCorrector, z), direct);
    }
  }
}

TEST(Newton, ScalarWorkedExample) {
  const LcpProblem p{DenseMatrix(1, {2.0}), Vector{1.0}};
  const Iterate z(Vector{1.0}, Vector{3.0}, TargetPoint{10.0, Vector{1.0}});
  const auto d = solve_newton(p, z, Vector{1.0}, DirectionKind::Corrector);
  EXPECT_NEAR(d.dx[0], 0.2, 1e-15);
  EXPECT_NEAR(d.ds[0], 0.4, 1e-15);
  EXPECT_NEAR(3.0 * d.dx[0] + 1.0 * d.ds[0], 1.0, 1e-15);
}

TEST(Newton, ZeroRhsGivesZeroDirection) {
  const auto st = random_state(6, 1);
  const auto d = solve_newton(st.inst.problem, st.z, Vector(6), DirectionKind::Corrector);
  EXPECT_EQ(norm_inf(d.dx), 0.0);
  EXPECT_EQ(norm_inf(d.ds), 0.0);
  const auto rep = direction_bounds_check(d, st.z);
  EXPECT_TRUE(rep.all_ok());
}

TEST(Newton, BlocksAndMonotonicity) {
  for (std::size_t n : {2u, 8u, 32u}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto st = random_state(n, seed);
      const auto& p = st.inst.problem;
      for (auto kind : {DirectionKind::Corrector, DirectionKind::UniversalTangent,
                        DirectionKind::AutoCorrector}) {
        const auto d = solve_newton(p, st.z, rhs_for(kind, st.z), kind);
        const double scale = 1.0 + norm_inf(d.a);
        EXPECT_LE(norm_inf(axpy(d.ds, -1.0, p.M * d.dx)), 1e-9 * scale);
        Vector second(n);
        for (std::size_t i = 0; i < n; ++i)
          second[i] = st.z.s()[i] * d.dx[i] + st.z.x()[i] * d.ds[i] - d.a[i];
        EXPECT_LE(norm_inf(second), 1e-9 * scale);
        const double inner = dot(d.dx, d.ds);
        EXPECT_GE(inner, -1e-10 * norm2(d.dx) * norm2(d.ds));
        const double quad = dot(d.dx, p.M * d.dx);
        EXPECT_LE(std::abs(inner - quad), 1e-9 * std::max(std::abs(quad), 1e-300) + 1e-15);
        EXPECT_TRUE(direction_bounds_check(d, st.z).all_ok()) << to_string(kind);
      }
    }
  }
}

TEST(Newton, SkewMatrixGivesOrthogonalSteps) {
  // A = 0, so M = eta (L - L^T) is skew and dx^T ds = dx^T M dx = 0.
  const std::size_t n = 6;
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const double l = 10.0 * (0.1 + 0.13 * static_cast<double>(i + 2 * j));
      m(i, j) = l;
      m(j, i) = -l;
    }
  const Vector x(n, 1.0), s(n, 2.0);
  LcpProblem p{m, axpy(s, -1.0, m * x)};
  TargetPoint w = lift_start(x, s);
  w.v0 *= 1.5;
  const Iterate z(x, s, w);
  const auto d = solve_newton(p, z, rhs_universal_tangent(z), DirectionKind::UniversalTangent);
  EXPECT_LE(std::abs(dot(d.dx, d.ds)), 1e-10 * (1 + norm2(d.dx) * norm2(d.ds)));
  EXPECT_TRUE(direction_bounds_check(d, z).all_ok());
}

TEST(Newton, DimensionMismatch) {
  const auto st = random_state(4, 0);
  EXPECT_THROW(solve_newton(st.inst.problem, st.z, Vector(3), DirectionKind::Corrector),
               DimensionMismatch);
}

TEST(DirectionKind, Names) {
  EXPECT_EQ(to_string(DirectionKind::Corrector), "corrector");
  EXPECT_EQ(to_string(DirectionKind::UniversalTangent), "ut");
  EXPECT_EQ(to_string(DirectionKind::AutoCorrector), "ac");
}
