#include <gtest/gtest.h>

#include <random>

#include "ptslcp/linalg.hpp"
#include "ptslcp/problem.hpp"
#include "ptslcp/pts_core.hpp"
#include "ptslcp/directions.hpp"

using namespace ptslcp;

TEST(Lu, IdentitySolve) {
  const Vector x = solve(DenseMatrix::identity(3), Vector{1, 2, 3});
  EXPECT_EQ(x, (Vector{1, 2, 3}));
}

TEST(Lu, DiagonalSolve) {
  DenseMatrix a(2, {2, 0, 0, 4});
  const Vector x = solve(a, Vector{2, 8});
  EXPECT_DOUBLE_EQ(x[0], 1.0);
  EXPECT_DOUBLE_EQ(x[1], 2.0);
}

TEST(Lu, PermutationSolve) {
  const LuFactors f = lu_factor(DenseMatrix(2, {0, 1, 1, 0}));
  const Vector x = solve(f, Vector{1, 2});
  EXPECT_DOUBLE_EQ(x[0], 2.0);
  EXPECT_DOUBLE_EQ(x[1], 1.0);
  const Vector y = solve(lu_factor(DenseMatrix::identity(2)), Vector{5, 7});
  EXPECT_EQ(y, (Vector{5, 7}));
}

TEST(Lu, RandomDiagonallyShiftedResidual) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    DenseMatrix a(8);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) a(i, j) = u(rng) + (i == j ? 8.0 : 0.0);
    Vector b(8);
    for (auto& bi : b) bi = u(rng) - 0.5;
    const Vector x = solve(a, b);
    const Vector res = axpy(a * x, -1.0, b);
    EXPECT_LE(norm2(res) / norm2(b), 1e-10);
  }
}

TEST(Lu, SingularMatrixThrows) {
  EXPECT_THROW(lu_factor(DenseMatrix(2, {1, 2, 2, 4})), SingularMatrix);
  EXPECT_THROW(lu_factor(DenseMatrix(2)), SingularMatrix);
}

TEST(Lu, DimensionMismatchThrows) {
  const LuFactors f = lu_factor(DenseMatrix::identity(3));
  EXPECT_THROW(solve(f, Vector{1, 2}), DimensionMismatch);
}

TEST(Lu, RowPermutedSystemGivesSameSolution) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t n = 6;
  DenseMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng) + (i == j ? 3.0 : 0.0);
  Vector b(n);
  for (auto& bi : b) bi = u(rng);
  const std::vector<std::size_t> perm{3, 0, 5, 1, 4, 2};
  DenseMatrix pa(n);
  Vector pb(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) pa(i, j) = a(perm[i], j);
    pb[i] = b[perm[i]];
  }
  const Vector x = solve(a, b), y = solve(pa, pb);
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(x[i], y[i], 1e-12);
}

TEST(Lu, NewtonMatrixResidual) {
  const auto inst = generate_random({4, 10.0, 3});
  const auto& x = inst.start.x;
  const auto& s = inst.start.s;
  TargetPoint w = lift_start(x, s);
  w.v0 *= 1.3;  // off-centre so that a_c is nonzero
  const Iterate z(x, s, w);
  const Vector a = rhs_corrector(z);
  DenseMatrix k(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      k(i, j) = x[i] * inst.problem.M(i, j) + (i == j ? s[i] : 0.0);
  const Vector dx = solve(lu_factor(k), a);
  EXPECT_LE(norm2(axpy(k * dx, -1.0, a)), 1e-10 * norm2(a));
}

TEST(Matrix, RejectsNonFinite) {
  EXPECT_THROW(DenseMatrix(1, {std::nan("")}), DomainError);
  EXPECT_THROW(DenseMatrix(2, {1, 2, 3}), DimensionMismatch);
}

TEST(Matrix, NormsAndProducts) {
  DenseMatrix a(2, {1, -2, 3, 4});
  EXPECT_DOUBLE_EQ(a.norm_inf(), 7.0);
  EXPECT_DOUBLE_EQ(a.max_abs(), 4.0);
  const DenseMatrix t = a.transposed();
  EXPECT_DOUBLE_EQ(t(0, 1), 3.0);
  const Vector y = a * Vector{1, 1};
  EXPECT_EQ(y, (Vector{-1, 7}));
  const DenseMatrix p = a * DenseMatrix::identity(2);
  EXPECT_EQ(p.row_major(), a.row_major());
}

TEST(VectorOps, Basics) {
  const Vector a{1, -2, 3}, b{4, 5, -6};
  EXPECT_DOUBLE_EQ(dot(a, b), 4 - 10 - 18);
  EXPECT_DOUBLE_EQ(norm_inf(a), 3.0);
  EXPECT_DOUBLE_EQ(norm1(a), 6.0);
  EXPECT_DOUBLE_EQ(sum(a), 2.0);
  EXPECT_DOUBLE_EQ(min_entry(b), -6.0);
  EXPECT_EQ(hadamard(a, b), (Vector{4, -10, -18}));
  EXPECT_EQ(axpy(a, 2.0, b), (Vector{9, 8, -9}));
  EXPECT_THROW(dot(a, Vector{1, 2}), DimensionMismatch);
}
