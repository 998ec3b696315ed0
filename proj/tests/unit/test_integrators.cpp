#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rombox/error.hpp"
#include "rombox/fom.hpp"
#include "rombox/integrators.hpp"

using namespace rombox;

namespace {

LinearMap scalar_map(double lambda) {
  return [lambda](const Vector& in, Vector& out) { out = lambda * in; };
}

Matrix random_skew(Index n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  Matrix m(n, n);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = n01(rng);
  return m - m.transpose();
}

Matrix random_spd(Index n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  Matrix m(n, n);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = n01(rng);
  return m * m.transpose() + Matrix::Identity(n, n) * double(n);
}

}  // namespace

TEST(Rk4, ScalarDecayMatchesStabilityPolynomial) {
  const Vector y = Vector::Ones(1);
  const Vector next = rk4_step(scalar_map(-1.0), y, 0.1);
  const double z = -0.1;
  EXPECT_NEAR(next[0], 1 + z + z * z / 2 + z * z * z / 6 + z * z * z * z / 24, 1e-15);
  EXPECT_NEAR(next[0], 0.9048375, 1e-7);
}

TEST(Rk4, ZeroRhsKeepsState) {
  const Vector y = Vector::LinSpaced(5, -1, 1);
  EXPECT_EQ(rk4_step(scalar_map(0.0), y, 0.3), y);
}

TEST(Rk4, MatrixPolynomialOracle) {
  const Grid1D g = build_grid_1d(16);
  const SparseMatrix d = build_advection_operator_1d(g);
  const double c = 1.3;
  const double dt = 0.05;
  const Matrix a = -c * Matrix(d);
  const Matrix z = dt * a;
  const Matrix id = Matrix::Identity(16, 16);
  const Matrix poly = id + z + z * z / 2.0 + z * z * z / 6.0 + z * z * z * z / 24.0;
  const Vector u = initial_condition_1d(g).values;
  const SparseMatrix rhs = -c * d;
  const Vector stepped = rk4_step(as_linear_map(rhs), u, dt);
  EXPECT_LT((stepped - poly * u).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Rk4, FourthOrderGlobalError) {
  std::vector<double> errors;
  for (double dt : {0.1, 0.05, 0.025}) {
    const Trajectory t = integrate(scalar_map(-1.0), Vector::Ones(1),
                                   IntegratorSpec{Scheme::rk4, dt, 1.0, 1});
    errors.push_back(std::abs(t.states.back()[0] - std::exp(-1.0)));
  }
  for (int k = 0; k < 2; ++k) {
    EXPECT_GT(errors[k] / errors[k + 1], 14.0);
    EXPECT_LT(errors[k] / errors[k + 1], 17.0);
  }
}

TEST(Integrate, SnapshotCounts) {
  const FomModel fom = build_fom_1d(build_grid_1d(100), 1.0);
  const Vector u0 = initial_condition_1d(fom.grid_1d()).values;
  const Trajectory t = integrate(as_linear_map(fom.rhs), u0, IntegratorSpec{Scheme::rk4, 0.01, 5.0, 1});
  EXPECT_EQ(t.times.size(), 501u);
  EXPECT_EQ(t.states.size(), 501u);
  EXPECT_TRUE(t.stable);
  const Trajectory two =
      integrate(as_linear_map(fom.rhs), u0, IntegratorSpec{Scheme::rk4, 0.5, 0.5, 1});
  ASSERT_EQ(two.times.size(), 2u);
  EXPECT_EQ(two.times[0], 0.0);
  EXPECT_EQ(two.times[1], 0.5);
}

TEST(Integrate, TimesAreIntegerMultiples) {
  const Trajectory t = integrate(scalar_map(0.0), Vector::Ones(2),
                                 IntegratorSpec{Scheme::rk4, 0.025, 12.0, 16}, 1.5);
  ASSERT_EQ(t.times.size(), 31u);
  for (std::size_t k = 0; k < t.times.size(); ++k) {
    EXPECT_EQ(t.times[k], 1.5 + double(k * 16) * 0.025);
  }
  for (std::size_t k = 1; k < t.times.size(); ++k) EXPECT_GT(t.times[k], t.times[k - 1]);
}

TEST(Integrate, StepCountValidation) {
  EXPECT_EQ((IntegratorSpec{Scheme::rk4, 0.01, 5.0, 1}.step_count()), 500);
  EXPECT_EQ((IntegratorSpec{Scheme::rk4, 0.1, 0.0, 1}.step_count()), 0);
  EXPECT_THROW((IntegratorSpec{Scheme::rk4, 0.3, 1.0, 1}.step_count()), Error);
  EXPECT_THROW((IntegratorSpec{Scheme::rk4, -0.1, 1.0, 1}.step_count()), Error);
  EXPECT_THROW((IntegratorSpec{Scheme::rk4, 0.1, 1.0, 0}.step_count()), Error);
}

TEST(Integrate, BlowupFlagsUnstableAndStopsEarly) {
  const Trajectory t = integrate(scalar_map(50.0), Vector::Ones(1),
                                 IntegratorSpec{Scheme::rk4, 0.1, 10.0, 1});
  EXPECT_FALSE(t.stable);
  EXPECT_LT(t.times.size(), 101u);
  for (const auto& s : t.states) {
    EXPECT_TRUE(s.allFinite());
    EXPECT_LE(s.cwiseAbs().maxCoeff(), kBlowupFactor);
  }
}

TEST(Integrate, NonFiniteFlagged) {
  Vector bad = Vector::Ones(2);
  bad[1] = std::nan("");
  EXPECT_TRUE(is_unstable(bad, 1.0));
  EXPECT_FALSE(is_unstable(Vector::Ones(2), 1.0));
  EXPECT_TRUE(is_unstable(Vector::Constant(1, 2e6), 1.0));
}

TEST(CrankNicolson, ScalarTrapezoidalUpdate) {
  const auto stepper = crank_nicolson_prepare(Matrix::Identity(1, 1), -Matrix::Identity(1, 1), 0.1);
  const Vector next = stepper.step(Vector::Ones(1));
  EXPECT_NEAR(next[0], 0.95 / 1.05, 1e-15);
  EXPECT_NEAR(next[0], 0.904762, 1e-6);
}

TEST(CrankNicolson, CayleyMapIsOrthogonal) {
  const Matrix k = random_skew(12, 5);
  const auto stepper = crank_nicolson_prepare(Matrix::Identity(12, 12), k, 0.3);
  Vector a = Vector::LinSpaced(12, -2, 3);
  const double n0 = a.norm();
  for (int i = 0; i < 50; ++i) a = stepper.step(a);
  EXPECT_NEAR(a.norm() / n0, 1.0, 1e-12);
}

TEST(CrankNicolson, ConservesGramEnergyPerStep) {
  const Matrix s = random_spd(10, 11);
  const Matrix k = random_skew(10, 12);
  const auto stepper = crank_nicolson_prepare(s, k, 0.2);
  Vector a = Vector::Ones(10);
  const double e0 = 0.5 * a.dot(s * a);
  for (int i = 0; i < 100; ++i) {
    const double before = 0.5 * a.dot(s * a);
    a = stepper.step(a);
    EXPECT_NEAR((0.5 * a.dot(s * a) - before) / e0, 0.0, 1e-12);
  }
}

TEST(CrankNicolson, SmallStepAndZeroOperator) {
  const Matrix k = random_skew(6, 2);
  const Vector a = Vector::LinSpaced(6, 0, 1);
  const auto tiny = crank_nicolson_prepare(Matrix::Identity(6, 6), k, 1e-12);
  EXPECT_LT((tiny.step(a) - a).cwiseAbs().maxCoeff(), 1e-10);
  const auto zero = crank_nicolson_prepare(random_spd(6, 3), Matrix::Zero(6, 6), 0.5);
  const Trajectory t = integrate_cn(zero, a, IntegratorSpec{Scheme::crank_nicolson, 0.5, 5.0, 1});
  for (const auto& s : t.states) EXPECT_LT((s - a).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(CrankNicolson, SingularLeftMatrixRejected) {
  // S - dt/2 B = diag(1, 0) with S = I, B = diag(0, 2), dt = 1.
  Matrix b = Matrix::Zero(2, 2);
  b(1, 1) = 2.0;
  try {
    crank_nicolson_prepare(Matrix::Identity(2, 2), b, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::factorization);
  }
}

TEST(CrankNicolson, StepCountForLongRuns) {
  const Matrix k = random_skew(4, 9);
  const auto stepper = crank_nicolson_prepare(Matrix::Identity(4, 4), k, 0.05);
  const Trajectory t =
      integrate_cn(stepper, Vector::Ones(4), IntegratorSpec{Scheme::crank_nicolson, 0.05, 40.0, 8});
  EXPECT_TRUE(t.stable);
  EXPECT_EQ(t.times.size(), 101u);
  EXPECT_NEAR(t.times.back(), 40.0, 1e-12);
}
