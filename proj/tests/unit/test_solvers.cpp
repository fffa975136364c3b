#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "calcverify/cordic.hpp"
#include "calcverify/solvers.hpp"

namespace cv = calcverify;

namespace {

const cv::Integrand1D kNoDerivative{};

}  // namespace

TEST(Newton, SquareRootOfFour) {
  const auto r = cv::newton_solve([](double x) { return x * x; }, [](double x) { return 2 * x; }, 4.0, 3.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.root, 2.0, 1e-10);
  EXPECT_LE(r.iterations, 6);
  EXPECT_EQ(r.iterates.front(), 3.0);
  EXPECT_EQ(r.iterates.back(), r.root);
  EXPECT_EQ(static_cast<int>(r.iterates.size()), r.iterations + 1);
}

TEST(Newton, AffineInOneStep) {
  for (double x0 : {-7.5, 0.25, 1e6}) {
    const auto r = cv::newton_solve([](double x) { return x; }, [](double) { return 1.0; }, 0.0, x0);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.root, 0.0);
    EXPECT_EQ(r.iterations, 1);
  }
}

TEST(Newton, NoRealRootReportsNonConvergence) {
  const auto f = [](double x) { return x * x + 1.0; };
  // Central-difference fallback from x0 = 1: the first step lands near 0
  // but not on it, and the iteration wanders.
  const auto fallback = cv::newton_solve(f, kNoDerivative, 0.0, 1.0, 1e-10, 50);
  EXPECT_FALSE(fallback.converged);
  EXPECT_EQ(fallback.iterations, 50);
  EXPECT_GE(fallback.residual, 1.0);

  const auto analytic = cv::newton_solve(f, [](double x) { return 2 * x; }, 0.0, 0.5, 1e-10, 50);
  EXPECT_FALSE(analytic.converged);
  EXPECT_EQ(analytic.iterations, 50);
}

TEST(Newton, FlatDerivativeThrowsWithLastIterate) {
  // With the exact derivative the first step from 1 lands on x = 0, where
  // f' vanishes.
  try {
    cv::newton_solve([](double x) { return x * x + 1.0; }, [](double x) { return 2 * x; }, 0.0, 1.0, 1e-10, 50);
    FAIL() << "expected SolveError";
  } catch (const cv::SolveError& e) {
    EXPECT_EQ(e.last_iterate(), 0.0);
    EXPECT_EQ(e.iterations(), 1);
  }
}

TEST(Newton, FallbackDerivative) {
  const auto r = cv::newton_solve([](double x) { return std::exp(x); }, kNoDerivative, 2.0, 0.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.root, std::log(2.0), 1e-10);
}

TEST(Newton, Errors) {
  const auto f = [](double x) { return x; };
  EXPECT_THROW(cv::newton_solve(f, kNoDerivative, 0.0, 1.0, 0.0), cv::DomainError);
  EXPECT_THROW(cv::newton_solve(f, kNoDerivative, 0.0, 1.0, 1e-10, -1), cv::DomainError);
  EXPECT_THROW(cv::newton_solve(f, kNoDerivative, 0.0, NAN), cv::DomainError);
  EXPECT_THROW(cv::newton_solve([](double x) { return std::log(x); }, [](double) { return 1.0; }, -5.0, 1.0),
               cv::SolveError);
}

TEST(Newton, QuadraticConvergence) {
  const auto f = [](double x) { return x * x - 2.0; };
  const auto r = cv::newton_solve(f, [](double x) { return 2 * x; }, 0.0, 2.0, 1e-15);
  ASSERT_GE(r.iterates.size(), 3u);
  for (std::size_t k = 0; k + 1 < r.iterates.size(); ++k) {
    const double rk = std::abs(f(r.iterates[k]));
    const double rk1 = std::abs(f(r.iterates[k + 1]));
    // Below a few ulps of f near the root the residual is rounding noise.
    if (rk < 0.1 && rk1 > 8 * std::numeric_limits<double>::epsilon()) {
      EXPECT_LE(rk1, 1.0 * rk * rk) << "k=" << k;
    }
  }
}

TEST(Secant, Examples) {
  const auto r = cv::secant_solve([](double x) { return x * x - 2.0; }, 0.0, 1.0, 2.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.root, std::numbers::sqrt2, 1e-10);
  EXPECT_EQ(r.iterates[0], 1.0);
  EXPECT_EQ(r.iterates[1], 2.0);

  const auto lin = cv::secant_solve([](double x) { return x; }, 5.0, 0.0, 1.0);
  EXPECT_NEAR(lin.root, 5.0, 1e-12);

  const auto c = cv::secant_solve([](double x) { return cv::cordic_sincos(x).cos; }, 0.0, 1.0, 2.0);
  EXPECT_TRUE(c.converged);
  EXPECT_NEAR(c.root, std::numbers::pi / 2, 1e-8);
}

TEST(Secant, Errors) {
  const auto f = [](double x) { return x; };
  EXPECT_THROW(cv::secant_solve(f, 0.0, 1.0, 1.0), cv::DomainError);
  EXPECT_THROW(cv::secant_solve(f, 0.0, 1.0, NAN), cv::DomainError);
  EXPECT_THROW(cv::secant_solve([](double) { return 3.0; }, 0.0, 1.0, 2.0), cv::SolveError);
}

TEST(Solvers, ResidualContract) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> target(-3.0, 3.0), start(-2.0, 2.0);
  const auto f = [](double x) { return x * x * x + x; };
  const auto fp = [](double x) { return 3 * x * x + 1; };
  for (int trial = 0; trial < 100; ++trial) {
    const double c = target(rng), x0 = start(rng);
    const double tol = 1e-11;
    for (const auto& r : {cv::newton_solve(f, fp, c, x0, tol), cv::newton_solve(f, kNoDerivative, c, x0, tol),
                          cv::secant_solve(f, c, x0, x0 + 0.5, tol)}) {
      EXPECT_LE(r.iterations, cv::kDefaultMaxIterations);
      if (r.converged) {
        EXPECT_LE(std::abs(f(r.root) - c), tol);
        EXPECT_EQ(r.residual, std::abs(f(r.root) - c));
      }
    }
  }
}

TEST(Solvers, ShiftedTargetGivesIdenticalIterates) {
  const auto f = [](double x) { return std::exp(x) - 3.0 * x; };
  const auto fp = [](double x) { return std::exp(x) - 3.0; };
  for (double c : {0.5, 1.0, 7.25}) {
    const auto g = [&](double x) { return f(x) - c; };
    EXPECT_EQ(cv::newton_solve(f, fp, c, 2.5).iterates, cv::newton_solve(g, fp, 0.0, 2.5).iterates);
    EXPECT_EQ(cv::newton_solve(f, kNoDerivative, c, 2.5).iterates,
              cv::newton_solve(g, kNoDerivative, 0.0, 2.5).iterates);
    EXPECT_EQ(cv::secant_solve(f, c, 2.0, 3.0).iterates, cv::secant_solve(g, 0.0, 2.0, 3.0).iterates);
  }
}
