#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "calcverify/cordic.hpp"
#include "calcverify/errors.hpp"

namespace cv = calcverify;

namespace trap {

// Counts every general multiplication or division performed on it.
struct Real {
  static inline int products = 0;
  double v = 0.0;
  explicit Real(double x) : v(x) {}
};

inline Real operator+(Real a, Real b) { return Real(a.v + b.v); }
inline Real operator-(Real a, Real b) { return Real(a.v - b.v); }
inline Real operator*(Real a, Real b) {
  ++Real::products;
  return Real(a.v * b.v);
}
inline Real operator/(Real a, Real b) {
  ++Real::products;
  return Real(a.v / b.v);
}
inline bool operator<(Real a, Real b) { return a.v < b.v; }
inline Real scale_pow2(Real a, int e) { return Real(std::ldexp(a.v, e)); }

}  // namespace trap

namespace {

std::vector<double> samples(int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (auto& t : out) t = u(rng);
  return out;
}

double max_error(const cv::CordicTable& table, const std::vector<double>& thetas) {
  double worst = 0.0;
  for (double t : thetas) {
    const auto sc = cv::cordic_sincos(t, table);
    worst = std::max({worst, std::abs(sc.sin - std::sin(t)), std::abs(sc.cos - std::cos(t))});
  }
  return worst;
}

}  // namespace

TEST(CordicTable, Examples) {
  const auto t1 = cv::cordic_table(1);
  ASSERT_EQ(t1.iterations(), 1);
  EXPECT_EQ(t1.angles()[0], std::numbers::pi / 4);
  EXPECT_NEAR(t1.gain(), 1.0 / std::sqrt(2.0), 1e-16);

  const auto t2 = cv::cordic_table(2);
  EXPECT_EQ(t2.angles()[1], std::atan(0.5));
  EXPECT_NEAR(t2.gain(), 0.6324555320336758663997788, 2e-16);  // 1/(sqrt(2) sqrt(5/4))

  // 50-digit product oracle.
  EXPECT_NEAR(cv::cordic_table(40).gain(), 0.6072529350088812561694471, 1e-12);
}

TEST(CordicTable, Invariants) {
  for (int k = 1; k <= cv::kCordicMaxIterations; ++k) {
    const auto t = cv::cordic_table(k);
    for (int i = 1; i < k; ++i) EXPECT_LT(t.angles()[i], t.angles()[i - 1]);
    if (k >= 16) {
      EXPECT_GT(t.gain(), 0.607252);
      EXPECT_LT(t.gain(), 0.607254);
    }
  }
}

TEST(CordicTable, OutOfRange) {
  EXPECT_THROW(cv::cordic_table(0), cv::CapabilityError);
  EXPECT_THROW(cv::cordic_table(cv::kCordicMaxIterations + 1), cv::CapabilityError);
}

TEST(CordicSinCos, Examples) {
  const double tol = std::ldexp(1.0, -38);
  const auto zero = cv::cordic_sincos(0.0);
  EXPECT_NEAR(zero.sin, 0.0, tol);
  EXPECT_NEAR(zero.cos, 1.0, tol);

  const auto right = cv::cordic_sincos(std::numbers::pi / 2);
  EXPECT_NEAR(right.sin, 1.0, tol);
  EXPECT_NEAR(right.cos, 0.0, tol);

  EXPECT_NEAR(cv::cordic_sincos(std::numbers::pi / 6, cv::cordic_table(40)).sin, 0.5, 1e-10);
}

TEST(CordicSinCos, QuadrantFolding) {
  const double tol = std::ldexp(1.0, -38);
  for (double t : {2.0, 3.0, -2.5, 4.0, 5.5, -7.0, 100.0, 12345.678}) {
    const auto sc = cv::cordic_sincos(t);
    EXPECT_NEAR(sc.sin, std::sin(t), tol) << t;
    EXPECT_NEAR(sc.cos, std::cos(t), tol) << t;
  }
}

TEST(CordicSinCos, LargeArguments) {
  const auto sc = cv::cordic_sincos(1e15);
  EXPECT_NEAR(sc.sin, std::sin(1e15), 1e-9);
  EXPECT_NEAR(sc.cos, std::cos(1e15), 1e-9);
  EXPECT_THROW(cv::cordic_sincos(1e20), cv::DomainError);
  EXPECT_THROW(cv::cordic_sincos(-1.0000001e15), cv::DomainError);
  EXPECT_THROW(cv::cordic_sincos(NAN), cv::DomainError);
  EXPECT_THROW(cv::cordic_sincos(INFINITY), cv::DomainError);
}

TEST(CordicProperties, Pythagorean) {
  const auto table = cv::cordic_table(40);
  const double tol = 4.0 * std::ldexp(1.0, -40);
  for (double t : samples(1000, 11)) {
    const auto sc = cv::cordic_sincos(t, table);
    EXPECT_NEAR(sc.sin * sc.sin + sc.cos * sc.cos, 1.0, tol) << t;
  }
}

TEST(CordicProperties, Symmetry) {
  const auto table = cv::cordic_table(40);
  const double tol = std::ldexp(1.0, -38);
  for (double t : samples(500, 12)) {
    const auto pos = cv::cordic_sincos(t, table);
    const auto neg = cv::cordic_sincos(-t, table);
    EXPECT_NEAR(neg.sin, -pos.sin, tol) << t;
    EXPECT_NEAR(neg.cos, pos.cos, tol) << t;
  }
}

TEST(CordicProperties, AccuracyAt40Iterations) {
  EXPECT_LE(max_error(cv::cordic_table(40), samples(1000, 13)), 1e-9);
}

TEST(CordicProperties, ErrorHalvesPerIteration) {
  const auto thetas = samples(1000, 14);
  double prev = max_error(cv::cordic_table(8), thetas);
  for (int k = 9; k <= 30; ++k) {
    const double cur = max_error(cv::cordic_table(k), thetas);
    EXPECT_GE(prev / cur, 1.9) << "K=" << k;
    prev = cur;
  }
}

TEST(CordicProperties, RotationUsesNoMultiplication) {
  const auto table = cv::cordic_table(40);
  trap::Real::products = 0;
  trap::Real x(table.gain()), y(0.0), z(0.6);
  cv::cordic_rotate(x, y, z, table.angles());
  EXPECT_EQ(trap::Real::products, 0);
  EXPECT_NEAR(y.v, std::sin(0.6), 1e-11);
  EXPECT_NEAR(x.v, std::cos(0.6), 1e-11);

  // The counter itself works.
  trap::Real a(2.0), b(3.0);
  EXPECT_EQ((a * b).v, 6.0);
  EXPECT_EQ(trap::Real::products, 1);
}
