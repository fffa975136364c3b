#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "calcverify/quadrature.hpp"

namespace calcverify {

inline constexpr double kDefaultStep = 1e-4;
inline constexpr double kDefaultTolAbs = 1e-6;
inline constexpr double kDefaultTolRel = 1e-6;

enum class Verdict { pass, fail };

constexpr std::string_view to_string(Verdict v) noexcept { return v == Verdict::pass ? "pass" : "fail"; }

struct DerivativeReport {
  double point;
  double h;
  double analytic;
  double numeric;
  double abs_diff;  // |analytic - numeric|
  double rel_diff;  // abs_diff / max(|analytic|, 1)
  Verdict verdict;  // pass iff abs_diff <= tol_abs or rel_diff <= tol_rel
};

struct AntiderivativeReport {
  double a;
  double b;
  double ftc_value;  // F(b) - F(a)
  double quad_value;
  int n;
  double abs_diff;
  Verdict verdict;
};

/// Slope of the chord through (a - h, f(a - h)) and (a + h, f(a + h)).
/// Requires h > 0.
double central_diff(const Integrand1D& f, double a, double h);

/// (f(a + h) - f(a)) / h; a negative h gives the left secant.
double one_sided_diff(const Integrand1D& f, double a, double h);

/// Fills every derived field of a DerivativeReport from the two values.
DerivativeReport make_derivative_report(double point, double h, double analytic, double numeric, double tol_abs,
                                        double tol_rel);

/// Compares fprime(a) against central_diff(f, a, h).
///
/// With the defaults h = 1e-4 and tolerances 1e-6 a correct derivative of a
/// smooth function passes with a wide margin. Shrinking h far below about
/// 1e-5 trades truncation error for cancellation in f(a + h) - f(a - h).
DerivativeReport verify_derivative(const Integrand1D& f, const Integrand1D& fprime, double a, double h = kDefaultStep,
                                   double tol_abs = kDefaultTolAbs, double tol_rel = kDefaultTolRel);

/// Compares F(b) - F(a) against the n-point Gauss value of the integral of f.
AntiderivativeReport verify_antiderivative(const Integrand1D& f, const Integrand1D& antiderivative, double a, double b,
                                           int n, double tol = kDefaultTolAbs);

/// Forward-difference gradient sharing one base evaluation: d + 1 calls to f.
std::vector<double> gradient(const IntegrandND& f, std::span<const double> point, double h);

/// gradient(f, point, h) dotted with direction / |direction|.
double directional_derivative(const IntegrandND& f, std::span<const double> point, std::span<const double> direction,
                              double h);

}  // namespace calcverify
