#pragma once

#include <vector>

#include "calcverify/errors.hpp"
#include "calcverify/quadrature.hpp"

namespace calcverify {

inline constexpr double kDefaultSolveTol = 1e-10;
inline constexpr int kDefaultMaxIterations = 100;

/// Step used for the central-difference derivative when Newton's method is
/// given no analytic derivative.
inline constexpr double kNewtonFallbackStep = 1e-7;

/// Derivative or secant slopes smaller than this abort the iteration.
inline constexpr double kFlatSlope = 1e-14;

struct SolveResult {
  double root;
  double residual;  // |f(root) - c|
  int iterations;
  bool converged;   // residual <= tol
  std::vector<double> iterates;  // every x visited, starting values first
};

/// A solver hit a flat slope or a non-finite value. Carries the last finite
/// iterate so callers can report where the iteration stopped.
class SolveError : public NumericError {
 public:
  SolveError(const std::string& what, double last_iterate, int iterations)
      : NumericError(what), last_iterate_(last_iterate), iterations_(iterations) {}

  double last_iterate() const noexcept { return last_iterate_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double last_iterate_;
  int iterations_;
};

/// Newton's method for f(x) = c: x <- x - (f(x) - c) / f'(x).
///
/// An empty `fprime` selects the central difference of f(x) - c with step
/// kNewtonFallbackStep. Stops when |f(x) - c| <= tol or after `max_iterations`
/// updates; running out of iterations is reported through `converged`, not an
/// exception. No bracketing safeguard: divergence is reported, not repaired.
SolveResult newton_solve(const Integrand1D& f, const Integrand1D& fprime, double c, double x0,
                         double tol = kDefaultSolveTol, int max_iterations = kDefaultMaxIterations);

/// Secant method for f(x) = c from the two starting points x0 != x1.
SolveResult secant_solve(const Integrand1D& f, double c, double x0, double x1, double tol = kDefaultSolveTol,
                         int max_iterations = kDefaultMaxIterations);

}  // namespace calcverify
