#include "calcverify/solvers.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "calcverify/diffcheck.hpp"

namespace calcverify {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_controls(double tol, int max_iterations) {
  if (!(tol > 0.0)) throw DomainError("solver tolerance must be positive, got " + fmt17(tol));
  if (max_iterations < 0) throw DomainError("max_iterations must be nonnegative");
}

// f(x) - c, rejecting non-finite values. Both solvers work on this residual
// only, so solving f = c and (f - c) = 0 visit identical iterates.
double residual_at(const Integrand1D& f, double c, double x, int iterations) {
  const double r = f(x) - c;
  if (!std::isfinite(r)) throw SolveError("f is not finite at iterate x = " + fmt17(x), x, iterations);
  return r;
}

}  // namespace

SolveResult newton_solve(const Integrand1D& f, const Integrand1D& fprime, double c, double x0, double tol,
                         int max_iterations) {
  check_controls(tol, max_iterations);
  if (!std::isfinite(x0)) throw DomainError("starting point must be finite");

  const Integrand1D residual = [&f, c](double x) { return f(x) - c; };

  SolveResult out{};
  out.iterates.push_back(x0);
  double x = x0;
  for (int it = 0;; ++it) {
    const double r = residual_at(f, c, x, it);
    if (std::abs(r) <= tol || it == max_iterations) {
      out.root = x;
      out.residual = std::abs(r);
      out.iterations = it;
      out.converged = std::abs(r) <= tol;
      return out;
    }

    double slope = 0.0;
    if (fprime) {
      slope = fprime(x);
    } else {
      try {
        slope = central_diff(residual, x, kNewtonFallbackStep);
      } catch (const NumericError& e) {
        throw SolveError(e.what(), x, it);
      }
    }
    if (!std::isfinite(slope)) throw SolveError("derivative is not finite at x = " + fmt17(x), x, it);
    if (std::abs(slope) < kFlatSlope) {
      throw SolveError("derivative is flat (|f'| = " + fmt17(std::abs(slope)) + ") at x = " + fmt17(x), x, it);
    }

    const double next = x - r / slope;
    if (!std::isfinite(next)) throw SolveError("Newton step left the finite range from x = " + fmt17(x), x, it);
    x = next;
    out.iterates.push_back(x);
  }
}

SolveResult secant_solve(const Integrand1D& f, double c, double x0, double x1, double tol, int max_iterations) {
  check_controls(tol, max_iterations);
  if (!std::isfinite(x0) || !std::isfinite(x1)) throw DomainError("starting points must be finite");
  if (x0 == x1) throw DomainError("secant method needs two distinct starting points");

  SolveResult out{};
  out.iterates = {x0, x1};
  double prev_x = x0;
  double prev_r = residual_at(f, c, x0, 0);
  double x = x1;
  for (int it = 0;; ++it) {
    const double r = residual_at(f, c, x, it);
    if (std::abs(r) <= tol || it == max_iterations) {
      out.root = x;
      out.residual = std::abs(r);
      out.iterations = it;
      out.converged = std::abs(r) <= tol;
      return out;
    }

    const double slope = (r - prev_r) / (x - prev_x);
    if (!std::isfinite(slope) || std::abs(slope) < kFlatSlope) {
      throw SolveError("secant slope is flat or undefined between x = " + fmt17(prev_x) + " and x = " + fmt17(x), x,
                       it);
    }
    const double next = x - r / slope;
    if (!std::isfinite(next)) throw SolveError("secant step left the finite range from x = " + fmt17(x), x, it);
    prev_x = x;
    prev_r = r;
    x = next;
    out.iterates.push_back(x);
  }
}

}  // namespace calcverify
