#include "calcverify/diffcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "calcverify/errors.hpp"

namespace calcverify {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double eval_finite(const Integrand1D& f, double x, const char* what) {
  const double y = f(x);
  if (!std::isfinite(y)) throw NumericError(std::string(what) + " is not finite at x = " + fmt17(x));
  return y;
}

void require_positive_step(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("step h must be a positive finite number, got " + fmt17(h));
}

}  // namespace

double central_diff(const Integrand1D& f, double a, double h) {
  require_positive_step(h);
  const double hi = eval_finite(f, a + h, "f");
  const double lo = eval_finite(f, a - h, "f");
  return (hi - lo) / (2 * h);
}

double one_sided_diff(const Integrand1D& f, double a, double h) {
  if (h == 0.0 || !std::isfinite(h)) throw DomainError("step h must be nonzero and finite");
  const double moved = eval_finite(f, a + h, "f");
  const double base = eval_finite(f, a, "f");
  return (moved - base) / h;
}

DerivativeReport make_derivative_report(double point, double h, double analytic, double numeric, double tol_abs,
                                        double tol_rel) {
  DerivativeReport r{};
  r.point = point;
  r.h = h;
  r.analytic = analytic;
  r.numeric = numeric;
  r.abs_diff = std::abs(analytic - numeric);
  r.rel_diff = r.abs_diff / std::max(std::abs(analytic), 1.0);
  r.verdict = (r.abs_diff <= tol_abs || r.rel_diff <= tol_rel) ? Verdict::pass : Verdict::fail;
  return r;
}

DerivativeReport verify_derivative(const Integrand1D& f, const Integrand1D& fprime, double a, double h,
                                   double tol_abs, double tol_rel) {
  const double numeric = central_diff(f, a, h);
  const double analytic = eval_finite(fprime, a, "analytic derivative");
  return make_derivative_report(a, h, analytic, numeric, tol_abs, tol_rel);
}

AntiderivativeReport verify_antiderivative(const Integrand1D& f, const Integrand1D& antiderivative, double a, double b,
                                           int n, double tol) {
  if (!(a < b)) throw DomainError("antiderivative check needs a < b, got [" + fmt17(a) + ", " + fmt17(b) + "]");
  AntiderivativeReport r{};
  r.a = a;
  r.b = b;
  r.n = n;
  r.quad_value = integrate_1d(f, a, b, n);
  r.ftc_value = eval_finite(antiderivative, b, "antiderivative") - eval_finite(antiderivative, a, "antiderivative");
  r.abs_diff = std::abs(r.ftc_value - r.quad_value);
  r.verdict = r.abs_diff <= tol ? Verdict::pass : Verdict::fail;
  return r;
}

std::vector<double> gradient(const IntegrandND& f, std::span<const double> point, double h) {
  if (point.empty()) throw DomainError("gradient needs at least one coordinate");
  require_positive_step(h);

  std::vector<double> x(point.begin(), point.end());
  const double base = f(x);
  if (!std::isfinite(base)) throw NumericError("f is not finite at the base point");

  std::vector<double> grad(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] = point[k] + h;
    const double moved = f(x);
    x[k] = point[k];
    if (!std::isfinite(moved)) {
      throw NumericError("f is not finite after stepping coordinate " + std::to_string(k) + " by h = " + fmt17(h));
    }
    grad[k] = (moved - base) / h;
  }
  return grad;
}

double directional_derivative(const IntegrandND& f, std::span<const double> point, std::span<const double> direction,
                              double h) {
  if (direction.size() != point.size()) {
    throw DomainError("direction has " + std::to_string(direction.size()) + " components, point has " +
                      std::to_string(point.size()));
  }
  double norm2 = 0.0;
  for (double v : direction) norm2 += v * v;
  const double norm = std::sqrt(norm2);
  if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("direction must have nonzero finite length");

  const auto grad = gradient(f, point, h);
  double dot = 0.0;
  for (std::size_t k = 0; k < grad.size(); ++k) dot += grad[k] * (direction[k] / norm);
  return dot;
}

}  // namespace calcverify
