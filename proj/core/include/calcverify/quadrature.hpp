#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace calcverify {

/// Largest rule gauss_rule() will build.
inline constexpr int kMaxRuleSize = 64;

/// Largest node set the Vandermonde weight solve accepts.
inline constexpr int kVandermondeMaxSize = 20;

/// Largest box dimension integrate_box() accepts.
inline constexpr int kMaxBoxDims = 3;

/// Tolerance used by every QuadratureRule invariant check.
inline constexpr double kRuleTolerance = 1e-12;

/// A real function of one variable.
using Integrand1D = std::function<double(double)>;

/// A real function of d variables; the span has exactly d entries.
using IntegrandND = std::function<double(std::span<const double>)>;

/// Node/weight pairs on [-1, 1].
///
/// Construction validates: equal lengths, nodes strictly ascending inside
/// (-1, 1), weights strictly positive, weights mirror-symmetric, sum of
/// weights equal to 2 and first moment equal to 0 (both within
/// kRuleTolerance). Violations throw DomainError.
class QuadratureRule {
 public:
  QuadratureRule(std::vector<double> nodes, std::vector<double> weights);

  /// Description of the first violated invariant, if any.
  static std::optional<std::string> find_violation(std::span<const double> nodes, std::span<const double> weights);

  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

  friend bool operator==(const QuadratureRule&, const QuadratureRule&) = default;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// n-point Gauss-Legendre rule: nodes are the roots of P_n and weights come
/// from w_i = 2 / ((1 - x_i^2) P_n'(x_i)^2). CapabilityError unless
/// 1 <= n <= kMaxRuleSize.
QuadratureRule gauss_rule(int n);

/// Weights that make sum_j w_j x_j^i equal the exact moment of x^i over
/// [-1, 1] for i = 0..n-1, i.e. the solution of the Vandermonde system whose
/// rows are node powers. Works for any distinct nodes (not only Legendre
/// roots, and endpoints are allowed). CapabilityError above
/// kVandermondeMaxSize nodes; NumericError for repeated nodes.
std::vector<double> gauss_weights_linear_system(std::span<const double> nodes);

/// Integral of f over [a, b] with the n-point Gauss rule mapped by
/// u = (b - a)/2 x + (b + a)/2. The Jacobian (b - a)/2 is applied to each
/// function value before weighting.
double integrate_1d(const Integrand1D& f, double a, double b, int n);
double integrate_1d(const Integrand1D& f, double a, double b, const QuadratureRule& rule);

/// Axis-aligned box [lo_0, hi_0] x ... with 1 to kMaxBoxDims axes.
class Box {
 public:
  Box(std::vector<double> lo, std::vector<double> hi);

  int dims() const noexcept { return static_cast<int>(lo_.size()); }
  double lo(int axis) const { return lo_.at(static_cast<std::size_t>(axis)); }
  double hi(int axis) const { return hi_.at(static_cast<std::size_t>(axis)); }

 private:
  std::vector<double> lo_;
  std::vector<double> hi_;
};

/// Tensor-product Gauss rule with the same order on every axis.
double integrate_box(const IntegrandND& f, const Box& box, int n_per_axis);
double integrate_box(const IntegrandND& f, const Box& box, const QuadratureRule& rule);

struct ConvergenceRow {
  int n;
  double value;
  double abs_error;
};

/// integrate_1d at each order, with the error against `reference`.
/// Orders must be nonempty and strictly ascending.
std::vector<ConvergenceRow> convergence_table(const Integrand1D& f, double a, double b, std::span<const int> orders,
                                              double reference);

}  // namespace calcverify
