#include "calcverify/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "calcverify/errors.hpp"
#include "calcverify/legendre.hpp"

namespace calcverify {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_interval(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integration bounds must be finite");
  if (!(a < b)) throw DomainError("integration needs a < b, got [" + fmt17(a) + ", " + fmt17(b) + "]");
}

}  // namespace

std::optional<std::string> QuadratureRule::find_violation(std::span<const double> nodes,
                                                          std::span<const double> weights) {
  const std::size_t n = nodes.size();
  if (n == 0) return "rule is empty";
  if (weights.size() != n) return "node and weight counts differ";

  double sum = 0.0, first_moment = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(nodes[i] > -1.0 && nodes[i] < 1.0)) return "node " + fmt17(nodes[i]) + " is outside (-1, 1)";
    if (i > 0 && !(nodes[i - 1] < nodes[i])) return "nodes are not strictly ascending";
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) return "weight " + fmt17(weights[i]) + " is not positive";
    if (std::abs(weights[i] - weights[n - 1 - i]) > kRuleTolerance) return "weights are not symmetric";
    sum += weights[i];
    first_moment += weights[i] * nodes[i];
  }
  if (std::abs(sum - 2.0) > kRuleTolerance) return "weights sum to " + fmt17(sum) + ", not 2";
  if (std::abs(first_moment) > kRuleTolerance) return "first moment is " + fmt17(first_moment) + ", not 0";
  return std::nullopt;
}

QuadratureRule::QuadratureRule(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (auto violation = find_violation(nodes_, weights_)) {
    throw DomainError("invalid " + std::to_string(nodes_.size()) + "-point rule: " + *violation);
  }
}

QuadratureRule gauss_rule(int n) {
  if (n < 1 || n > kMaxRuleSize) {
    throw CapabilityError("Gauss rules are available for 1 <= n <= " + std::to_string(kMaxRuleSize) + ", got " +
                          std::to_string(n));
  }
  // Weights come from the extended-precision roots: 1 - x^2 near the ends
  // would magnify the rounding of a double node.
  const auto positive = detail::positive_legendre_roots(n);
  const RootSet roots = detail::mirrored_roots(n, positive);
  std::vector<double> nodes(roots.begin(), roots.end());
  std::vector<double> weights(nodes.size());

  const std::size_t count = nodes.size();
  for (std::size_t k = 0; k < positive.size(); ++k) {
    const long double x = positive[k].x;
    const long double dp = positive[k].derivative;
    const double w = static_cast<double>(2.0L / ((1.0L - x) * (1.0L + x) * dp * dp));
    weights[k] = w;
    weights[count - 1 - k] = w;
  }
  if (count % 2 != 0) {
    const long double dp = detail::legendre_derivative_at_zero(n);
    weights[count / 2] = static_cast<double>(2.0L / (dp * dp));
  }
  return QuadratureRule(std::move(nodes), std::move(weights));
}

std::vector<double> gauss_weights_linear_system(std::span<const double> nodes) {
  const std::size_t n = nodes.size();
  if (n == 0) throw DomainError("need at least one node");
  if (n > static_cast<std::size_t>(kVandermondeMaxSize)) {
    throw CapabilityError("Vandermonde weight solve is limited to " + std::to_string(kVandermondeMaxSize) +
                          " nodes, got " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(nodes[i])) throw DomainError("node " + std::to_string(i) + " is not finite");
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(nodes[i] - nodes[j]) <= 1e-14 * std::max(1.0, std::abs(nodes[i]))) {
        throw NumericError("Vandermonde system is singular: nodes " + std::to_string(j) + " and " +
                           std::to_string(i) + " coincide (" + fmt17(nodes[i]) + ")");
      }
    }
  }

  // Bjorck-Pereyra elimination for V w = m with V[i][j] = x_j^i. The
  // right-hand side holds the moments of x^i over [-1, 1].
  std::vector<long double> x(nodes.begin(), nodes.end());
  std::vector<long double> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = (i % 2 != 0) ? 0.0L : 2.0L / static_cast<long double>(i + 1);

  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (std::size_t i = n - 1; i > k; --i) b[i] -= x[k] * b[i - 1];
  }
  for (std::size_t k = n - 1; k-- > 0;) {
    for (std::size_t i = k + 1; i < n; ++i) b[i] /= (x[i] - x[i - k - 1]);
    for (std::size_t i = k; i + 1 < n; ++i) b[i] -= b[i + 1];
  }

  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = static_cast<double>(b[i]);
    if (!std::isfinite(weights[i])) throw NumericError("Vandermonde solve produced a non-finite weight");
  }
  return weights;
}

double integrate_1d(const Integrand1D& f, double a, double b, int n) { return integrate_1d(f, a, b, gauss_rule(n)); }

double integrate_1d(const Integrand1D& f, double a, double b, const QuadratureRule& rule) {
  check_interval(a, b);
  const double half = (b - a) / 2;
  const double mid = (b + a) / 2;
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();

  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double u = half * nodes[i] + mid;
    if (!(u > a && u < b)) {
      throw DomainError("interval [" + fmt17(a) + ", " + fmt17(b) + "] is too narrow to hold " +
                        std::to_string(rule.size()) + " distinct interior nodes");
    }
    const double fu = f(u);
    if (!std::isfinite(fu)) {
      throw NumericError("integrand is not finite at x = " + fmt17(u) + " (node " + std::to_string(i + 1) + " of " +
                         std::to_string(rule.size()) + ")");
    }
    sum += weights[i] * (half * fu);
  }
  return sum;
}

Box::Box(std::vector<double> lo, std::vector<double> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size()) throw DomainError("box bounds have mismatched dimensions");
  if (lo_.empty() || lo_.size() > static_cast<std::size_t>(kMaxBoxDims)) {
    throw DomainError("box must have 1 to " + std::to_string(kMaxBoxDims) + " axes, got " +
                      std::to_string(lo_.size()));
  }
  for (std::size_t k = 0; k < lo_.size(); ++k) {
    if (!std::isfinite(lo_[k]) || !std::isfinite(hi_[k]) || !(lo_[k] < hi_[k])) {
      throw DomainError("box axis " + std::to_string(k) + " needs finite lo < hi, got [" + fmt17(lo_[k]) + ", " +
                        fmt17(hi_[k]) + "]");
    }
  }
}

double integrate_box(const IntegrandND& f, const Box& box, int n_per_axis) {
  return integrate_box(f, box, gauss_rule(n_per_axis));
}

double integrate_box(const IntegrandND& f, const Box& box, const QuadratureRule& rule) {
  const std::size_t d = static_cast<std::size_t>(box.dims());
  const std::size_t n = static_cast<std::size_t>(rule.size());

  // Per-axis mapped nodes and Jacobian-scaled weights.
  std::vector<std::vector<double>> points(d, std::vector<double>(n));
  std::vector<std::vector<double>> scaled(d, std::vector<double>(n));
  for (std::size_t k = 0; k < d; ++k) {
    const double a = box.lo(static_cast<int>(k)), b = box.hi(static_cast<int>(k));
    const double half = (b - a) / 2, mid = (b + a) / 2;
    for (std::size_t i = 0; i < n; ++i) {
      points[k][i] = half * rule.nodes()[i] + mid;
      if (!(points[k][i] > a && points[k][i] < b)) {
        throw DomainError("box axis " + std::to_string(k) + " is too narrow to hold " + std::to_string(n) +
                          " distinct interior nodes");
      }
      scaled[k][i] = rule.weights()[i] * half;
    }
  }

  std::vector<std::size_t> index(d, 0);
  std::vector<double> x(d);
  double sum = 0.0;
  for (;;) {
    double w = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      x[k] = points[k][index[k]];
      w *= scaled[k][index[k]];
    }
    const double fx = f(x);
    if (!std::isfinite(fx)) {
      std::string where = "(";
      for (std::size_t k = 0; k < d; ++k) where += (k ? ", " : "") + fmt17(x[k]);
      throw NumericError("integrand is not finite at " + where + ")");
    }
    sum += w * fx;

    std::size_t k = 0;
    while (k < d && ++index[k] == n) index[k++] = 0;
    if (k == d) break;
  }
  return sum;
}

std::vector<ConvergenceRow> convergence_table(const Integrand1D& f, double a, double b, std::span<const int> orders,
                                              double reference) {
  if (orders.empty()) throw DomainError("convergence_table needs at least one order");
  for (std::size_t i = 1; i < orders.size(); ++i) {
    if (!(orders[i - 1] < orders[i])) throw DomainError("convergence orders must be strictly ascending");
  }
  std::vector<ConvergenceRow> rows;
  rows.reserve(orders.size());
  for (int n : orders) {
    const double value = integrate_1d(f, a, b, n);
    rows.push_back({n, value, std::abs(value - reference)});
  }
  return rows;
}

}  // namespace calcverify
