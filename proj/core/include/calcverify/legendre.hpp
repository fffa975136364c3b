#pragma once

#include <span>
#include <vector>

#include "calcverify/polynomial.hpp"

namespace calcverify {

/// Highest degree the Gram-Schmidt construction will build.
inline constexpr int kGramSchmidtMaxDegree = 64;

/// Iteration cap for the Newton polish of each Legendre root.
inline constexpr int kRootMaxIterations = 100;

/// Legendre polynomials P_0..P_n by orthogonalizing 1, x, ..., x^n over
/// [-1, 1] and scaling each result so that P_k(1) = 1.
///
/// Inner products use the exact monomial moments and the whole process runs
/// in exact rational arithmetic; the only rounding is the final conversion of
/// each coefficient to double. Throws CapabilityError for n outside
/// [0, kGramSchmidtMaxDegree].
std::vector<Polynomial> legendre_gram_schmidt(int n);

/// Legendre polynomials P_0..P_n from (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
/// Coefficients are accumulated in extended precision.
std::vector<Polynomial> legendre_recurrence(int n);

struct LegendreValue {
  double value;
  double derivative;
};

/// P_n(x) and P_n'(x) by the three-term recurrence, without forming
/// coefficients. Stable for all degrees and valid at x = +-1.
LegendreValue legendre_eval(int n, double x);

/// The n distinct roots of P_n, ascending, all inside (-1, 1).
///
/// Symmetry about zero is exact by construction: the caller-facing
/// constructor rejects sets that are not sorted, not inside the open
/// interval, or not mirror-symmetric within 1e-14.
class RootSet {
 public:
  explicit RootSet(std::vector<double> roots);

  std::span<const double> roots() const noexcept { return roots_; }
  int size() const noexcept { return static_cast<int>(roots_.size()); }
  double operator[](int i) const { return roots_.at(static_cast<std::size_t>(i)); }

  auto begin() const noexcept { return roots_.begin(); }
  auto end() const noexcept { return roots_.end(); }

 private:
  std::vector<double> roots_;
};

/// Roots of P_n for n >= 1. Newton's method on the recurrence, started from
/// cos(pi (4k - 1) / (4n + 2)); only the nonnegative half is computed, the
/// rest is mirrored and odd n gets an exact 0.
RootSet legendre_roots(int n);

namespace detail {

/// Newton iteration for one root of P_n from `guess`. Throws NumericError
/// naming the guess if it does not settle within `max_iterations`.
double polish_legendre_root(int n, double guess, int max_iterations = kRootMaxIterations);

struct ExtendedRoot {
  long double x;
  long double derivative;  // P_n'(x)
};

/// The positive roots of P_n in extended precision, descending, before
/// rounding to double. gauss_rule takes its weights from these.
std::vector<ExtendedRoot> positive_legendre_roots(int n);

/// P_n'(0) in extended precision (the weight of the middle node for odd n).
long double legendre_derivative_at_zero(int n);

/// Rounds the positive half to double and mirrors it into a RootSet, with an
/// exact 0 in the middle for odd n.
RootSet mirrored_roots(int n, const std::vector<ExtendedRoot>& positive);

}  // namespace detail

}  // namespace calcverify
