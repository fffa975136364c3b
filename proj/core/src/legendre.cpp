#include "calcverify/legendre.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "calcverify/errors.hpp"

namespace calcverify {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using RationalCoeffs = std::vector<Rational>;

Rational rational_moment(std::size_t m) {
  if (m % 2 != 0) return Rational(0);
  return Rational(2, static_cast<long>(m) + 1);
}

// <x^k, q> over [-1, 1]
Rational monomial_inner(std::size_t k, const RationalCoeffs& q) {
  Rational sum = 0;
  for (std::size_t i = k % 2; i < q.size(); i += 2) {
    if (q[i] != 0) sum += q[i] * rational_moment(k + i);
  }
  return sum;
}

Polynomial to_double(const RationalCoeffs& coeffs) {
  std::vector<double> out(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = coeffs[i].convert_to<double>();
  return Polynomial(std::move(out));
}

}  // namespace

std::vector<Polynomial> legendre_gram_schmidt(int n) {
  if (n < 0 || n > kGramSchmidtMaxDegree) {
    throw CapabilityError("Gram-Schmidt Legendre construction supports degrees 0.." +
                          std::to_string(kGramSchmidtMaxDegree) + ", got " + std::to_string(n) +
                          "; use legendre_recurrence beyond that");
  }

  std::vector<RationalCoeffs> basis;
  std::vector<Rational> norms;  // <u_j, u_j>
  basis.reserve(static_cast<std::size_t>(n) + 1);
  norms.reserve(static_cast<std::size_t>(n) + 1);

  for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k) {
    RationalCoeffs u(k + 1, Rational(0));
    u[k] = 1;
    // x^k is already orthogonal to every u_j of opposite parity.
    for (std::size_t j = k % 2; j < k; j += 2) {
      const RationalCoeffs& q = basis[j];
      const Rational c = monomial_inner(k, q) / norms[j];
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] != 0) u[i] -= c * q[i];
      }
    }

    Rational at_one = 0;
    for (const auto& c : u) at_one += c;
    for (auto& c : u) c /= at_one;

    // u is orthogonal to everything below degree k, so <u, u> = <x^k, u> * lead.
    norms.push_back(monomial_inner(k, u) * u[k]);
    basis.push_back(std::move(u));
  }

  std::vector<Polynomial> out;
  out.reserve(basis.size());
  for (const auto& b : basis) out.push_back(to_double(b));
  return out;
}

std::vector<Polynomial> legendre_recurrence(int n) {
  if (n < 0) throw DomainError("Legendre degree must be nonnegative, got " + std::to_string(n));

  using Coeffs = std::vector<long double>;
  std::vector<Coeffs> p;
  p.reserve(static_cast<std::size_t>(n) + 1);
  p.push_back({1.0L});
  if (n >= 1) p.push_back({0.0L, 1.0L});
  for (int k = 1; k < n; ++k) {
    const Coeffs& pk = p[static_cast<std::size_t>(k)];
    const Coeffs& pkm1 = p[static_cast<std::size_t>(k) - 1];
    Coeffs next(pk.size() + 1, 0.0L);
    for (std::size_t i = 0; i < pk.size(); ++i) next[i + 1] += static_cast<long double>(2 * k + 1) * pk[i];
    for (std::size_t i = 0; i < pkm1.size(); ++i) next[i] -= static_cast<long double>(k) * pkm1[i];
    for (auto& c : next) c /= static_cast<long double>(k + 1);
    p.push_back(std::move(next));
  }

  std::vector<Polynomial> out;
  out.reserve(p.size());
  for (const auto& c : p) out.emplace_back(std::vector<double>(c.begin(), c.end()));
  return out;
}

namespace {

struct ExtendedValue {
  long double value;
  long double derivative;
};

ExtendedValue legendre_eval_extended(int n, long double x) {
  if (n == 0) return {1.0L, 0.0L};
  long double prev = 1.0L, cur = x;
  long double dprev = 0.0L, dcur = 1.0L;
  for (int k = 1; k < n; ++k) {
    const long double next = (static_cast<long double>(2 * k + 1) * x * cur - static_cast<long double>(k) * prev) /
                             static_cast<long double>(k + 1);
    // P'_{k+1} = P'_{k-1} + (2k+1) P_k
    const long double dnext = dprev + static_cast<long double>(2 * k + 1) * cur;
    prev = cur;
    cur = next;
    dprev = dcur;
    dcur = dnext;
  }
  return {cur, dcur};
}

}  // namespace

LegendreValue legendre_eval(int n, double x) {
  if (n < 0) throw DomainError("Legendre degree must be nonnegative, got " + std::to_string(n));
  const auto v = legendre_eval_extended(n, x);
  return {static_cast<double>(v.value), static_cast<double>(v.derivative)};
}

RootSet::RootSet(std::vector<double> roots) : roots_(std::move(roots)) {
  const std::size_t n = roots_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double r = roots_[i];
    if (!(r > -1.0 && r < 1.0)) throw DomainError("root " + std::to_string(r) + " is outside (-1, 1)");
    if (i > 0 && !(roots_[i - 1] < r)) throw DomainError("roots must be distinct and strictly ascending");
    if (std::abs(r + roots_[n - 1 - i]) > 1e-14) throw DomainError("root set is not symmetric about zero");
  }
}

namespace detail {

namespace {

long double polish_extended(int n, long double guess, int max_iterations) {
  constexpr long double kStep = 4 * std::numeric_limits<long double>::epsilon();
  long double x = guess;
  for (int it = 0; it < max_iterations; ++it) {
    const auto [value, derivative] = legendre_eval_extended(n, x);
    if (derivative == 0.0L || !std::isfinite(value)) break;
    const long double dx = value / derivative;
    x -= dx;
    if (std::abs(dx) <= kStep) return x;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "Newton iteration for a root of P_%d did not converge from initial guess %.17g", n,
                static_cast<double>(guess));
  throw NumericError(buf);
}

}  // namespace

double polish_legendre_root(int n, double guess, int max_iterations) {
  return static_cast<double>(polish_extended(n, guess, max_iterations));
}

std::vector<ExtendedRoot> positive_legendre_roots(int n) {
  if (n < 1) throw DomainError("legendre_roots needs n >= 1, got " + std::to_string(n));
  const int half = n / 2;
  std::vector<ExtendedRoot> out;
  out.reserve(static_cast<std::size_t>(half));
  for (int k = 1; k <= half; ++k) {
    const double guess = std::cos(std::numbers::pi * (4.0 * k - 1.0) / (4.0 * n + 2.0));
    const long double x = polish_extended(n, guess, kRootMaxIterations);
    out.push_back({x, legendre_eval_extended(n, x).derivative});
  }
  return out;
}

long double legendre_derivative_at_zero(int n) { return legendre_eval_extended(n, 0.0L).derivative; }

RootSet mirrored_roots(int n, const std::vector<ExtendedRoot>& positive) {
  std::vector<double> roots;
  roots.reserve(static_cast<std::size_t>(n));
  for (const auto& r : positive) roots.push_back(-static_cast<double>(r.x));
  if (n % 2 != 0) roots.push_back(0.0);
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) roots.push_back(static_cast<double>(it->x));
  return RootSet(std::move(roots));
}

}  // namespace detail

RootSet legendre_roots(int n) { return detail::mirrored_roots(n, detail::positive_legendre_roots(n)); }

}  // namespace calcverify
