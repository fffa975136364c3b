#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace calcverify {

inline constexpr int kCordicMaxIterations = 60;
inline constexpr int kDefaultCordicIterations = 40;

/// |theta| above this is rejected: reducing it modulo pi would leave too few
/// significant bits.
inline constexpr double kCordicMaxArgument = 1e15;

/// Precomputed arctan(2^-k) angles and the matching gain
/// prod_{k<K} 1/sqrt(1 + 2^-2k). The only place the library calls the
/// host's atan/sqrt for CORDIC.
class CordicTable {
 public:
  explicit CordicTable(int iterations);

  int iterations() const noexcept { return static_cast<int>(angles_.size()); }
  std::span<const double> angles() const noexcept { return angles_; }
  double gain() const noexcept { return gain_; }

 private:
  std::vector<double> angles_;
  double gain_;
};

/// Throws CapabilityError unless 1 <= iterations <= kCordicMaxIterations.
CordicTable cordic_table(int iterations);

struct SinCos {
  double sin;
  double cos;
};

inline double scale_pow2(double v, int exponent) noexcept { return std::ldexp(v, exponent); }

/// Circular-mode CORDIC rotation: drives z toward 0 while rotating (x, y)
/// by +-arctan(2^-k). The body only adds, subtracts, compares and rescales by
/// powers of two through scale_pow2 (found by ADL for custom Real types), so
/// it can be instantiated with an instrumented number type.
template <typename Real>
void cordic_rotate(Real& x, Real& y, Real& z, std::span<const double> angles) {
  const Real zero(0.0);
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const int shift = -static_cast<int>(k);
    const Real x_shifted = scale_pow2(x, shift);
    const Real y_shifted = scale_pow2(y, shift);
    const Real angle(angles[k]);
    if (!(z < zero)) {
      x = x - y_shifted;
      y = y + x_shifted;
      z = z - angle;
    } else {
      x = x + y_shifted;
      y = y - x_shifted;
      z = z + angle;
    }
  }
}

/// sin and cos of theta (radians) by CORDIC after folding theta into
/// [-pi/2, pi/2]. The start vector is (gain, 0), so no multiplication
/// follows the rotations. DomainError for non-finite theta or
/// |theta| > kCordicMaxArgument.
SinCos cordic_sincos(double theta, const CordicTable& table);

/// Same, with a shared kDefaultCordicIterations table.
SinCos cordic_sincos(double theta);

}  // namespace calcverify
