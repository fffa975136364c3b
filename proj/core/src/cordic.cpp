#include "calcverify/cordic.hpp"

#include <cstdio>
#include <numbers>
#include <string>

#include "calcverify/errors.hpp"

namespace calcverify {

CordicTable::CordicTable(int iterations) {
  if (iterations < 1 || iterations > kCordicMaxIterations) {
    throw CapabilityError("CORDIC supports 1.." + std::to_string(kCordicMaxIterations) + " iterations, got " +
                          std::to_string(iterations));
  }
  angles_.resize(static_cast<std::size_t>(iterations));
  double gain = 1.0;
  for (int k = 0; k < iterations; ++k) {
    const double t = std::ldexp(1.0, -k);
    angles_[static_cast<std::size_t>(k)] = std::atan(t);
    gain /= std::sqrt(1.0 + t * t);
  }
  angles_[0] = std::numbers::pi / 4;
  gain_ = gain;
}

CordicTable cordic_table(int iterations) { return CordicTable(iterations); }

SinCos cordic_sincos(double theta, const CordicTable& table) {
  if (!std::isfinite(theta) || std::abs(theta) > kCordicMaxArgument) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "CORDIC argument %.17g is outside [-1e15, 1e15]", theta);
    throw DomainError(buf);
  }

  // theta = q*pi + r with |r| <= pi/2; pi split in two parts so the
  // reduction stays accurate for large q.
  constexpr double kPiHi = std::numbers::pi;
  constexpr double kPiLo = 1.2246467991473531772e-16;
  const double q = std::nearbyint(theta / kPiHi);
  double r = std::fma(-q, kPiHi, theta);
  r = std::fma(-q, kPiLo, r);
  const bool flip = std::fmod(q, 2.0) != 0.0;

  double x = table.gain();
  double y = 0.0;
  double z = r;
  cordic_rotate(x, y, z, table.angles());

  if (flip) return {-y, -x};
  return {y, x};
}

SinCos cordic_sincos(double theta) {
  static const CordicTable table(kDefaultCordicIterations);
  return cordic_sincos(theta, table);
}

}  // namespace calcverify
