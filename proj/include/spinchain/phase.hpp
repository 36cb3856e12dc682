#pragma once

#include <gmpxx.h>

#include <variant>

namespace spinchain {

/// Evolution time. Either a plain double, or an exact rational multiple of pi
/// (the natural unit for revival and transfer times of integer spectra).
class Time {
 public:
  Time(double t) : value_(t) {}  // NOLINT(google-explicit-constructor)

  static Time multiple_of_pi(mpq_class tau) { return Time(std::move(tau)); }

  bool is_pi_multiple() const noexcept { return std::holds_alternative<mpq_class>(value_); }
  const mpq_class& over_pi() const { return std::get<mpq_class>(value_); }

  /// Nearest double value of t.
  double approx() const;

 private:
  explicit Time(mpq_class tau) : value_(std::move(tau)) {}
  std::variant<double, mpq_class> value_;
};

/// Plain double arithmetic is used for |t| up to this value; above it the
/// product lambda t is reduced modulo 2 pi in extended precision.
inline constexpr double kExtendedPhaseThreshold = 1e6;

/// Bits of precision for extended phase reduction. Reads
/// SPINCHAIN_PRECISION_BITS once (default 256, clamped to >= 128).
long phase_precision_bits();

/// lambda * t reduced to (-pi, pi]. Exact for pi-multiples (lambda is taken as
/// the exact binary value of the double); MPFR-based above the threshold.
double reduced_phase(double lambda, const Time& t);

/// Wraps an angle to (-pi, pi].
double wrap_phase(double angle);

}  // namespace spinchain
