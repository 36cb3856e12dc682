#include "spinchain/phase.hpp"

#include <mpfr.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

namespace spinchain {

double Time::approx() const {
  if (const auto* t = std::get_if<double>(&value_)) return *t;
  return std::get<mpq_class>(value_).get_d() * std::numbers::pi;
}

long phase_precision_bits() {
  static const long bits = [] {
    long value = 256;
    if (const char* env = std::getenv("SPINCHAIN_PRECISION_BITS")) {
      char* end = nullptr;
      const long parsed = std::strtol(env, &end, 10);
      if (end != env && *end == '\0') value = parsed;
    }
    return value < 128 ? 128L : value;
  }();
  return bits;
}

double wrap_phase(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(angle, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

namespace {

// lambda * tau mod 2 in (-1, 1], exactly.
double reduce_pi_multiple(double lambda, const mpq_class& tau) {
  mpq_class x(lambda);
  x *= tau;
  mpz_class two_floor;
  mpz_fdiv_q(two_floor.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  // x - 2 * floor(x / 2)
  mpz_class q;
  mpz_fdiv_q_2exp(q.get_mpz_t(), two_floor.get_mpz_t(), 1);
  mpq_class r = x - mpq_class(q * 2);
  if (r > 1) r -= 2;
  return r.get_d();
}

double reduce_extended(double lambda, double t) {
  const long bits = phase_precision_bits();
  mpfr_t x, two_pi, r;
  mpfr_inits2(bits, x, two_pi, r, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(x, lambda, MPFR_RNDN);
  mpfr_mul_d(x, x, t, MPFR_RNDN);
  mpfr_const_pi(two_pi, MPFR_RNDN);
  mpfr_mul_2ui(two_pi, two_pi, 1, MPFR_RNDN);
  mpfr_remainder(r, x, two_pi, MPFR_RNDN);
  const double out = mpfr_get_d(r, MPFR_RNDN);
  mpfr_clears(x, two_pi, r, static_cast<mpfr_ptr>(nullptr));
  return wrap_phase(out);
}

}  // namespace

double reduced_phase(double lambda, const Time& t) {
  if (t.is_pi_multiple()) {
    return wrap_phase(std::numbers::pi * reduce_pi_multiple(lambda, t.over_pi()));
  }
  const double tv = t.approx();
  const double product = lambda * tv;
  if (std::fabs(tv) <= kExtendedPhaseThreshold) return wrap_phase(product);
  return reduce_extended(lambda, tv);
}

}  // namespace spinchain
