#pragma once

// Exact integer and rational arithmetic for the number-theoretic side of
// state transfer: eigenvector overlaps of centrosymmetric chains with integer
// spectra, 2-adic valuations, and odd-phase multipliers.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace spinchain {

using BigInt = mpz_class;
using BigRational = mpq_class;  // always kept canonical (reduced, positive denominator)

std::vector<BigInt> to_big(std::span<const std::int64_t> values);
std::string to_string(const BigInt& x);
/// "p/q", or "p" when q = 1.
std::string to_string(const BigRational& x);

/// C(n, k) for 0 <= k <= n, zero otherwise (including negative k).
BigInt binomial(long n, long k);

/// Squared first-site overlaps of the unique centrosymmetric chain with the
/// given (ordered) spectrum: overlap_n = R (-1)^{n+1} / prod_{m != n}(lambda_n - lambda_m).
struct ExactOverlapTable {
  std::vector<BigInt> spectrum;
  std::vector<BigRational> overlaps;
  BigRational normalizer;  ///< R
  /// spectrum[0] == 0 and overlaps[0] == 1/N: necessary for a field-free
  /// Heisenberg chain, whose null vector is uniform.
  bool uniform_null_vector = false;
};

/// Throws ValidationError on duplicates, NotRealizableError when the ordering
/// yields a non-positive overlap (i.e. the input is not strictly decreasing).
ExactOverlapTable exact_overlaps(std::span<const BigInt> spectrum);

/// nu_2(numerator) - nu_2(denominator). Throws ValidationError on zero.
long two_adic_valuation(const BigRational& x);
long two_adic_valuation(const BigInt& x);

struct Verdict {
  enum class Kind { Impossible, NotExcluded };
  Kind kind;
  std::string reason;
  std::map<std::string, std::string> witness;  ///< exact values as decimal strings

  bool impossible() const noexcept { return kind == Kind::Impossible; }
};

/// End-to-end PST check for a field-free Heisenberg chain with an integer
/// spectrum in PST form (max eigenvalue 0, odd consecutive gaps). PST would
/// force the null-vector overlap to equal 1/N.
Verdict verify_no_pst(std::span<const BigInt> spectrum);

/// Closed form of the null-vector overlap for the N=4 spectrum
/// (0, -(2a+1), -2b, -(2c+1)): -(2a+1-2b)(2c+1-2b) / (8 b (a+c+1-b)).
BigRational n4_overlap_formula(long a, long b, long c);

/// C(2N-2, N-n) - C(2N-2, N-n-1): the numerator of the Hahn-chain end overlap.
BigInt phase_numerator(long N, long n);

/// Hahn-chain end overlap |<lambda_n|N>|^2 in factorial form
/// (2n-1)(N-1)!^2 / ((N+n-1)! (N-n)!).
BigRational binomial_overlap_factorial(long N, long n);
/// Same overlap in binomial-difference form, phase_numerator / C(2N-2, N-1).
BigRational binomial_overlap_difference(long N, long n);
/// Factorial form, after checking it agrees with the difference form.
BigRational binomial_overlap(long N, long n);

/// True iff phase_numerator(N, n) is odd for every n = 1..M.
bool kummer_odd_check(long N, long M);

/// Smallest positive L such that L * overlap_n is an odd integer for all
/// n = 1..M (Hahn-chain overlaps). Empty when no such L exists.
std::optional<BigInt> minimal_phase_multiplier(long N, long M);

/// 2-adic obstruction when the symmetric block has even eigenvalues and the
/// reduced antisymmetric chain odd ones: the null overlap has valuation at
/// most -(N-1) and can equal 1/N only for N = 2.
Verdict large_a_no_go(long N);

/// prod(odd_spectrum) / prod(even_spectrum without its leading 0).
BigRational large_a_null_overlap(std::span<const BigInt> even_spectrum,
                                 std::span<const BigInt> odd_spectrum);

}  // namespace spinchain
