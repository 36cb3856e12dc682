#pragma once

#include <span>
#include <vector>

#include "spinchain/chain_model.hpp"
#include "spinchain/exact.hpp"

namespace spinchain {

/// Field-free Heisenberg chain with J_n = n(N-n). Spectrum {-n(n-1)}, perfect
/// revival of the end sites at t = pi with zero phase.
ChainSpec hahn_chain(long N);

/// {-n(n-1)} for n = 1..N, decreasing.
std::vector<BigInt> hahn_spectrum(long N);

/// |<lambda_n|N>|^2 for the Hahn chain, n = 1..N, exact.
std::vector<BigRational> hahn_overlaps(long N);

/// Exchange chain, zero diagonal, J_n^2 = n^2 (N-n)(N+n) / ((2n-1)(2n+1)).
/// Spectrum {-(N-1), -(N-3), ..., N-1}, every first-site overlap 1/N.
/// Not field-free Heisenberg; illustrative only.
ChainSpec uniform_overlap_chain(long N);

/// Exchange chain, zero diagonal, J_n = sqrt(n(2N-n-1)) for n < N-1 and
/// J_{N-1} = sqrt(2N(N-1)). Both h and h' (h without its last site) revive at
/// pi/2 with relative phase pi. Not field-free Heisenberg; illustrative only.
ChainSpec lm_chain(long N);

struct Reconstruction {
  SingleExcitationOperator op;
  /// Largest |d_i - d_{N+1-i}| and |e_i - e_{N-i}|.
  double centrosymmetry_defect = 0.0;
  /// Diagonal equals -(J_{n-1} + J_n) within tolerance (uniform null vector).
  bool field_free_heisenberg = false;
};

/// The centrosymmetric Jacobi matrix with the given strictly decreasing
/// spectrum. First-row weights come from the centrosymmetric overlap formula;
/// a Lanczos recurrence with full reorthogonalization rebuilds the matrix.
/// Throws ValidationError for repeated eigenvalues, NotRealizableError if a
/// weight is not positive.
Reconstruction inverse_eigenvalue_persymmetric(std::span<const double> spectrum,
                                               double classify_tol = 1e-8);

}  // namespace spinchain
