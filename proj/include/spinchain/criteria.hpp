#pragma once

#include <optional>
#include <span>
#include <vector>

#include "spinchain/chain_model.hpp"
#include "spinchain/exact.hpp"

namespace spinchain {

/// Diagonal and off-diagonal palindromic within tol (absolute).
bool check_centrosymmetry(const SingleExcitationOperator& op, double tol);

/// Every consecutive gap times t0/pi is an odd positive integer (within tol).
/// Spectrum must be strictly decreasing.
bool check_pst_spectrum(std::span<const double> spectrum, double t0, double tol = 1e-9);

/// Every consecutive gap times t_r/pi is an even positive integer (within tol).
bool check_revival_spectrum(std::span<const double> spectrum, double t_r, double tol = 1e-9);

/// Exact pretty-good-transfer certificate for an integer spectrum ordered
/// decreasingly. The relations {l : sum l_i lambda_i = 0, sum l_i = 0} form a
/// lattice; the condition holds iff the parity functional sum_i l_{2i}
/// (1-based even positions) vanishes mod 2 on a lattice basis.
struct PgstCertificate {
  bool holds = true;
  std::optional<std::vector<BigInt>> witness;  ///< set iff !holds
  std::vector<int> sign_pattern;               ///< (-1)^{n+1}
  std::vector<BigInt> spectrum;
};

PgstCertificate pgst_certificate(std::span<const BigInt> spectrum);

/// Integer basis of {x in Z^cols : rows * x = 0}, via unimodular column
/// reduction (extended-gcd steps). Basis vectors are returned as rows.
std::vector<std::vector<BigInt>> integer_kernel(const std::vector<std::vector<BigInt>>& rows,
                                                std::size_t cols);

enum class Feasibility { Feasible, Infeasible };

/// Necessary condition for a field-free Heisenberg chain of length N with the
/// linear spectrum 0, -1, ..., -(N-1): N^N >= 4^{N-1} (N-1)!, checked exactly.
Feasibility linear_spectrum_feasibility(long N);

}  // namespace spinchain
