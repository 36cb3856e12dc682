#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace spinchain {

enum class Model { Heisenberg, Exchange };

std::string_view model_name(Model model);

/// Couplings J_1..J_{N-1} and fields B_1..B_N of a length-N chain.
/// Construction validates lengths and positivity of the couplings.
class ChainSpec {
 public:
  ChainSpec(Model model, std::vector<double> couplings, std::vector<double> fields);

  /// All fields zero.
  static ChainSpec field_free(Model model, std::vector<double> couplings);

  Model model() const noexcept { return model_; }
  std::size_t size() const noexcept { return fields_.size(); }
  std::span<const double> couplings() const noexcept { return couplings_; }
  std::span<const double> fields() const noexcept { return fields_; }
  bool is_field_free() const noexcept;

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;

 private:
  Model model_;
  std::vector<double> couplings_;
  std::vector<double> fields_;
};

/// Real symmetric tridiagonal N x N matrix acting on the single-excitation
/// subspace. Only the diagonal and the first off-diagonal are stored.
class SingleExcitationOperator {
 public:
  SingleExcitationOperator(std::vector<double> diagonal, std::vector<double> off_diagonal);

  std::size_t size() const noexcept { return diagonal_.size(); }
  std::span<const double> diagonal() const noexcept { return diagonal_; }
  std::span<const double> off_diagonal() const noexcept { return off_diagonal_; }

  /// Infinity norm (max absolute row sum).
  double norm() const noexcept;

  /// y = h x
  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;

  /// Row-major dense copy, for diagnostics and tests.
  std::vector<double> dense() const;

  friend bool operator==(const SingleExcitationOperator&,
                         const SingleExcitationOperator&) = default;

 private:
  std::vector<double> diagonal_;
  std::vector<double> off_diagonal_;
};

/// Two copies of `half` joined through a central coupling a, giving a chain
/// of length 2N with couplings J_1..J_{N-1}, a, J_{N-1}..J_1.
struct MirrorChain {
  ChainSpec half;
  double central_coupling = 0.0;
  Model junction_model = Model::Heisenberg;
};

/// Exchange: diagonal B_n, off-diagonal J_n.
/// Heisenberg: diagonal B_n - J_{n-1} - J_n, off-diagonal J_n.
SingleExcitationOperator build_single_excitation_matrix(const ChainSpec& spec);

/// A Heisenberg junction also adds -a to the two central diagonal entries.
/// A zero central coupling is allowed and yields two decoupled halves.
SingleExcitationOperator compose_mirror_chain(const MirrorChain& mirror);

struct ParityBlocks {
  SingleExcitationOperator symmetric;
  SingleExcitationOperator antisymmetric;
};

/// Projects a centrosymmetric 2N x 2N operator onto (|n> +- |2N+1-n>)/sqrt(2).
/// The central coupling c moves into the last diagonal entry of each block:
/// +c for the symmetric block, -c for the antisymmetric one. For a
/// Heisenberg-junction mirror chain this makes the symmetric block equal to
/// the half-chain operator and the antisymmetric block the half-chain
/// operator with -2a added at site N.
///
/// Throws PreconditionError for odd dimension or non-centrosymmetric input
/// (relative tolerance `tol` against the operator norm).
ParityBlocks parity_reduce(const SingleExcitationOperator& op, double tol = 1e-12);

}  // namespace spinchain
