#include "spinchain/chain_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinchain/criteria.hpp"
#include "spinchain/error.hpp"
#include "spinchain/kernels.hpp"

namespace spinchain {

std::string_view model_name(Model model) {
  return model == Model::Heisenberg ? "heisenberg" : "exchange";
}

ChainSpec::ChainSpec(Model model, std::vector<double> couplings, std::vector<double> fields)
    : model_(model), couplings_(std::move(couplings)), fields_(std::move(fields)) {
  if (fields_.empty()) {
    throw ValidationError("fields: a chain needs at least one site");
  }
  if (fields_.size() != couplings_.size() + 1) {
    throw ValidationError("fields: expected " + std::to_string(couplings_.size() + 1) +
                          " entries for " + std::to_string(couplings_.size()) +
                          " couplings, got " + std::to_string(fields_.size()));
  }
  for (std::size_t i = 0; i < couplings_.size(); ++i) {
    if (!(couplings_[i] > 0.0) || !std::isfinite(couplings_[i])) {
      throw ValidationError("couplings[" + std::to_string(i) +
                            "]: must be positive and finite, got " +
                            std::to_string(couplings_[i]));
    }
  }
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (!std::isfinite(fields_[i])) {
      throw ValidationError("fields[" + std::to_string(i) + "]: must be finite");
    }
  }
}

ChainSpec ChainSpec::field_free(Model model, std::vector<double> couplings) {
  std::vector<double> fields(couplings.size() + 1, 0.0);
  return ChainSpec(model, std::move(couplings), std::move(fields));
}

bool ChainSpec::is_field_free() const noexcept {
  return std::all_of(fields_.begin(), fields_.end(), [](double b) { return b == 0.0; });
}

SingleExcitationOperator::SingleExcitationOperator(std::vector<double> diagonal,
                                                   std::vector<double> off_diagonal)
    : diagonal_(std::move(diagonal)), off_diagonal_(std::move(off_diagonal)) {
  if (diagonal_.empty()) throw ValidationError("operator: dimension must be at least 1");
  if (off_diagonal_.size() + 1 != diagonal_.size()) {
    throw ValidationError("operator: off-diagonal must have N-1 entries");
  }
}

double SingleExcitationOperator::norm() const noexcept {
  const std::size_t n = size();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::fabs(diagonal_[i]);
    if (i > 0) row += std::fabs(off_diagonal_[i - 1]);
    if (i + 1 < n) row += std::fabs(off_diagonal_[i]);
    best = std::max(best, row);
  }
  return best;
}

void SingleExcitationOperator::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != size() || y.size() != size()) {
    throw ValidationError("operator apply: vector length mismatch");
  }
  kernels::tridiag_matvec(diagonal_, off_diagonal_, x, y);
}

std::vector<double> SingleExcitationOperator::apply(std::span<const double> x) const {
  std::vector<double> y(size());
  apply(x, y);
  return y;
}

std::vector<double> SingleExcitationOperator::dense() const {
  const std::size_t n = size();
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    m[i * n + i] = diagonal_[i];
    if (i + 1 < n) {
      m[i * n + i + 1] = off_diagonal_[i];
      m[(i + 1) * n + i] = off_diagonal_[i];
    }
  }
  return m;
}

SingleExcitationOperator build_single_excitation_matrix(const ChainSpec& spec) {
  const auto couplings = spec.couplings();
  const auto fields = spec.fields();
  std::vector<double> diagonal(fields.begin(), fields.end());
  std::vector<double> off(couplings.begin(), couplings.end());
  if (spec.model() == Model::Heisenberg) {
    for (std::size_t i = 0; i < couplings.size(); ++i) {
      diagonal[i] -= couplings[i];
      diagonal[i + 1] -= couplings[i];
    }
  }
  return SingleExcitationOperator(std::move(diagonal), std::move(off));
}

SingleExcitationOperator compose_mirror_chain(const MirrorChain& mirror) {
  const double a = mirror.central_coupling;
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw ValidationError("central_coupling: must be non-negative and finite");
  }
  const auto half = build_single_excitation_matrix(mirror.half);
  const std::size_t n = half.size();
  std::vector<double> diagonal(2 * n);
  std::vector<double> off(2 * n - 1);
  const auto hd = half.diagonal();
  const auto ho = half.off_diagonal();
  for (std::size_t i = 0; i < n; ++i) {
    diagonal[i] = hd[i];
    diagonal[2 * n - 1 - i] = hd[i];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    off[i] = ho[i];
    off[2 * n - 2 - i] = ho[i];
  }
  off[n - 1] = a;
  if (mirror.junction_model == Model::Heisenberg) {
    diagonal[n - 1] -= a;
    diagonal[n] -= a;
  }
  return SingleExcitationOperator(std::move(diagonal), std::move(off));
}

ParityBlocks parity_reduce(const SingleExcitationOperator& op, double tol) {
  const std::size_t dim = op.size();
  if (dim % 2 != 0) {
    throw PreconditionError("parity_reduce: dimension " + std::to_string(dim) + " is odd");
  }
  if (!check_centrosymmetry(op, tol * std::max(1.0, op.norm()))) {
    throw PreconditionError("parity_reduce: operator is not centrosymmetric");
  }
  const std::size_t n = dim / 2;
  const auto d = op.diagonal();
  const auto e = op.off_diagonal();
  std::vector<double> diagonal(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<double> off(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n - 1));
  const double central = e[n - 1];

  auto sym_diag = diagonal;
  auto anti_diag = diagonal;
  sym_diag[n - 1] += central;
  anti_diag[n - 1] -= central;
  return ParityBlocks{SingleExcitationOperator(std::move(sym_diag), off),
                      SingleExcitationOperator(std::move(anti_diag), off)};
}

}  // namespace spinchain
