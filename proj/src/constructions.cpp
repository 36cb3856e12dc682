#include "spinchain/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinchain/error.hpp"
#include "spinchain/kernels.hpp"

namespace spinchain {

namespace {

void require_length(long N, const char* what) {
  if (N < 2) throw ValidationError(std::string(what) + ": need N >= 2, got " + std::to_string(N));
}

}  // namespace

ChainSpec hahn_chain(long N) {
  require_length(N, "hahn_chain");
  std::vector<double> couplings;
  for (long n = 1; n < N; ++n) couplings.push_back(static_cast<double>(n * (N - n)));
  return ChainSpec::field_free(Model::Heisenberg, std::move(couplings));
}

std::vector<BigInt> hahn_spectrum(long N) {
  require_length(N, "hahn_spectrum");
  std::vector<BigInt> out;
  for (long n = 1; n <= N; ++n) out.emplace_back(-n * (n - 1));
  return out;
}

std::vector<BigRational> hahn_overlaps(long N) {
  require_length(N, "hahn_overlaps");
  std::vector<BigRational> out;
  for (long n = 1; n <= N; ++n) out.push_back(binomial_overlap(N, n));
  return out;
}

ChainSpec uniform_overlap_chain(long N) {
  require_length(N, "uniform_overlap_chain");
  std::vector<double> couplings;
  for (long n = 1; n < N; ++n) {
    const double nn = static_cast<double>(n);
    const double num = nn * nn * static_cast<double>(N - n) * static_cast<double>(N + n);
    couplings.push_back(std::sqrt(num / ((2.0 * nn - 1.0) * (2.0 * nn + 1.0))));
  }
  return ChainSpec::field_free(Model::Exchange, std::move(couplings));
}

ChainSpec lm_chain(long N) {
  require_length(N, "lm_chain");
  std::vector<double> couplings;
  for (long n = 1; n < N - 1; ++n) {
    couplings.push_back(std::sqrt(static_cast<double>(n * (2 * N - n - 1))));
  }
  couplings.push_back(std::sqrt(2.0 * static_cast<double>(N) * static_cast<double>(N - 1)));
  return ChainSpec::field_free(Model::Exchange, std::move(couplings));
}

Reconstruction inverse_eigenvalue_persymmetric(std::span<const double> spectrum,
                                               double classify_tol) {
  const std::size_t n = spectrum.size();
  if (n == 0) throw ValidationError("spectrum: empty");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (spectrum[i] == spectrum[i + 1]) {
      throw ValidationError("spectrum: duplicate eigenvalue " + std::to_string(spectrum[i]));
    }
  }

  // w_n = R (-1)^{n+1} / prod_{m != n}(lambda_n - lambda_m), accumulated in
  // log form to stay in range.
  std::vector<double> log_w(n);
  for (std::size_t i = 0; i < n; ++i) {
    double log_abs = 0.0;
    int sign = (i % 2 == 0) ? 1 : -1;
    for (std::size_t m = 0; m < n; ++m) {
      if (m == i) continue;
      const double diff = spectrum[i] - spectrum[m];
      log_abs += std::log(std::fabs(diff));
      if (diff < 0.0) sign = -sign;
    }
    if (sign <= 0) {
      throw NotRealizableError("spectrum not realizable as centrosymmetric chain: weight " +
                               std::to_string(i + 1) + " is not positive");
    }
    log_w[i] = -log_abs;
  }
  const double shift = *std::max_element(log_w.begin(), log_w.end());
  std::vector<double> start(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    start[i] = std::exp(log_w[i] - shift);
    total += start[i];
  }
  for (double& s : start) s = std::sqrt(s / total);

  // Lanczos on diag(spectrum) from the weight vector.
  std::vector<double> diagonal(n), off(n > 0 ? n - 1 : 0);
  std::vector<std::vector<double>> basis;
  basis.push_back(start);
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& q = basis[j];
    for (std::size_t i = 0; i < n; ++i) w[i] = spectrum[i] * q[i];
    diagonal[j] = kernels::dot(q, w);
    if (j + 1 == n) break;
    // Two passes of full reorthogonalization.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) kernels::axpy(-kernels::dot(b, w), b, w);
    }
    const double beta = std::sqrt(kernels::dot(w, w));
    if (!(beta > 0.0)) throw NotRealizableError("inverse eigenvalue problem: Lanczos breakdown");
    off[j] = beta;
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = w[i] / beta;
    basis.push_back(std::move(next));
  }

  Reconstruction out{SingleExcitationOperator(diagonal, off)};
  double defect = 0.0;
  for (std::size_t i = 0; i < n / 2; ++i) {
    defect = std::max(defect, std::fabs(diagonal[i] - diagonal[n - 1 - i]));
  }
  for (std::size_t i = 0; i < off.size() / 2; ++i) {
    defect = std::max(defect, std::fabs(off[i] - off[off.size() - 1 - i]));
  }
  out.centrosymmetry_defect = defect;

  const double scale = std::max(1.0, out.op.norm());
  bool heisenberg = true;
  for (std::size_t i = 0; i < n; ++i) {
    double expected = 0.0;
    if (i > 0) expected -= off[i - 1];
    if (i + 1 < n) expected -= off[i];
    if (std::fabs(diagonal[i] - expected) > classify_tol * scale) heisenberg = false;
  }
  out.field_free_heisenberg = heisenberg;
  return out;
}

}  // namespace spinchain
