#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "spinchain/chain_model.hpp"
#include "spinchain/phase.hpp"

namespace spinchain {

/// Site label, 1-based as in the physics convention (site 1 .. site N).
struct Site {
  std::size_t label;
};

/// Eigenvalues in decreasing order with the matching orthonormal eigenvectors.
/// Vector n is stored contiguously: component(n, i) = <i|lambda_n>.
class EigenSystem {
 public:
  EigenSystem(std::vector<double> eigenvalues, std::vector<double> vectors);

  std::size_t size() const noexcept { return eigenvalues_.size(); }
  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
  std::span<const double> vector(std::size_t n) const {
    return std::span<const double>(vectors_).subspan(n * size(), size());
  }
  /// <site|lambda_n>, both indices 0-based.
  double component(std::size_t n, std::size_t site) const { return vectors_[n * size() + site]; }

 private:
  std::vector<double> eigenvalues_;
  std::vector<double> vectors_;
};

/// Sturm-sequence bisection for the eigenvalues, inverse iteration for the
/// eigenvectors. Negligible couplings split the matrix into independent blocks;
/// close eigenvalues inside a block are reorthogonalized.
EigenSystem eigendecompose(const SingleExcitationOperator& op);

/// Eigenvalues only (decreasing).
std::vector<double> eigenvalues(const SingleExcitationOperator& op);

/// max_n ||h v_n - lambda_n v_n||
double max_residual(const SingleExcitationOperator& op, const EigenSystem& es);

/// max_{m,n} |<v_m|v_n> - delta_mn|
double orthonormality_defect(const EigenSystem& es);

/// <to| e^{-i h t} |from>
std::complex<double> transfer_amplitude(const EigenSystem& es, Site from, Site to, const Time& t);

/// |<to| e^{-i h t} |from>|^2
double transfer_fidelity(const EigenSystem& es, Site from, Site to, const Time& t);

struct Revival {
  double fidelity;
  double phase;  ///< arg of the return amplitude in (-pi, pi]; 0 when undefined
  bool phase_defined;
};

Revival revival_fidelity(const EigenSystem& es, Site site, const Time& t);

struct SearchOptions {
  /// Grid density relative to the fastest relative oscillation
  /// (lambda_max - lambda_min).
  int points_per_period = 64;
  /// Grid peaks within this distance of the threshold are polished.
  double polish_window = 5e-3;
};

/// Earliest time in [0, t_max] at which the fidelity reaches `threshold`, from
/// a uniform scan with golden-section polishing of near-threshold peaks and
/// bisection of the first crossing. Heuristic, not a certificate.
std::optional<double> earliest_time_to_fidelity(const EigenSystem& es, Site from, Site to,
                                                double threshold, double t_max,
                                                const SearchOptions& options = {});

struct SweepPoint {
  double t;
  double fidelity;
};

/// Pointwise fidelity over t_grid, in grid order. Uniformly spaced grids are
/// evaluated with the vectorized phasor recurrence.
std::vector<SweepPoint> fidelity_sweep(const EigenSystem& es, Site from, Site to,
                                       std::span<const double> t_grid);

/// Fidelities at t0 + j dt for j = 0..count-1.
std::vector<double> uniform_fidelity_sweep(const EigenSystem& es, Site from, Site to, double t0,
                                           double dt, std::size_t count);

/// Maximum of the fidelity over [t_begin, t_end]: uniform scan at the given
/// density, then golden-section polish around the best grid point.
SweepPoint max_fidelity_in_window(const EigenSystem& es, Site from, Site to, double t_begin,
                                  double t_end, int points_per_period = 64);

}  // namespace spinchain
