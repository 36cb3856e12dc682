#pragma once

// Mirror-symmetric Hahn chains joined by a weak Heisenberg coupling a: the
// symmetric block revives perfectly at every multiple of pi while the
// antisymmetric block picks up first-order shifts -2a w_n. Choosing 2ak so
// that every 2ak w_n is odd turns the revival into end-to-end transfer at
// t = k pi, up to second-order error.

#include <cstddef>
#include <span>
#include <vector>

#include "spinchain/chain_model.hpp"
#include "spinchain/exact.hpp"

namespace spinchain {

struct PgtPlan {
  long N = 0;          ///< half-chain length
  double epsilon = 0;  ///< target infidelity
  BigRational a;       ///< central coupling, a = L / (2k)
  BigInt k;            ///< t = k pi
  long M = 0;          ///< retained eigenvalues
  BigInt phase_multiplier;  ///< L = 2ak
  bool truncated = false;
  bool fallback_to_full = false;  ///< truncation requested but not beneficial/feasible
  double predicted_fidelity = 0;

  BigRational t_over_pi() const { return BigRational(k); }
};

/// Second-order error model for the Hahn mirror chain of half-length N.
/// Antisymmetric eigenvalues are lambda_n - 2a w_n + 4a^2 s_n with
/// s_n = sum_{m != n} w_n w_m / (lambda_n - lambda_m); with a = L/(2k) the
/// residual phases are pi L^2 s_n / k, so the infidelity is
/// pi^2 L^4 Q / k^2 to leading order, Q = <s^2>/2 - <s>^2/4 (weights w).
struct SecondOrderModel {
  long N = 0;
  std::vector<BigRational> weights;         ///< w_n
  std::vector<BigRational> second_order;    ///< s_n
  BigRational curvature;                    ///< Q
};

SecondOrderModel second_order_model(long N);

/// Fidelity predicted by the second-order eigenvalue model (no eigenvector
/// corrections) for the given multiplier and k.
double predicted_fidelity(const SecondOrderModel& model, const BigInt& L, const BigInt& k);

/// Fraction of the predicted-error budget actually spent, leaving headroom for
/// third-order terms.
inline constexpr double kPlanHeadroom = 0.9;

/// Full-spectrum plan: L = C(2N-2, N-1), k the smallest integer whose leading
/// second-order infidelity is within kPlanHeadroom * epsilon.
/// Throws InfeasibleError unless every phase numerator is odd (N = 2^r),
/// ValidationError for epsilon outside (0, 1).
PgtPlan plan_full_spectrum(long N, double epsilon);

/// Truncated plan: smallest M with 2 C(2N-2, N-M-1)/C(2N-2, N-1) < epsilon/2,
/// L = minimal_phase_multiplier(N, M), k sized for epsilon/2 of second-order
/// error. Falls back to the full-spectrum plan (flagged) when no M < N works.
PgtPlan plan_truncated(long N, double epsilon);

/// Plan with an explicit k, for sweeps over the coupling strength.
PgtPlan make_plan(long N, long M, const BigInt& k, double epsilon = 0.0);

/// The (2N)-site mirror chain a plan describes.
SingleExcitationOperator plan_operator(const PgtPlan& plan);

struct FirstOrderReport {
  std::vector<double> residuals;  ///< lambda_n^- - (lambda_n - 2a w_n)
  double max_residual = 0;
  double max_residual_over_a2 = 0;
};

struct PlanEvaluation {
  double achieved_fidelity = 0;
  FirstOrderReport first_order;
};

struct EvaluationOptions {
  /// Plans with k above this are refused (EvaluationRefused).
  double k_ceiling = 1e12;
};

/// End-to-end fidelity 1 -> 2N of the exact composed operator at t = k pi,
/// with the first-order perturbation check on the antisymmetric block.
PlanEvaluation evaluate_plan(const PgtPlan& plan, const EvaluationOptions& options = {});

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};

LinearFit least_squares_fit(std::span<const double> x, std::span<const double> y);

struct Fig1Row {
  long r = 0;
  long N = 0;
  long M = 0;
  BigInt L;
  double x = 0;  ///< sqrt(N) log N
  double y = 0;  ///< log L
};

struct Fig1Data {
  std::vector<Fig1Row> rows;
  LinearFit fit;
};

/// N = 2^r, M = ceil(sqrt N), L = minimal_phase_multiplier(N, M).
Fig1Data fig1_dataset(std::span<const long> r_values);

struct Fig2Row {
  double a = 0;
  double max_fidelity = 0;
  double argmax_t = 0;
};

struct TimeWindow {
  double begin = 0.0;
  double end = 0.0;
};

/// Default scan window for fig2: four revival periods, [0, 2 pi].
TimeWindow default_fig2_window();

/// Mirror of lm_chain(N) with a Heisenberg central coupling a; maximum
/// end-to-end fidelity over the window for each a. Grid points are independent
/// and are evaluated concurrently.
std::vector<Fig2Row> fig2_dataset(long N, std::span<const double> a_grid,
                                  TimeWindow window = default_fig2_window(),
                                  int points_per_period = 64);

struct LargeAModel {
  SingleExcitationOperator hprime;  ///< antisymmetric block without its last site
  double detached_site_field = 0;   ///< diagonal of the detached site, h_NN - 2a
  double detached_eigenvalue = 0;   ///< eigenvalue of the true block nearest the field
  /// max |mu_m - spec(h')_m| over the remaining antisymmetric eigenvalues.
  double max_deviation = 0;
  bool well_separated = true;       ///< a exceeds the half-chain spectral radius
};

LargeAModel large_a_effective_model(const ChainSpec& half, double a);

struct PhaseCandidate {
  long q = 0;
  double phi = 0;
};

struct PhaseSumReport {
  double trace_difference = 0;  ///< sum lambda^- - sum lambda
  double implied_a = 0;         ///< -trace_difference / 2
  std::vector<PhaseCandidate> candidates;  ///< q = 0..N-1, phi in (-pi, pi]
};

/// (sum lambda^- - sum lambda) t1 = N phi + 2 q pi.
PhaseSumReport phase_sum_rule_check(std::span<const double> half_spectrum,
                                    std::span<const double> anti_spectrum, double t1);

}  // namespace spinchain
