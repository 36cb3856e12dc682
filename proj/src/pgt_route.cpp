#include "spinchain/pgt_route.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <future>
#include <numbers>
#include <string>
#include <thread>

#include "spinchain/constructions.hpp"
#include "spinchain/error.hpp"
#include "spinchain/phase.hpp"
#include "spinchain/spectral.hpp"

namespace spinchain {

namespace {

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ValidationError("epsilon: must lie strictly between 0 and 1");
  }
}

// x mod 2 in (-1, 1], exactly.
BigRational reduce_mod2(const BigRational& x) {
  BigInt floor_half;
  mpz_fdiv_q(floor_half.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  mpz_fdiv_q_2exp(floor_half.get_mpz_t(), floor_half.get_mpz_t(), 1);
  BigRational r = x - BigRational(floor_half * 2);
  if (r > 1) r -= 2;
  return r;
}

// Smallest k with pi^2 L^4 Q / k^2 <= budget, computed in extended precision.
BigInt size_k(const BigRational& curvature, const BigInt& L, double budget) {
  const long bits = phase_precision_bits();
  mpfr_t q, pi, lsq, result;
  mpfr_inits2(bits, q, pi, lsq, result, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(q, curvature.get_mpq_t(), MPFR_RNDN);
  mpfr_div_d(q, q, budget, MPFR_RNDN);
  mpfr_sqrt(q, q, MPFR_RNDN);
  mpfr_const_pi(pi, MPFR_RNDN);
  mpfr_set_z(lsq, L.get_mpz_t(), MPFR_RNDN);
  mpfr_sqr(lsq, lsq, MPFR_RNDN);
  mpfr_mul(result, q, pi, MPFR_RNDN);
  mpfr_mul(result, result, lsq, MPFR_RNDN);
  mpfr_ceil(result, result);
  BigInt k;
  mpfr_get_z(k.get_mpz_t(), result, MPFR_RNDN);
  mpfr_clears(q, pi, lsq, result, static_cast<mpfr_ptr>(nullptr));
  return k < 1 ? BigInt(1) : k;
}

double log_big(const BigInt& x) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
}

PgtPlan assemble(long N, long M, const BigInt& L, const BigInt& k, double epsilon,
                 const SecondOrderModel& model) {
  PgtPlan plan;
  plan.N = N;
  plan.epsilon = epsilon;
  plan.M = M;
  plan.k = k;
  plan.phase_multiplier = L;
  plan.a = BigRational(L, BigInt(2 * k));
  plan.a.canonicalize();
  plan.predicted_fidelity = predicted_fidelity(model, L, k);
  return plan;
}

}  // namespace

SecondOrderModel second_order_model(long N) {
  if (N < 2) throw ValidationError("second_order_model: need N >= 2");
  SecondOrderModel model;
  model.N = N;
  model.weights = hahn_overlaps(N);
  const auto lambda = hahn_spectrum(N);
  for (long n = 0; n < N; ++n) {
    BigRational s = 0;
    for (long m = 0; m < N; ++m) {
      if (m == n) continue;
      s += model.weights[n] * model.weights[m] / BigRational(lambda[n] - lambda[m]);
    }
    model.second_order.push_back(s);
  }
  BigRational mean = 0;
  BigRational mean_sq = 0;
  for (long n = 0; n < N; ++n) {
    mean += model.weights[n] * model.second_order[n];
    mean_sq += model.weights[n] * model.second_order[n] * model.second_order[n];
  }
  model.curvature = mean_sq / 2 - mean * mean / 4;
  return model;
}

double predicted_fidelity(const SecondOrderModel& model, const BigInt& L, const BigInt& k) {
  // Symmetric block: even eigenvalues, phase 1 at t = k pi. Antisymmetric block:
  // phase of (lambda_n - 2a w_n + 4a^2 s_n) k pi with a = L / (2k).
  std::complex<double> anti = 0.0;
  BigRational l_sq_over_k(BigInt(L * L), k);
  l_sq_over_k.canonicalize();
  for (std::size_t n = 0; n < model.weights.size(); ++n) {
    const BigRational x = -BigRational(L) * model.weights[n] + l_sq_over_k * model.second_order[n];
    const double phase = std::numbers::pi * reduce_mod2(x).get_d();
    anti += model.weights[n].get_d() * std::polar(1.0, -phase);
  }
  const std::complex<double> amp = 0.5 * (1.0 - anti);
  return std::min(1.0, std::norm(amp));
}

PgtPlan plan_full_spectrum(long N, double epsilon) {
  require_epsilon(epsilon);
  if (N < 2) throw ValidationError("N: need N >= 2");
  if (!kummer_odd_check(N, N)) {
    throw InfeasibleError("N=" + std::to_string(N) +
                          ": some phase numerator C(2N-2,N-n)-C(2N-2,N-n-1) is even, so no "
                          "multiplier makes every phase odd (use N = 2^r)");
  }
  const BigInt L = binomial(2 * N - 2, N - 1);
  const auto model = second_order_model(N);
  const BigInt k = size_k(model.curvature, L, kPlanHeadroom * epsilon);
  return assemble(N, N, L, k, epsilon, model);
}

PgtPlan plan_truncated(long N, double epsilon) {
  require_epsilon(epsilon);
  if (N < 2) throw ValidationError("N: need N >= 2");
  const BigInt central = binomial(2 * N - 2, N - 1);
  const BigRational half_budget(epsilon / 2.0);
  for (long M = 1; M < N; ++M) {
    BigRational lost(BigInt(2 * binomial(2 * N - 2, N - M - 1)), central);
    lost.canonicalize();
    if (lost >= half_budget) continue;
    const auto L = minimal_phase_multiplier(N, M);
    if (!L) continue;
    const auto model = second_order_model(N);
    const BigInt k = size_k(model.curvature, *L, kPlanHeadroom * epsilon / 2.0);
    PgtPlan plan = assemble(N, M, *L, k, epsilon, model);
    plan.truncated = true;
    return plan;
  }
  PgtPlan plan = plan_full_spectrum(N, epsilon);
  plan.fallback_to_full = true;
  return plan;
}

PgtPlan make_plan(long N, long M, const BigInt& k, double epsilon) {
  if (k < 1) throw ValidationError("k: must be positive");
  const auto L = minimal_phase_multiplier(N, M);
  if (!L) {
    throw InfeasibleError("no odd-phase multiplier for N=" + std::to_string(N) +
                          ", M=" + std::to_string(M));
  }
  PgtPlan plan = assemble(N, M, *L, k, epsilon, second_order_model(N));
  plan.truncated = M < N;
  return plan;
}

SingleExcitationOperator plan_operator(const PgtPlan& plan) {
  return compose_mirror_chain(MirrorChain{hahn_chain(plan.N), plan.a.get_d(), Model::Heisenberg});
}

PlanEvaluation evaluate_plan(const PgtPlan& plan, const EvaluationOptions& options) {
  if (plan.k.get_d() > options.k_ceiling) {
    throw EvaluationRefused("k = " + to_string(plan.k) + " exceeds the evaluation ceiling " +
                            to_string(BigInt(options.k_ceiling)));
  }
  const auto op = plan_operator(plan);
  const auto es = eigendecompose(op);
  PlanEvaluation out;
  out.achieved_fidelity = transfer_fidelity(es, Site{1}, Site{op.size()},
                                            Time::multiple_of_pi(plan.t_over_pi()));

  const auto blocks = parity_reduce(op);
  const auto anti = eigenvalues(blocks.antisymmetric);
  const auto weights = hahn_overlaps(plan.N);
  const auto lambda = hahn_spectrum(plan.N);
  const double a = plan.a.get_d();
  for (long n = 0; n < plan.N; ++n) {
    const double first_order = lambda[n].get_d() - 2.0 * a * weights[n].get_d();
    out.first_order.residuals.push_back(anti[n] - first_order);
    out.first_order.max_residual =
        std::max(out.first_order.max_residual, std::fabs(out.first_order.residuals.back()));
  }
  out.first_order.max_residual_over_a2 = out.first_order.max_residual / (a * a);
  return out;
}

LinearFit least_squares_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ValidationError("least_squares_fit: need two equally long series of >= 2 points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxx > 0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

Fig1Data fig1_dataset(std::span<const long> r_values) {
  Fig1Data data;
  std::vector<double> xs, ys;
  for (long r : r_values) {
    if (r < 1 || r > 20) throw ValidationError("fig1: exponent r must lie in 1..20");
    Fig1Row row;
    row.r = r;
    row.N = 1L << r;
    row.M = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(row.N))));
    const auto L = minimal_phase_multiplier(row.N, row.M);
    if (!L) throw InfeasibleError("fig1: no odd-phase multiplier at N=" + std::to_string(row.N));
    row.L = *L;
    const double nd = static_cast<double>(row.N);
    row.x = std::sqrt(nd) * std::log(nd);
    row.y = log_big(row.L);
    xs.push_back(row.x);
    ys.push_back(row.y);
    data.rows.push_back(std::move(row));
  }
  if (xs.size() >= 2) data.fit = least_squares_fit(xs, ys);
  return data;
}

TimeWindow default_fig2_window() { return {0.0, 2.0 * std::numbers::pi}; }

std::vector<Fig2Row> fig2_dataset(long N, std::span<const double> a_grid, TimeWindow window,
                                  int points_per_period) {
  const ChainSpec half = lm_chain(N);
  const auto evaluate = [&half, window, points_per_period](double a) {
    const auto op = compose_mirror_chain(MirrorChain{half, a, Model::Heisenberg});
    const auto es = eigendecompose(op);
    const auto best = max_fidelity_in_window(es, Site{1}, Site{op.size()}, window.begin,
                                             window.end, points_per_period);
    return Fig2Row{a, best.fidelity, best.t};
  };
  std::vector<Fig2Row> rows(a_grid.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < a_grid.size(); start += workers) {
    std::vector<std::future<Fig2Row>> batch;
    for (std::size_t i = start; i < std::min(a_grid.size(), start + workers); ++i) {
      batch.push_back(std::async(std::launch::async, evaluate, a_grid[i]));
    }
    for (std::size_t i = 0; i < batch.size(); ++i) rows[start + i] = batch[i].get();
  }
  return rows;
}

LargeAModel large_a_effective_model(const ChainSpec& half, double a) {
  if (half.size() < 2) throw ValidationError("large_a_effective_model: half chain needs N >= 2");
  const auto h = build_single_excitation_matrix(half);
  const std::size_t n = h.size();
  std::vector<double> anti_diag(h.diagonal().begin(), h.diagonal().end());
  anti_diag[n - 1] -= 2.0 * a;
  const std::vector<double> off(h.off_diagonal().begin(), h.off_diagonal().end());
  const SingleExcitationOperator anti(anti_diag, off);

  LargeAModel model{SingleExcitationOperator(
      std::vector<double>(anti_diag.begin(), anti_diag.end() - 1),
      std::vector<double>(off.begin(), off.end() - 1))};
  model.detached_site_field = anti_diag[n - 1];
  const auto half_values = eigenvalues(h);
  const double radius = std::max(std::fabs(half_values.front()), std::fabs(half_values.back()));
  model.well_separated = a > radius;

  auto mu = eigenvalues(anti);
  const auto nearest = std::min_element(mu.begin(), mu.end(), [&](double x, double y) {
    return std::fabs(x - model.detached_site_field) < std::fabs(y - model.detached_site_field);
  });
  model.detached_eigenvalue = *nearest;
  mu.erase(nearest);
  const auto reduced = eigenvalues(model.hprime);
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    model.max_deviation = std::max(model.max_deviation, std::fabs(mu[i] - reduced[i]));
  }
  return model;
}

PhaseSumReport phase_sum_rule_check(std::span<const double> half_spectrum,
                                    std::span<const double> anti_spectrum, double t1) {
  if (half_spectrum.size() != anti_spectrum.size() || half_spectrum.empty()) {
    throw ValidationError("phase_sum_rule_check: spectra must have equal nonzero length");
  }
  PhaseSumReport report;
  double sum_half = 0, sum_anti = 0;
  for (double x : half_spectrum) sum_half += x;
  for (double x : anti_spectrum) sum_anti += x;
  report.trace_difference = sum_anti - sum_half;
  report.implied_a = -report.trace_difference / 2.0;
  const auto n = static_cast<long>(half_spectrum.size());
  for (long q = 0; q < n; ++q) {
    const double phi =
        (report.trace_difference * t1 - 2.0 * static_cast<double>(q) * std::numbers::pi) /
        static_cast<double>(n);
    report.candidates.push_back({q, wrap_phase(phi)});
  }
  return report;
}

}  // namespace spinchain
