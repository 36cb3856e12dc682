#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "spinchain/chain_model.hpp"
#include "spinchain/constructions.hpp"
#include "spinchain/error.hpp"
#include "spinchain/phase.hpp"
#include "spinchain/spectral.hpp"
#include "support.hpp"

using namespace spinchain;
using std::numbers::pi;

namespace {

SingleExcitationOperator random_op(std::mt19937_64& g, std::size_t n, bool fields = true) {
  return SingleExcitationOperator(fields ? oracle::random_couplings(g, n, -3, 3) : std::vector<double>(n, 0.0),
                                  oracle::random_couplings(g, n - 1));
}

SingleExcitationOperator random_mirror(std::mt19937_64& g, std::size_t half) {
  const ChainSpec spec(Model::Exchange, oracle::random_couplings(g, half - 1),
                       oracle::random_couplings(g, half, -2, 2));
  return compose_mirror_chain({spec, oracle::random_couplings(g, 1)[0], Model::Exchange});
}

}  // namespace

TEST_CASE("two-by-two eigenproblem") {
  const auto es = eigendecompose(SingleExcitationOperator({-1, -1}, {1}));
  CHECK(es.eigenvalues()[0] == doctest::Approx(0).epsilon(1e-14));
  CHECK(es.eigenvalues()[1] == doctest::Approx(-2));
}

TEST_CASE("hahn N=8 spectrum") {
  const auto values = eigenvalues(build_single_excitation_matrix(hahn_chain(8)));
  for (int n = 1; n <= 8; ++n) CHECK(std::fabs(values[n - 1] + n * (n - 1)) < 1e-9);
}

TEST_CASE("eigensystem invariants on random operators against the dense oracle") {
  auto g = oracle::rng(20);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 1 + rep % 40;
    const auto op = random_op(g, n);
    const auto es = eigendecompose(op);
    CHECK(max_residual(op, es) <= 1e-10 * std::max(1.0, op.norm()));
    CHECK(orthonormality_defect(es) <= 1e-10);
    for (std::size_t i = 1; i < n; ++i) CHECK(es.eigenvalues()[i - 1] > es.eigenvalues()[i]);
    const auto ref = oracle::jacobi(op);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::fabs(es.eigenvalues()[i] - static_cast<double>(ref.values[i])) <= 1e-11 * op.norm());
    }
  }
}

TEST_CASE("tiny central couplings are resolved") {
  for (double a : {1e-3, 1e-6, 1e-9, 1e-12}) {
    const auto op = compose_mirror_chain({hahn_chain(6), a, Model::Heisenberg});
    const auto es = eigendecompose(op);
    CHECK(max_residual(op, es) <= 1e-10 * op.norm());
    CHECK(orthonormality_defect(es) <= 1e-10);
  }
}

TEST_CASE("larger chains stay accurate") {
  auto g = oracle::rng(21);
  const auto op = random_op(g, 300);
  const auto es = eigendecompose(op);
  CHECK(max_residual(op, es) <= 1e-10 * op.norm());
  CHECK(orthonormality_defect(es) <= 1e-10);
}

TEST_CASE("transfer fidelity basics") {
  const auto es = eigendecompose(SingleExcitationOperator({-1, -1}, {1}));
  CHECK(transfer_fidelity(es, Site{1}, Site{2}, pi / 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(transfer_fidelity(es, Site{1}, Site{2}, Time::multiple_of_pi(mpq_class(1, 2))) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(transfer_fidelity(es, Site{1}, Site{2}, 0.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(transfer_fidelity(es, Site{0}, Site{2}, 1.0), ValidationError);
  CHECK_THROWS_AS(transfer_fidelity(es, Site{1}, Site{3}, 1.0), ValidationError);
  CHECK_THROWS_AS(revival_fidelity(es, Site{3}, 1.0), ValidationError);
}

TEST_CASE("fidelity matches the dense oracle") {
  auto g = oracle::rng(22);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 2 + rep % 14;
    const auto op = random_op(g, n);
    const auto es = eigendecompose(op);
    const auto ref = oracle::jacobi(op);
    for (double t : {0.1, 1.7, 13.0, 250.0}) {
      CHECK(std::fabs(transfer_fidelity(es, Site{1}, Site{n}, t) - oracle::fidelity(ref, 0, n - 1, t)) < 1e-9);
    }
  }
}

TEST_CASE("unitarity and transfer symmetry") {
  auto g = oracle::rng(23);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rep % 15;
    const auto es = eigendecompose(random_op(g, n));
    const double t = oracle::random_couplings(g, 1, 0.0, 50.0)[0];
    const std::size_t from = 1 + rep % n;
    double total = 0;
    for (std::size_t to = 1; to <= n; ++to) total += std::norm(transfer_amplitude(es, Site{from}, Site{to}, t));
    CHECK(std::fabs(total - 1.0) < 1e-10);
    const std::size_t to = 1 + (rep * 7) % n;
    CHECK(std::fabs(transfer_fidelity(es, Site{from}, Site{to}, t) -
                    transfer_fidelity(es, Site{to}, Site{from}, t)) < 1e-12);
  }
}

TEST_CASE("integer even spectra are pi-periodic") {
  for (long N : {3L, 5L, 8L}) {
    const auto es = eigendecompose(build_single_excitation_matrix(hahn_chain(N)));
    for (double t : {0.3, 1.1, 2.9}) {
      CHECK(std::fabs(transfer_fidelity(es, Site{1}, Site{static_cast<std::size_t>(N)}, t) -
                      transfer_fidelity(es, Site{1}, Site{static_cast<std::size_t>(N)}, t + pi)) < 1e-9);
    }
  }
}

TEST_CASE("centrosymmetric sign structure") {
  auto g = oracle::rng(24);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t half = 1 + rep % 6;
    const auto op = random_mirror(g, half);
    const auto es = eigendecompose(op);
    const std::size_t n = op.size();
    for (std::size_t k = 0; k < n; ++k) {
      const double product = es.component(k, 0) * es.component(k, n - 1);
      const double square = es.component(k, 0) * es.component(k, 0);
      const double sign = k % 2 == 0 ? 1.0 : -1.0;
      CHECK(std::fabs(product - sign * square) < 1e-10);
    }
  }
}

TEST_CASE("revival fidelity and phase") {
  SUBCASE("hahn chains revive at pi with zero phase") {
    for (long N = 2; N <= 32; ++N) {
      const auto es = eigendecompose(build_single_excitation_matrix(hahn_chain(N)));
      const auto r = revival_fidelity(es, Site{1}, Time::multiple_of_pi(1));
      CHECK(std::fabs(r.fidelity - 1.0) < 1e-10);
      CHECK(r.phase_defined);
      CHECK(std::fabs(r.phase) < 1e-8);
    }
  }
  SUBCASE("t = 0") {
    auto g = oracle::rng(25);
    const auto es = eigendecompose(random_op(g, 7));
    const auto r = revival_fidelity(es, Site{3}, 0.0);
    CHECK(r.fidelity == doctest::Approx(1.0));
    CHECK(r.phase == doctest::Approx(0.0));
  }
  SUBCASE("lm chain revives at pi/2") {
    const auto es = eigendecompose(build_single_excitation_matrix(lm_chain(6)));
    CHECK(std::fabs(revival_fidelity(es, Site{1}, Time::multiple_of_pi(mpq_class(1, 2))).fidelity - 1.0) < 1e-10);
  }
}

TEST_CASE("phase reduction for large times") {
  CHECK(reduced_phase(3.0, Time::multiple_of_pi(mpq_class(1000000001))) == doctest::Approx(pi));
  CHECK(std::fabs(wrap_phase(-pi) - pi) < 1e-15);
  CHECK(wrap_phase(3 * pi) == doctest::Approx(pi));
  // An exact pi multiple and its double approximation agree when t is moderate.
  const double direct = wrap_phase(reduced_phase(-6.0, 12000.0 * pi));
  const double exact = wrap_phase(reduced_phase(-6.0, Time::multiple_of_pi(12000)));
  CHECK(std::fabs(direct - exact) < 1e-8);
  CHECK(phase_precision_bits() >= 128);
}

TEST_CASE("earliest time search") {
  SUBCASE("two sites reach 0.999 near pi/2") {
    const auto es = eigendecompose(SingleExcitationOperator({-1, -1}, {1}));
    const auto t = earliest_time_to_fidelity(es, Site{1}, Site{2}, 0.999, 10.0);
    REQUIRE(t.has_value());
    CHECK(*t <= pi / 2);
    CHECK(*t > pi / 2 - 0.05);
    CHECK(transfer_fidelity(es, Site{1}, Site{2}, *t) >= 0.999 - 1e-9);
  }
  SUBCASE("hahn N=3 never reaches 0.99") {
    const auto es = eigendecompose(build_single_excitation_matrix(hahn_chain(3)));
    CHECK_FALSE(earliest_time_to_fidelity(es, Site{1}, Site{3}, 0.99, 100 * pi).has_value());
  }
  CHECK_THROWS_AS(earliest_time_to_fidelity(eigendecompose(SingleExcitationOperator({0}, {})), Site{1}, Site{1}, 1.5, 1.0),
                  ValidationError);
}

TEST_CASE("fidelity sweeps") {
  const auto es = eigendecompose(SingleExcitationOperator({-1, -1}, {1}));
  const std::vector<double> grid{0.0, pi / 4, pi / 2};
  const auto pts = fidelity_sweep(es, Site{1}, Site{2}, grid);
  CHECK(pts[0].fidelity == doctest::Approx(0.0));
  CHECK(pts[1].fidelity == doctest::Approx(0.5));
  CHECK(pts[2].fidelity == doctest::Approx(1.0));
  CHECK(pts[1].t == grid[1]);

  SUBCASE("uniform sweep agrees with pointwise evaluation over long grids") {
    auto g = oracle::rng(26);
    const auto es2 = eigendecompose(random_op(g, 20));
    const double dt = 0.0173;
    const auto fast = uniform_fidelity_sweep(es2, Site{1}, Site{20}, 0.5, dt, 5000);
    for (std::size_t j = 0; j < fast.size(); j += 113) {
      CHECK(std::fabs(fast[j] - transfer_fidelity(es2, Site{1}, Site{20}, 0.5 + dt * static_cast<double>(j))) < 1e-10);
    }
  }
  SUBCASE("window maximum is consistent with the earliest-time search") {
    const auto h = eigendecompose(build_single_excitation_matrix(hahn_chain(4)));
    const auto best = max_fidelity_in_window(h, Site{1}, Site{4}, 0.0, pi);
    const auto t = earliest_time_to_fidelity(h, Site{1}, Site{4}, best.fidelity - 1e-6, pi);
    REQUIRE(t.has_value());
    const auto t_above = earliest_time_to_fidelity(h, Site{1}, Site{4}, std::min(0.999999, best.fidelity + 1e-4), 3 * pi);
    CHECK_FALSE(t_above.has_value());
  }
}
