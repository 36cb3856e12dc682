#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinchain/chain_model.hpp"
#include "spinchain/constructions.hpp"
#include "spinchain/criteria.hpp"
#include "spinchain/error.hpp"
#include "spinchain/pgt_route.hpp"
#include "spinchain/spectral.hpp"
#include "support.hpp"

using namespace spinchain;
using std::numbers::pi;

TEST_CASE("hahn chain") {
  const auto h4 = hahn_chain(4);
  CHECK(std::vector<double>(h4.couplings().begin(), h4.couplings().end()) == std::vector<double>{3, 4, 3});
  CHECK(hahn_chain(2).couplings()[0] == 1.0);
  CHECK(h4.is_field_free());
  CHECK(h4.model() == Model::Heisenberg);
  CHECK_THROWS_AS(hahn_chain(1), ValidationError);
  for (long N = 2; N <= 32; ++N) {
    const auto values = eigenvalues(build_single_excitation_matrix(hahn_chain(N)));
    for (long n = 1; n <= N; ++n) CHECK(std::fabs(values[n - 1] + n * (n - 1)) < 1e-9);
  }
}

TEST_CASE("hahn overlaps") {
  const auto w2 = hahn_overlaps(2);
  CHECK(w2[0] == BigRational(1, 2));
  CHECK(w2[1] == BigRational(1, 2));
  for (long N = 2; N <= 20; ++N) {
    BigRational total = 0;
    for (const auto& w : hahn_overlaps(N)) total += w;
    CHECK(total == 1);
  }
  for (long N = 2; N <= 12; ++N) {
    const auto es = eigendecompose(build_single_excitation_matrix(hahn_chain(N)));
    const auto w = hahn_overlaps(N);
    // Overlaps with the last site, which the mirror symmetry makes equal to the first.
    for (long n = 0; n < N; ++n) {
      const double c = es.component(n, N - 1);
      CHECK(std::fabs(c * c - w[n].get_d()) < 1e-9);
    }
  }
}

TEST_CASE("uniform-overlap chain") {
  CHECK(uniform_overlap_chain(2).couplings()[0] == doctest::Approx(1.0));
  CHECK(uniform_overlap_chain(2).model() == Model::Exchange);
  for (long N = 2; N <= 12; ++N) {
    const auto op = build_single_excitation_matrix(uniform_overlap_chain(N));
    const auto es = eigendecompose(op);
    for (long n = 0; n < N; ++n) {
      CHECK(std::fabs(es.eigenvalues()[n] - static_cast<double>(N - 1 - 2 * n)) < 1e-9);
      const double c = es.component(n, 0);
      CHECK(std::fabs(c * c - 1.0 / N) < 1e-9);
    }
    CHECK(std::fabs(revival_fidelity(es, Site{1}, Time::multiple_of_pi(1)).fidelity - 1.0) < 1e-10);
  }
}

TEST_CASE("lm chain") {
  const auto c3 = lm_chain(3);
  CHECK(c3.couplings()[0] == doctest::Approx(2.0));
  CHECK(c3.couplings()[1] == doctest::Approx(2 * std::sqrt(3.0)));
  CHECK(c3.model() == Model::Exchange);

  SUBCASE("h and h' revive at pi/2 with relative phase pi") {
    for (long N = 2; N <= 12; ++N) {
      const auto h = build_single_excitation_matrix(lm_chain(N));
      const auto es = eigendecompose(h);
      const auto t = Time::multiple_of_pi(mpq_class(1, 2));
      const auto r = revival_fidelity(es, Site{1}, t);
      CHECK(std::fabs(r.fidelity - 1.0) < 1e-10);
      const auto d = h.diagonal();
      const auto e = h.off_diagonal();
      const SingleExcitationOperator hp(std::vector<double>(d.begin(), d.end() - 1),
                                        std::vector<double>(e.begin(), e.end() - 1));
      const auto rp = revival_fidelity(eigendecompose(hp), Site{1}, t);
      CHECK(std::fabs(rp.fidelity - 1.0) < 1e-10);
      CHECK(std::fabs(wrap_phase(r.phase - rp.phase - pi)) < 1e-8);
    }
  }
  SUBCASE("largest eigenvalue grows linearly") {
    std::vector<double> xs, ys;
    for (long N = 4; N <= 20; ++N) {
      const auto values = eigenvalues(build_single_excitation_matrix(lm_chain(N)));
      xs.push_back(static_cast<double>(N));
      ys.push_back(std::max(std::fabs(values.front()), std::fabs(values.back())));
    }
    const auto fit = least_squares_fit(xs, ys);
    CHECK(fit.r_squared > 0.999);
    CHECK(fit.slope > 1.0);
  }
}

TEST_CASE("persymmetric inverse eigenvalue problem") {
  SUBCASE("hahn round trip") {
    const std::vector<double> s{0, -2, -6, -12};
    const auto rec = inverse_eigenvalue_persymmetric(s);
    const auto ref = build_single_excitation_matrix(hahn_chain(4));
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::fabs(rec.op.diagonal()[i] - ref.diagonal()[i]) < 1e-8);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::fabs(rec.op.off_diagonal()[i] - ref.off_diagonal()[i]) < 1e-8);
    CHECK(rec.field_free_heisenberg);
    CHECK(rec.centrosymmetry_defect < 1e-8);
  }
  SUBCASE("three-site linear spectrum") {
    const std::vector<double> s{1, 0, -1};
    const auto rec = inverse_eigenvalue_persymmetric(s);
    CHECK(rec.op.off_diagonal()[0] == doctest::Approx(std::sqrt(0.5)));
    CHECK(rec.op.off_diagonal()[1] == doctest::Approx(std::sqrt(0.5)));
    CHECK(std::fabs(rec.op.diagonal()[1]) < 1e-12);
  }
  SUBCASE("linear spectrum with a zero is never field-free heisenberg") {
    for (std::size_t n = 3; n <= 12; ++n) {
      std::vector<double> s;
      for (std::size_t i = 0; i < n; ++i) s.push_back(-static_cast<double>(i));
      CHECK_FALSE(inverse_eigenvalue_persymmetric(s).field_free_heisenberg);
    }
  }
  SUBCASE("random round trips") {
    auto g = oracle::rng(50);
    for (int rep = 0; rep < 200; ++rep) {
      const std::size_t n = 1 + rep % 16;
      std::vector<double> s{oracle::random_couplings(g, 1, -3, 3)[0]};
      for (std::size_t i = 1; i < n; ++i) s.push_back(s.back() - oracle::random_couplings(g, 1, 0.3, 2.0)[0]);
      const auto rec = inverse_eigenvalue_persymmetric(s);
      CHECK(oracle::max_abs_diff(eigenvalues(rec.op), s) < 1e-8 * std::max(1.0, std::fabs(s.back())));
      CHECK(check_centrosymmetry(rec.op, 1e-8 * std::max(1.0, rec.op.norm())));
    }
  }
  SUBCASE("errors") {
    const std::vector<double> dup{0, -1, -1};
    CHECK_THROWS_AS(inverse_eigenvalue_persymmetric(dup), ValidationError);
    const std::vector<double> unordered{0, -2, -1};
    CHECK_THROWS_AS(inverse_eigenvalue_persymmetric(unordered), NotRealizableError);
  }
}
