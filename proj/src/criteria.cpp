#include "spinchain/criteria.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "spinchain/error.hpp"

namespace spinchain {

bool check_centrosymmetry(const SingleExcitationOperator& op, double tol) {
  const auto d = op.diagonal();
  const auto e = op.off_diagonal();
  for (std::size_t i = 0; i < d.size() / 2; ++i) {
    if (std::fabs(d[i] - d[d.size() - 1 - i]) > tol) return false;
  }
  for (std::size_t i = 0; i < e.size() / 2; ++i) {
    if (std::fabs(e[i] - e[e.size() - 1 - i]) > tol) return false;
  }
  return true;
}

namespace {

bool gaps_are_integers_of_parity(std::span<const double> spectrum, double t, double tol,
                                 int parity) {
  for (std::size_t i = 0; i + 1 < spectrum.size(); ++i) {
    const double gap = spectrum[i] - spectrum[i + 1];
    if (!(gap > 0.0)) return false;
    const double scaled = gap * t / std::numbers::pi;
    const double nearest = std::round(scaled);
    if (std::fabs(scaled - nearest) > tol * std::max(1.0, std::fabs(scaled))) return false;
    if (nearest < 1.0) return false;
    if (static_cast<long long>(nearest) % 2 != parity) return false;
  }
  return true;
}

}  // namespace

bool check_pst_spectrum(std::span<const double> spectrum, double t0, double tol) {
  return gaps_are_integers_of_parity(spectrum, t0, tol, 1);
}

bool check_revival_spectrum(std::span<const double> spectrum, double t_r, double tol) {
  return gaps_are_integers_of_parity(spectrum, t_r, tol, 0);
}

std::vector<std::vector<BigInt>> integer_kernel(const std::vector<std::vector<BigInt>>& rows,
                                                std::size_t cols) {
  auto a = rows;
  for (const auto& r : a) {
    if (r.size() != cols) throw ValidationError("integer_kernel: ragged matrix");
  }
  // Column j of u tracks the combination of unit vectors forming column j of a*u.
  std::vector<std::vector<BigInt>> u(cols, std::vector<BigInt>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;

  const auto combine = [&](std::size_t p, std::size_t j, const BigInt& x, const BigInt& y,
                           const BigInt& s, const BigInt& t) {
    // (col_p, col_j) <- (x col_p + y col_j, s col_p - t col_j); det = -x t - y s = -1.
    for (auto& row : a) {
      const BigInt cp = row[p];
      const BigInt cj = row[j];
      row[p] = x * cp + y * cj;
      row[j] = s * cp - t * cj;
    }
    for (auto& row : u) {
      const BigInt cp = row[p];
      const BigInt cj = row[j];
      row[p] = x * cp + y * cj;
      row[j] = s * cp - t * cj;
    }
  };

  std::size_t pivot = 0;
  for (std::size_t i = 0; i < a.size() && pivot < cols; ++i) {
    for (std::size_t j = pivot + 1; j < cols; ++j) {
      if (a[i][j] == 0) continue;
      BigInt g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a[i][pivot].get_mpz_t(),
                 a[i][j].get_mpz_t());
      const BigInt s = a[i][j] / g;
      const BigInt t = a[i][pivot] / g;
      combine(pivot, j, x, y, s, t);
    }
    if (a[i][pivot] != 0) ++pivot;
  }
  std::vector<std::vector<BigInt>> basis;
  for (std::size_t j = pivot; j < cols; ++j) {
    std::vector<BigInt> v(cols);
    for (std::size_t r = 0; r < cols; ++r) v[r] = u[r][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

PgstCertificate pgst_certificate(std::span<const BigInt> spectrum) {
  const std::size_t n = spectrum.size();
  if (n == 0) throw ValidationError("spectrum: empty");
  {
    std::set<BigInt> seen;
    for (const auto& v : spectrum) {
      if (!seen.insert(v).second) {
        throw ValidationError("spectrum: duplicate eigenvalue " + to_string(v));
      }
    }
  }
  PgstCertificate cert;
  cert.spectrum.assign(spectrum.begin(), spectrum.end());
  for (std::size_t i = 0; i < n; ++i) cert.sign_pattern.push_back(i % 2 == 0 ? 1 : -1);

  std::vector<std::vector<BigInt>> rows{std::vector<BigInt>(spectrum.begin(), spectrum.end()),
                                        std::vector<BigInt>(n, 1)};
  for (const auto& l : integer_kernel(rows, n)) {
    BigInt parity = 0;
    for (std::size_t i = 1; i < n; i += 2) parity += l[i];
    if (mpz_odd_p(parity.get_mpz_t())) {
      cert.holds = false;
      cert.witness = l;
      break;
    }
  }
  return cert;
}

Feasibility linear_spectrum_feasibility(long N) {
  if (N < 2) throw ValidationError("linear_spectrum_feasibility: need N >= 2");
  BigInt lhs, rhs, fact;
  mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(N), static_cast<unsigned long>(N));
  mpz_ui_pow_ui(rhs.get_mpz_t(), 4, static_cast<unsigned long>(N - 1));
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(N - 1));
  rhs *= fact;
  return lhs >= rhs ? Feasibility::Feasible : Feasibility::Infeasible;
}

}  // namespace spinchain
