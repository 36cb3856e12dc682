#pragma once
// Test-only oracles, kept independent of the library's numerical code paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <random>
#include <vector>

#include "spinchain/chain_model.hpp"

namespace oracle {

// Dense symmetric eigenproblem by cyclic Jacobi in long double.
struct DenseEigen {
  std::vector<long double> values;                // decreasing
  std::vector<std::vector<long double>> vectors;  // vectors[n][site]
};

inline DenseEigen jacobi(std::vector<long double> a, std::size_t n) {
  std::vector<long double> v(n * n, 0.0L);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0L;
  for (int sweep = 0; sweep < 100; ++sweep) {
    long double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off < 1e-36L) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const long double apq = a[p * n + q];
        if (std::fabs(apq) < 1e-300L) continue;
        const long double theta = (a[q * n + q] - a[p * n + p]) / (2 * apq);
        const long double t =
            (theta >= 0 ? 1.0L : -1.0L) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        const long double c = 1 / std::sqrt(t * t + 1);
        const long double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const long double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const long double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const long double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a[x * n + x] > a[y * n + y]; });
  DenseEigen out;
  for (std::size_t j : order) {
    out.values.push_back(a[j * n + j]);
    std::vector<long double> col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = v[k * n + j];
    out.vectors.push_back(std::move(col));
  }
  return out;
}

inline DenseEigen jacobi(const spinchain::SingleExcitationOperator& op) {
  const std::size_t n = op.size();
  std::vector<long double> a(n * n, 0.0L);
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] = op.diagonal()[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    a[i * n + i + 1] = op.off_diagonal()[i];
    a[(i + 1) * n + i] = op.off_diagonal()[i];
  }
  return jacobi(std::move(a), n);
}

// |<to| exp(-i h t) |from>|^2 from the dense oracle; sites 0-based.
inline double fidelity(const DenseEigen& e, std::size_t from, std::size_t to, long double t) {
  std::complex<long double> amp = 0;
  for (std::size_t n = 0; n < e.values.size(); ++n) {
    const long double w = e.vectors[n][from] * e.vectors[n][to];
    amp += w * std::polar(1.0L, -e.values[n] * t);
  }
  return static_cast<double>(std::norm(amp));
}

inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(0x5eedULL * 1000003ULL + salt); }

inline std::vector<double> random_couplings(std::mt19937_64& g, std::size_t count, double lo = 0.2,
                                            double hi = 3.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> out(count);
  for (auto& x : out) x = d(g);
  return out;
}

inline double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::fabs(x[i] - y[i]));
  return m;
}

}  // namespace oracle
