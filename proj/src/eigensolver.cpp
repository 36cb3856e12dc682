#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "spinchain/error.hpp"
#include "spinchain/kernels.hpp"
#include "spinchain/spectral.hpp"

namespace spinchain {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Block {
  std::size_t begin;
  std::size_t end;  // exclusive
};

// Splits at couplings that are negligible against the neighbouring diagonal.
std::vector<Block> split_blocks(std::span<const double> d, std::span<const double> e) {
  std::vector<Block> blocks;
  std::size_t start = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double scale = std::sqrt(std::fabs(d[i])) * std::sqrt(std::fabs(d[i + 1]));
    if (e[i] == 0.0 || std::fabs(e[i]) <= kEps * scale) {
      blocks.push_back({start, i + 1});
      start = i + 1;
    }
  }
  blocks.push_back({start, d.size()});
  return blocks;
}

// Ascending eigenvalues of one unreduced block by batched bisection.
std::vector<double> bisect_block(std::span<const double> d, std::span<const double> e) {
  const std::size_t n = d.size();
  if (n == 1) return {d[0]};

  std::vector<double> off_sq(n - 1);
  double max_off_sq = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    off_sq[i] = e[i] * e[i];
    max_off_sq = std::max(max_off_sq, off_sq[i]);
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::fabs(e[i - 1]);
    if (i + 1 < n) radius += std::fabs(e[i]);
    lo = std::min(lo, d[i] - radius);
    hi = std::max(hi, d[i] + radius);
  }
  const double span = std::max(hi - lo, std::numeric_limits<double>::min());
  lo -= 4.0 * kEps * span + 4.0 * std::numeric_limits<double>::min();
  hi += 4.0 * kEps * span + 4.0 * std::numeric_limits<double>::min();
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, max_off_sq);
  const double abs_tol = 2.0 * kEps * std::max(std::fabs(lo), std::fabs(hi));

  const auto& kt = kernels::active();
  std::vector<double> out(n);
  for (std::size_t first = 0; first < n; first += 4) {
    std::array<double, 4> left{lo, lo, lo, lo};
    std::array<double, 4> right{hi, hi, hi, hi};
    std::array<int, 4> target{};
    for (int lane = 0; lane < 4; ++lane) {
      target[lane] = static_cast<int>(std::min(first + lane, n - 1));
    }
    for (int iter = 0; iter < 200; ++iter) {
      bool done = true;
      std::array<double, 4> mid{};
      for (int lane = 0; lane < 4; ++lane) {
        mid[lane] = 0.5 * (left[lane] + right[lane]);
        const double tol = abs_tol + 2.0 * kEps * std::max(std::fabs(left[lane]),
                                                           std::fabs(right[lane]));
        if (right[lane] - left[lane] > tol) done = false;
      }
      if (done) break;
      std::array<int, 4> counts{};
      kt.sturm_count4(d.data(), off_sq.data(), n, mid.data(), pivmin, counts.data());
      for (int lane = 0; lane < 4; ++lane) {
        if (mid[lane] <= left[lane] || mid[lane] >= right[lane]) continue;
        if (counts[lane] <= target[lane]) {
          left[lane] = mid[lane];
        } else {
          right[lane] = mid[lane];
        }
      }
    }
    for (int lane = 0; lane < 4 && first + lane < n; ++lane) {
      out[first + lane] = 0.5 * (left[lane] + right[lane]);
    }
  }
  return out;
}

// LU factorization of (T - shift I) with partial pivoting; U has two
// superdiagonals. Tiny pivots are perturbed so the solve stays finite.
class ShiftedTridiagonalLU {
 public:
  ShiftedTridiagonalLU(std::span<const double> d, std::span<const double> e, double shift,
                       double tiny)
      : n_(d.size()), u0_(n_), u1_(n_, 0.0), u2_(n_, 0.0), mult_(n_, 0.0), swapped_(n_, false) {
    for (std::size_t i = 0; i < n_; ++i) u0_[i] = d[i] - shift;
    for (std::size_t i = 0; i + 1 < n_; ++i) u1_[i] = e[i];
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      const double sub = e[i];
      if (std::fabs(u0_[i]) >= std::fabs(sub)) {
        if (u0_[i] == 0.0) u0_[i] = tiny;
        mult_[i] = sub / u0_[i];
        u0_[i + 1] -= mult_[i] * u1_[i];
      } else {
        swapped_[i] = true;
        mult_[i] = u0_[i] / sub;
        const double row_i1_diag = u0_[i + 1];
        const double row_i1_super = (i + 2 < n_) ? u1_[i + 1] : 0.0;
        u0_[i] = sub;
        const double old_u1 = u1_[i];
        u1_[i] = row_i1_diag;
        u2_[i] = row_i1_super;
        u0_[i + 1] = old_u1 - mult_[i] * row_i1_diag;
        if (i + 2 < n_) u1_[i + 1] = -mult_[i] * row_i1_super;
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (std::fabs(u0_[i]) < tiny) u0_[i] = std::copysign(tiny, u0_[i] == 0.0 ? 1.0 : u0_[i]);
    }
  }

  void solve(std::span<double> x) const {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (swapped_[i]) std::swap(x[i], x[i + 1]);
      x[i + 1] -= mult_[i] * x[i];
    }
    for (std::size_t ii = n_; ii-- > 0;) {
      double v = x[ii];
      if (ii + 1 < n_) v -= u1_[ii] * x[ii + 1];
      if (ii + 2 < n_) v -= u2_[ii] * x[ii + 2];
      x[ii] = v / u0_[ii];
    }
  }

 private:
  std::size_t n_;
  std::vector<double> u0_, u1_, u2_, mult_;
  std::vector<bool> swapped_;
};

void normalize(std::span<double> v) {
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::fabs(x));
  if (scale == 0.0) return;
  for (double& x : v) x /= scale;
  const double norm = std::sqrt(kernels::dot(v, v));
  for (double& x : v) x /= norm;
}

// Eigenvectors of one unreduced block, given ascending eigenvalues.
std::vector<double> inverse_iteration(std::span<const double> d, std::span<const double> e,
                                      std::span<const double> values, double block_norm) {
  const std::size_t n = d.size();
  std::vector<double> vectors(n * n, 0.0);
  if (n == 1) {
    vectors[0] = 1.0;
    return vectors;
  }
  const double tiny = kEps * std::max(block_norm, std::numeric_limits<double>::min());
  const double cluster_gap = 1e-3 * block_norm;
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);

  std::size_t cluster_start = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0 && values[j] - values[j - 1] > cluster_gap) cluster_start = j;
    std::span<double> v(vectors.data() + j * n, n);
    for (double& x : v) x = uniform(rng);
    const ShiftedTridiagonalLU lu(d, e, values[j], tiny);
    for (int iter = 0; iter < 4; ++iter) {
      lu.solve(v);
      normalize(v);
      for (std::size_t m = cluster_start; m < j; ++m) {
        std::span<const double> u(vectors.data() + m * n, n);
        kernels::axpy(-kernels::dot(u, v), u, v);
      }
      normalize(v);
    }
  }
  return vectors;
}

}  // namespace

EigenSystem::EigenSystem(std::vector<double> eigenvalues, std::vector<double> vectors)
    : eigenvalues_(std::move(eigenvalues)), vectors_(std::move(vectors)) {
  if (vectors_.size() != eigenvalues_.size() * eigenvalues_.size()) {
    throw ValidationError("EigenSystem: vector storage must be N*N");
  }
}

std::vector<double> eigenvalues(const SingleExcitationOperator& op) {
  const auto d = op.diagonal();
  const auto e = op.off_diagonal();
  std::vector<double> all;
  all.reserve(op.size());
  for (const Block& b : split_blocks(d, e)) {
    const std::size_t m = b.end - b.begin;
    const auto vals = bisect_block(d.subspan(b.begin, m), e.subspan(b.begin, m - 1));
    all.insert(all.end(), vals.begin(), vals.end());
  }
  std::sort(all.begin(), all.end(), std::greater<>());
  return all;
}

namespace {

struct Pair {
  double value;
  std::vector<double> vector;
};

// Eigenpairs of (d, e), vectors of length d.size().
std::vector<Pair> tridiagonal_pairs(std::span<const double> d, std::span<const double> e) {
  const std::size_t n = d.size();
  std::vector<Pair> pairs;
  pairs.reserve(n);
  for (const Block& b : split_blocks(d, e)) {
    const std::size_t m = b.end - b.begin;
    const auto bd = d.subspan(b.begin, m);
    const auto be = e.subspan(b.begin, m - 1);
    double block_norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double row = std::fabs(bd[i]);
      if (i > 0) row += std::fabs(be[i - 1]);
      if (i + 1 < m) row += std::fabs(be[i]);
      block_norm = std::max(block_norm, row);
    }
    const auto values = bisect_block(bd, be);
    const auto vecs = inverse_iteration(bd, be, values, block_norm);
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<double> full(n, 0.0);
      std::copy_n(vecs.begin() + static_cast<std::ptrdiff_t>(j * m), m,
                  full.begin() + static_cast<std::ptrdiff_t>(b.begin));
      pairs.push_back({values[j], std::move(full)});
    }
  }
  return pairs;
}

bool exactly_palindromic(std::span<const double> d, std::span<const double> e) {
  return std::equal(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2), d.rbegin()) &&
         std::equal(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(e.size() / 2), e.rbegin());
}

// Mirror-symmetric operators split into parity blocks. Solving them separately
// gives eigenvectors of exact parity even when the two halves are nearly
// decoupled and the spectrum comes in close pairs.
std::vector<Pair> mirror_pairs(std::span<const double> d, std::span<const double> e) {
  const std::size_t n = d.size();
  const std::size_t m = n / 2;
  const bool odd = n % 2 == 1;
  const double r = std::sqrt(0.5);

  std::vector<double> sd(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(m));
  std::vector<double> se(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(m - 1));
  std::vector<double> ad = sd;
  const std::vector<double> ae = se;
  if (odd) {
    sd.push_back(d[m]);
    se.push_back(std::sqrt(2.0) * e[m - 1]);
  } else {
    sd[m - 1] += e[m - 1];
    ad[m - 1] -= e[m - 1];
  }

  std::vector<Pair> pairs;
  pairs.reserve(n);
  for (auto& p : tridiagonal_pairs(sd, se)) {
    std::vector<double> full(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) full[i] = full[n - 1 - i] = r * p.vector[i];
    if (odd) full[m] = p.vector[m];
    pairs.push_back({p.value, std::move(full)});
  }
  for (auto& p : tridiagonal_pairs(ad, ae)) {
    std::vector<double> full(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      full[i] = r * p.vector[i];
      full[n - 1 - i] = -r * p.vector[i];
    }
    pairs.push_back({p.value, std::move(full)});
  }
  return pairs;
}

}  // namespace

EigenSystem eigendecompose(const SingleExcitationOperator& op) {
  const std::size_t n = op.size();
  const auto d = op.diagonal();
  const auto e = op.off_diagonal();

  auto pairs = n >= 2 && exactly_palindromic(d, e) ? mirror_pairs(d, e) : tridiagonal_pairs(d, e);
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& x, const Pair& y) { return x.value > y.value; });

  std::vector<double> values(n);
  std::vector<double> vectors(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    values[j] = pairs[j].value;
    auto& v = pairs[j].vector;
    // Sign convention: first significant component positive.
    const auto lead = std::find_if(v.begin(), v.end(), [](double x) { return std::fabs(x) > 1e-300; });
    if (lead != v.end() && *lead < 0.0) {
      for (double& x : v) x = -x;
    }
    std::copy(v.begin(), v.end(), vectors.begin() + static_cast<std::ptrdiff_t>(j * n));
  }
  return EigenSystem(std::move(values), std::move(vectors));
}

double max_residual(const SingleExcitationOperator& op, const EigenSystem& es) {
  double worst = 0.0;
  std::vector<double> hv(op.size());
  for (std::size_t n = 0; n < es.size(); ++n) {
    const auto v = es.vector(n);
    op.apply(v, hv);
    kernels::axpy(-es.eigenvalues()[n], v, hv);
    worst = std::max(worst, std::sqrt(kernels::dot(hv, hv)));
  }
  return worst;
}

double orthonormality_defect(const EigenSystem& es) {
  double worst = 0.0;
  for (std::size_t m = 0; m < es.size(); ++m) {
    for (std::size_t n = m; n < es.size(); ++n) {
      const double g = kernels::dot(es.vector(m), es.vector(n));
      worst = std::max(worst, std::fabs(g - (m == n ? 1.0 : 0.0)));
    }
  }
  return worst;
}

}  // namespace spinchain
