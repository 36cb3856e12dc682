#include "spinchain/spectral.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <numbers>
#include <string>

#include "spinchain/error.hpp"
#include "spinchain/kernels.hpp"

namespace spinchain {

namespace {

std::size_t site_index(const EigenSystem& es, Site s, const char* what) {
  if (s.label < 1 || s.label > es.size()) {
    throw ValidationError(std::string(what) + ": site " + std::to_string(s.label) +
                          " outside 1.." + std::to_string(es.size()));
  }
  return s.label - 1;
}

// c_n = <to|lambda_n><lambda_n|from>
std::vector<double> transfer_weights(const EigenSystem& es, std::size_t from, std::size_t to) {
  std::vector<double> w(es.size());
  for (std::size_t n = 0; n < es.size(); ++n) w[n] = es.component(n, to) * es.component(n, from);
  return w;
}

std::complex<double> amplitude_from_weights(std::span<const double> w,
                                            std::span<const double> lambda, const Time& t) {
  std::complex<double> acc = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) {
    if (w[n] == 0.0) continue;
    acc += w[n] * std::polar(1.0, -reduced_phase(lambda[n], t));
  }
  return acc;
}

double spread(std::span<const double> lambda) {
  const auto [lo, hi] = std::minmax_element(lambda.begin(), lambda.end());
  return *hi - *lo;
}

double grid_step(std::span<const double> lambda, int points_per_period) {
  const double s = spread(lambda);
  if (s <= 0.0) return 0.0;
  return 2.0 * std::numbers::pi / (static_cast<double>(points_per_period) * s);
}

// Golden-section maximization on [a, b].
SweepPoint golden_max(const std::function<double(double)>& f, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 80 && (b - a) > 1e-14 * std::max(1.0, std::fabs(b)); ++iter) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? SweepPoint{c, fc} : SweepPoint{d, fd};
}

}  // namespace

std::complex<double> transfer_amplitude(const EigenSystem& es, Site from, Site to,
                                        const Time& t) {
  const auto i = site_index(es, from, "from");
  const auto j = site_index(es, to, "to");
  return amplitude_from_weights(transfer_weights(es, i, j), es.eigenvalues(), t);
}

double transfer_fidelity(const EigenSystem& es, Site from, Site to, const Time& t) {
  return std::min(1.0, std::norm(transfer_amplitude(es, from, to, t)));
}

Revival revival_fidelity(const EigenSystem& es, Site site, const Time& t) {
  const auto amp = transfer_amplitude(es, site, site, t);
  const double f = std::min(1.0, std::norm(amp));
  if (f < 1e-15) return {f, 0.0, false};
  return {f, wrap_phase(std::arg(amp)), true};
}

std::vector<double> uniform_fidelity_sweep(const EigenSystem& es, Site from, Site to, double t0,
                                           double dt, std::size_t count) {
  const auto i = site_index(es, from, "from");
  const auto j = site_index(es, to, "to");
  const auto w = transfer_weights(es, i, j);
  const auto lambda = es.eigenvalues();
  const std::size_t n = es.size();

  std::vector<double> step_re(n), step_im(n), re(n), im(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double phase = wrap_phase(lambda[k] * dt);
    step_re[k] = std::cos(phase);
    step_im[k] = -std::sin(phase);
  }
  // The recurrence drifts by O(steps * eps); reseed the phasors periodically.
  constexpr std::size_t kReseed = 256;
  const auto& kt = kernels::active();
  std::vector<double> out_re(kReseed), out_im(kReseed);
  std::vector<double> fidelity(count);
  for (std::size_t start = 0; start < count; start += kReseed) {
    const std::size_t steps = std::min(kReseed, count - start);
    const Time t(t0 + static_cast<double>(start) * dt);
    for (std::size_t k = 0; k < n; ++k) {
      const double phase = reduced_phase(lambda[k], t);
      re[k] = w[k] * std::cos(phase);
      im[k] = -w[k] * std::sin(phase);
    }
    kt.rotation_sweep(re.data(), im.data(), step_re.data(), step_im.data(), n, steps,
                      out_re.data(), out_im.data());
    for (std::size_t s = 0; s < steps; ++s) {
      fidelity[start + s] = std::min(1.0, out_re[s] * out_re[s] + out_im[s] * out_im[s]);
    }
  }
  return fidelity;
}

std::vector<SweepPoint> fidelity_sweep(const EigenSystem& es, Site from, Site to,
                                       std::span<const double> t_grid) {
  std::vector<SweepPoint> out;
  out.reserve(t_grid.size());
  if (t_grid.size() >= 3) {
    const double dt = (t_grid.back() - t_grid.front()) / static_cast<double>(t_grid.size() - 1);
    bool uniform = dt > 0.0;
    for (std::size_t k = 1; uniform && k < t_grid.size(); ++k) {
      const double expected = t_grid.front() + static_cast<double>(k) * dt;
      uniform = std::fabs(t_grid[k] - expected) <= 1e-12 * std::max(1.0, std::fabs(expected));
    }
    if (uniform) {
      const auto f = uniform_fidelity_sweep(es, from, to, t_grid.front(), dt, t_grid.size());
      for (std::size_t k = 0; k < t_grid.size(); ++k) out.push_back({t_grid[k], f[k]});
      return out;
    }
  }
  for (double t : t_grid) out.push_back({t, transfer_fidelity(es, from, to, t)});
  return out;
}

SweepPoint max_fidelity_in_window(const EigenSystem& es, Site from, Site to, double t_begin,
                                  double t_end, int points_per_period) {
  if (!(t_end >= t_begin)) throw ValidationError("window: t_end must be >= t_begin");
  double dt = grid_step(es.eigenvalues(), points_per_period);
  if (dt <= 0.0 || t_end == t_begin) {
    return {t_begin, transfer_fidelity(es, from, to, t_begin)};
  }
  const auto count = static_cast<std::size_t>(std::ceil((t_end - t_begin) / dt)) + 1;
  dt = (t_end - t_begin) / static_cast<double>(count - 1);
  const auto f = uniform_fidelity_sweep(es, from, to, t_begin, dt, count);
  const auto best = static_cast<std::size_t>(std::max_element(f.begin(), f.end()) - f.begin());
  const double a = t_begin + static_cast<double>(best == 0 ? 0 : best - 1) * dt;
  const double b = t_begin + static_cast<double>(std::min(best + 1, count - 1)) * dt;
  const auto fid = [&](double t) { return transfer_fidelity(es, from, to, t); };
  SweepPoint polished = golden_max(fid, a, b);
  const SweepPoint grid{t_begin + static_cast<double>(best) * dt, f[best]};
  return polished.fidelity >= grid.fidelity ? polished : grid;
}

std::optional<double> earliest_time_to_fidelity(const EigenSystem& es, Site from, Site to,
                                                double threshold, double t_max,
                                                const SearchOptions& options) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ValidationError("threshold: must lie strictly between 0 and 1");
  }
  if (options.points_per_period < 4) {
    throw ValidationError("points_per_period: need at least 4");
  }
  site_index(es, from, "from");
  site_index(es, to, "to");
  const auto fid = [&](double t) { return transfer_fidelity(es, from, to, t); };
  if (fid(0.0) >= threshold) return 0.0;
  const double dt = grid_step(es.eigenvalues(), options.points_per_period);
  if (dt <= 0.0) return std::nullopt;  // no relative dynamics

  // Earliest crossing in (a, b] given f(a) < threshold <= f(b).
  const auto crossing = [&](double a, double b) {
    for (int iter = 0; iter < 100 && (b - a) > 1e-15 * std::max(1.0, b); ++iter) {
      const double m = 0.5 * (a + b);
      (fid(m) >= threshold ? b : a) = m;
    }
    return b;
  };

  constexpr std::size_t kChunk = 1 << 14;
  double prev2 = -1.0;
  double prev = fid(0.0);
  double t_prev = 0.0;
  std::size_t index = 1;
  while (true) {
    const double t_start = static_cast<double>(index) * dt;
    if (t_start > t_max) break;
    const auto remaining = static_cast<std::size_t>(std::floor((t_max - t_start) / dt)) + 1;
    const std::size_t count = std::min(kChunk, remaining);
    const auto f = uniform_fidelity_sweep(es, from, to, t_start, dt, count);
    for (std::size_t s = 0; s < count; ++s, ++index) {
      const double t = static_cast<double>(index) * dt;
      if (f[s] >= threshold) return crossing(t_prev, t);
      // A peak between grid points can exceed the threshold unseen; polish
      // grid-level local maxima that come close.
      if (prev2 >= 0.0 && prev > prev2 && prev >= f[s] &&
          prev >= threshold - options.polish_window) {
        const double a = t_prev - dt;
        const SweepPoint peak = golden_max(fid, a, t);
        if (peak.fidelity >= threshold) return crossing(a, peak.t);
      }
      prev2 = prev;
      prev = f[s];
      t_prev = t;
    }
  }
  return std::nullopt;
}

}  // namespace spinchain
