#include "spinchain/kernels.hpp"

#include <cmath>

namespace spinchain::kernels::scalar {

void sturm_count4(const double* diag, const double* off_sq, std::size_t n, const double* shifts,
                  double pivmin, int* counts) {
  for (int lane = 0; lane < 4; ++lane) {
    const double x = shifts[lane];
    int count = 0;
    double q = diag[0] - x;
    if (std::fabs(q) < pivmin) q = -pivmin;
    count += q < 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      q = (diag[i] - x) - off_sq[i - 1] / q;
      if (std::fabs(q) < pivmin) q = -pivmin;
      count += q < 0.0;
    }
    counts[lane] = count;
  }
}

void rotation_sweep(double* re, double* im, const double* step_re, const double* step_im,
                    std::size_t n, std::size_t steps, double* out_re, double* out_im) {
  for (std::size_t j = 0; j < steps; ++j) {
    double acc_re = 0.0;
    double acc_im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      acc_re += re[k];
      acc_im += im[k];
      const double r = re[k] * step_re[k] - im[k] * step_im[k];
      const double i = re[k] * step_im[k] + im[k] * step_re[k];
      re[k] = r;
      im[k] = i;
    }
    out_re[j] = acc_re;
    out_im[j] = acc_im;
  }
}

double dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void tridiag_matvec(const double* diag, const double* off, const double* x, double* y,
                    std::size_t n) {
  if (n == 0) return;
  if (n == 1) {
    y[0] = diag[0] * x[0];
    return;
  }
  y[0] = diag[0] * x[0] + off[0] * x[1];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    y[i] = off[i - 1] * x[i - 1] + diag[i] * x[i] + off[i] * x[i + 1];
  }
  y[n - 1] = off[n - 2] * x[n - 2] + diag[n - 1] * x[n - 1];
}

}  // namespace spinchain::kernels::scalar
