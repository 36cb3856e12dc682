#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference implementation
// and, on x86-64, an AVX2 variant; the active table is chosen once at startup
// from CPUID and can be pinned with SPINCHAIN_SIMD=scalar|avx2.

#include <cstddef>
#include <span>
#include <string_view>

namespace spinchain::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// Sturm counts for four shifts at once: counts[j] = #{eigenvalues < shifts[j]}
/// of the tridiagonal (diag, off) where off_sq holds the squared couplings.
/// Pivots smaller than pivmin in magnitude are replaced by -pivmin.
using SturmCount4Fn = void (*)(const double* diag, const double* off_sq, std::size_t n,
                               const double* shifts, double pivmin, int* counts);

/// Uniform-grid amplitude sweep. (re, im) hold weighted phasors z_n and are
/// advanced in place by the per-component rotation (step_re, step_im) after
/// each output: out_re[j] + i out_im[j] = sum_n z_n(t0 + j dt).
using RotationSweepFn = void (*)(double* re, double* im, const double* step_re,
                                 const double* step_im, std::size_t n, std::size_t steps,
                                 double* out_re, double* out_im);

using DotFn = double (*)(const double* x, const double* y, std::size_t n);

/// y += alpha * x
using AxpyFn = void (*)(double alpha, const double* x, double* y, std::size_t n);

/// y = T x for the symmetric tridiagonal T = (diag, off).
using TridiagMatvecFn = void (*)(const double* diag, const double* off, const double* x,
                                 double* y, std::size_t n);

struct KernelTable {
  Isa isa;
  SturmCount4Fn sturm_count4;
  RotationSweepFn rotation_sweep;
  DotFn dot;
  AxpyFn axpy;
  TridiagMatvecFn tridiag_matvec;
};

bool isa_available(Isa isa);

/// Kernel table for a specific ISA. Throws std::invalid_argument if the ISA
/// was not compiled in or the CPU lacks it.
const KernelTable& table(Isa isa);

/// The table selected for this process.
const KernelTable& active();

// Span front-ends over the active table.

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline void tridiag_matvec(std::span<const double> diag, std::span<const double> off,
                           std::span<const double> x, std::span<double> y) {
  active().tridiag_matvec(diag.data(), off.data(), x.data(), y.data(), diag.size());
}

namespace scalar {
void sturm_count4(const double* diag, const double* off_sq, std::size_t n, const double* shifts,
                  double pivmin, int* counts);
void rotation_sweep(double* re, double* im, const double* step_re, const double* step_im,
                    std::size_t n, std::size_t steps, double* out_re, double* out_im);
double dot(const double* x, const double* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void tridiag_matvec(const double* diag, const double* off, const double* x, double* y,
                    std::size_t n);
}  // namespace scalar

#if defined(SPINCHAIN_WITH_AVX2)
namespace avx2 {
void sturm_count4(const double* diag, const double* off_sq, std::size_t n, const double* shifts,
                  double pivmin, int* counts);
void rotation_sweep(double* re, double* im, const double* step_re, const double* step_im,
                    std::size_t n, std::size_t steps, double* out_re, double* out_im);
double dot(const double* x, const double* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void tridiag_matvec(const double* diag, const double* off, const double* x, double* y,
                    std::size_t n);
}  // namespace avx2
#endif

}  // namespace spinchain::kernels
