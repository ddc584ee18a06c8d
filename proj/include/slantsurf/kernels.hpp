#pragma once

// Batched arithmetic kernels for the per-sample inner loops: series
// statistics for the slant detectors and moment accumulation for the
// axis-fit machinery. Every kernel exists as a scalar reference
// implementation and (on x86-64) an AVX2 variant; the active backend is
// selected once at runtime from CPU capabilities and can be forced for
// equivalence testing.

#include <cstddef>
#include <span>

namespace slantsurf::kernels {

enum class Backend { Auto, Scalar, Avx2 };

// Force a backend (tests use this to compare variants). Throws
// InvalidArgument if the requested backend is unavailable on this CPU.
void set_backend(Backend b);
const char* active_backend() noexcept;
bool avx2_available() noexcept;

double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double max_abs(std::span<const double> x);
double sum_sq_dev(std::span<const double> x, double mean);

struct MeanVar {
    double mean = 0.0;
    double variance = 0.0;  // population variance
    double stddev() const;
};

// Two-pass mean/variance; both passes run on the selected backend.
MeanVar mean_var(std::span<const double> x);

// out[i] = -x1[i]*y1[i] + x2[i]*y2[i] + x3[i]*y3[i]  (SoA layout).
void lorentz_dot_batch(const double* x1, const double* x2, const double* x3,
                       const double* y1, const double* y2, const double* y3,
                       double* out, std::size_t n);

// First and second Euclidean moments of z = G v (G = diag(-1,1,1)) over a
// SoA sample set; the axis fit builds its covariance from these.
struct Moments3 {
    double sum[3] = {0, 0, 0};
    double sum_outer[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};  // sum of z z^T
    std::size_t count = 0;
};

Moments3 lorentz_moments(const double* v1, const double* v2, const double* v3,
                         std::size_t n);

// Raw variants, callable regardless of the selected backend (used by the
// equivalence tests).
namespace scalar {
double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double max_abs(std::span<const double> x);
double sum_sq_dev(std::span<const double> x, double mean);
void lorentz_dot_batch(const double* x1, const double* x2, const double* x3,
                       const double* y1, const double* y2, const double* y3,
                       double* out, std::size_t n);
Moments3 lorentz_moments(const double* v1, const double* v2, const double* v3,
                         std::size_t n);
}  // namespace scalar

#if defined(__x86_64__)
namespace avx2 {
double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double max_abs(std::span<const double> x);
double sum_sq_dev(std::span<const double> x, double mean);
void lorentz_dot_batch(const double* x1, const double* x2, const double* x3,
                       const double* y1, const double* y2, const double* y3,
                       double* out, std::size_t n);
Moments3 lorentz_moments(const double* v1, const double* v2, const double* v3,
                         std::size_t n);
}  // namespace avx2
#endif

}  // namespace slantsurf::kernels
