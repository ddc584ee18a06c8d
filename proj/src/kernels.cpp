#include "slantsurf/kernels.hpp"

#include <cmath>
#include <cstdlib>

#include "slantsurf/error.hpp"

namespace slantsurf::kernels {

namespace scalar {

double sum(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v;
    return acc;
}

double dot(std::span<const double> x, std::span<const double> y) {
    double acc = 0.0;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double max_abs(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    return m;
}

double sum_sq_dev(std::span<const double> x, double mean) {
    double acc = 0.0;
    for (double v : x) {
        const double d = v - mean;
        acc += d * d;
    }
    return acc;
}

void lorentz_dot_batch(const double* x1, const double* x2, const double* x3,
                       const double* y1, const double* y2, const double* y3,
                       double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = -x1[i] * y1[i] + x2[i] * y2[i] + x3[i] * y3[i];
}

Moments3 lorentz_moments(const double* v1, const double* v2, const double* v3,
                         std::size_t n) {
    Moments3 m;
    m.count = n;
    for (std::size_t i = 0; i < n; ++i) {
        const double z1 = -v1[i], z2 = v2[i], z3 = v3[i];
        m.sum[0] += z1;
        m.sum[1] += z2;
        m.sum[2] += z3;
        m.sum_outer[0][0] += z1 * z1;
        m.sum_outer[0][1] += z1 * z2;
        m.sum_outer[0][2] += z1 * z3;
        m.sum_outer[1][1] += z2 * z2;
        m.sum_outer[1][2] += z2 * z3;
        m.sum_outer[2][2] += z3 * z3;
    }
    m.sum_outer[1][0] = m.sum_outer[0][1];
    m.sum_outer[2][0] = m.sum_outer[0][2];
    m.sum_outer[2][1] = m.sum_outer[1][2];
    return m;
}

}  // namespace scalar

namespace {

struct Dispatch {
    double (*sum)(std::span<const double>);
    double (*dot)(std::span<const double>, std::span<const double>);
    double (*max_abs)(std::span<const double>);
    double (*sum_sq_dev)(std::span<const double>, double);
    void (*lorentz_dot_batch)(const double*, const double*, const double*,
                              const double*, const double*, const double*,
                              double*, std::size_t);
    Moments3 (*lorentz_moments)(const double*, const double*, const double*,
                                std::size_t);
    const char* name;
};

constexpr Dispatch kScalar{scalar::sum, scalar::dot, scalar::max_abs,
                           scalar::sum_sq_dev, scalar::lorentz_dot_batch,
                           scalar::lorentz_moments, "scalar"};

#if defined(__x86_64__)
constexpr Dispatch kAvx2{avx2::sum, avx2::dot, avx2::max_abs,
                         avx2::sum_sq_dev, avx2::lorentz_dot_batch,
                         avx2::lorentz_moments, "avx2"};
#endif

bool detect_avx2() {
#if defined(__x86_64__) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Dispatch* pick_auto() {
#if defined(__x86_64__)
    if (detect_avx2() && std::getenv("SLANTSURF_NO_SIMD") == nullptr) return &kAvx2;
#endif
    return &kScalar;
}

const Dispatch* g_active = nullptr;

const Dispatch* active() {
    if (g_active == nullptr) g_active = pick_auto();
    return g_active;
}

}  // namespace

bool avx2_available() noexcept { return detect_avx2(); }

void set_backend(Backend b) {
    switch (b) {
        case Backend::Auto:
            g_active = pick_auto();
            return;
        case Backend::Scalar:
            g_active = &kScalar;
            return;
        case Backend::Avx2:
#if defined(__x86_64__)
            if (detect_avx2()) {
                g_active = &kAvx2;
                return;
            }
#endif
            throw Error(Errc::InvalidArgument, "AVX2 backend not available on this CPU");
    }
}

const char* active_backend() noexcept { return active()->name; }

double sum(std::span<const double> x) { return active()->sum(x); }
double dot(std::span<const double> x, std::span<const double> y) {
    return active()->dot(x, y);
}
double max_abs(std::span<const double> x) { return active()->max_abs(x); }
double sum_sq_dev(std::span<const double> x, double mean) {
    return active()->sum_sq_dev(x, mean);
}

double MeanVar::stddev() const { return std::sqrt(std::max(variance, 0.0)); }

MeanVar mean_var(std::span<const double> x) {
    MeanVar mv;
    if (x.empty()) return mv;
    const double n = static_cast<double>(x.size());
    mv.mean = active()->sum(x) / n;
    // two passes: squared deviations avoid the E[x^2] - mean^2 cancellation
    mv.variance = active()->sum_sq_dev(x, mv.mean) / n;
    if (mv.variance < 0.0) mv.variance = 0.0;
    return mv;
}

void lorentz_dot_batch(const double* x1, const double* x2, const double* x3,
                       const double* y1, const double* y2, const double* y3,
                       double* out, std::size_t n) {
    active()->lorentz_dot_batch(x1, x2, x3, y1, y2, y3, out, n);
}

Moments3 lorentz_moments(const double* v1, const double* v2, const double* v3,
                         std::size_t n) {
    return active()->lorentz_moments(v1, v2, v3, n);
}

}  // namespace slantsurf::kernels
