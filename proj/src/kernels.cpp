#include "hypefin/kernels.hpp"

#include <stdexcept>

namespace hypefin::kernels {

namespace scalar {

double sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double sumsq_dev(const double* x, std::size_t n, double mean) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - mean;
        acc += d * d;
    }
    return acc;
}

void affine(double a, double b, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + b;
}

} // namespace scalar

namespace avx2 {
// defined in kernels_avx2.cpp, compiled with -mavx2
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double sumsq_dev(const double* x, std::size_t n, double mean);
void affine(double a, double b, const double* x, double* y, std::size_t n);
} // namespace avx2

namespace {
const Ops kScalarOps{scalar::sum, scalar::dot, scalar::sumsq_dev, scalar::affine};
const Ops kAvx2Ops{avx2::sum, avx2::dot, avx2::sumsq_dev, avx2::affine};
} // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops& ops(Backend backend) {
    switch (backend) {
    case Backend::scalar: return kScalarOps;
    case Backend::avx2:
        if (!avx2_available()) throw std::runtime_error("AVX2 not available on this CPU");
        return kAvx2Ops;
    }
    throw std::logic_error("unknown backend");
}

Backend preferred_backend() {
    return avx2_available() ? Backend::avx2 : Backend::scalar;
}

const Ops& active() {
    static const Ops& selected = ops(preferred_backend());
    return selected;
}

std::string backend_name(Backend backend) {
    return backend == Backend::avx2 ? "avx2" : "scalar";
}

double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

double dot(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: length mismatch");
    return active().dot(x.data(), y.data(), x.size());
}

double mean(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("mean of empty span");
    return sum(x) / static_cast<double>(x.size());
}

double variance_pop(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("variance of empty span");
    const double m = mean(x);
    return active().sumsq_dev(x.data(), x.size(), m) / static_cast<double>(x.size());
}

} // namespace hypefin::kernels
