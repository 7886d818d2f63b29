#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace hypefin::kernels {

// Data-parallel inner loops shared by the numeric modules. A scalar
// reference implementation always exists; an AVX2 variant is selected at
// runtime when the CPU supports it. Both variants are equivalence-tested
// against each other.

enum class Backend { scalar, avx2 };

struct Ops {
    double (*sum)(const double* x, std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);
    // Sum of squared deviations from a precomputed mean.
    double (*sumsq_dev)(const double* x, std::size_t n, double mean);
    // y[i] = a * x[i] + b, elementwise (affine map, used for source adjust).
    void (*affine)(double a, double b, const double* x, double* y, std::size_t n);
};

const Ops& ops(Backend backend);

/// Best backend available on this CPU (AVX2 when supported).
Backend preferred_backend();
const Ops& active();
std::string backend_name(Backend backend);

// Convenience wrappers over the active backend.
double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double mean(std::span<const double> x);
/// Population variance (1/N normalization).
double variance_pop(std::span<const double> x);

bool avx2_available();

} // namespace hypefin::kernels
