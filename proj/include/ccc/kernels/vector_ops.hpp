#pragma once

// Dense double-precision vector kernels used by concept training and
// scoring. Each kernel has a scalar reference implementation and SIMD
// variants; the variant is picked once at startup from the CPU's feature
// bits and can be overridden for testing.

#include <span>
#include <string_view>
#include <vector>

namespace ccc::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

/// Variants compiled into this binary and supported by the running CPU.
std::vector<Isa> available_isas();
bool isa_available(Isa isa);

Isa active_isa();
/// Switches the process-wide variant. Throws std::invalid_argument when the
/// variant is unavailable.
void force_isa(Isa isa);

/// Kernel table; one instance per variant.
struct KernelTable {
    double (*dot)(const double* a, const double* b, std::size_t n);
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    void (*scale)(double alpha, double* x, std::size_t n);
    double (*squared_norm)(const double* x, std::size_t n);
};

const KernelTable& table_for(Isa isa);

// Dispatched entry points. Sizes must agree (std::invalid_argument otherwise).
double dot(std::span<const double> a, std::span<const double> b);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> x);
double squared_norm(std::span<const double> x);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
double squared_norm(const double* x, std::size_t n);
}  // namespace scalar

}  // namespace ccc::kernels
