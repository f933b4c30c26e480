#pragma once

#include <cstddef>

namespace ccc::kernels {

#if defined(__x86_64__) || defined(_M_X64)
#define CCC_KERNELS_HAVE_AVX2 1
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
double squared_norm(const double* x, std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__)
#define CCC_KERNELS_HAVE_NEON 1
namespace neon {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
double squared_norm(const double* x, std::size_t n);
}  // namespace neon
#endif

}  // namespace ccc::kernels
