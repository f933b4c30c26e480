#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "ccc/kernels/vector_ops.hpp"
#include "kernels_internal.hpp"

namespace ccc::kernels {
namespace {

constexpr KernelTable kScalar{scalar::dot, scalar::axpy, scalar::scale, scalar::squared_norm};
#ifdef CCC_KERNELS_HAVE_AVX2
constexpr KernelTable kAvx2{avx2::dot, avx2::axpy, avx2::scale, avx2::squared_norm};
#endif
#ifdef CCC_KERNELS_HAVE_NEON
constexpr KernelTable kNeon{neon::dot, neon::axpy, neon::scale, neon::squared_norm};
#endif

bool cpu_supports(Isa isa) {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#ifdef CCC_KERNELS_HAVE_AVX2
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::neon:
#ifdef CCC_KERNELS_HAVE_NEON
            return true;
#else
            return false;
#endif
    }
    return false;
}

// CCC_KERNELS=scalar pins the reference path, e.g. when bisecting numeric drift.
Isa detect() {
    if (const char* env = std::getenv("CCC_KERNELS")) {
        const std::string want(env);
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
            if (want == isa_name(isa) && cpu_supports(isa)) return isa;
    }
    if (cpu_supports(Isa::avx2)) return Isa::avx2;
    if (cpu_supports(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

void require_same(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("vector size mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
        if (cpu_supports(isa)) out.push_back(isa);
    return out;
}

bool isa_available(Isa isa) { return cpu_supports(isa); }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
    if (!cpu_supports(isa)) throw std::invalid_argument("kernel variant unavailable: " + std::string(isa_name(isa)));
    current().store(isa, std::memory_order_relaxed);
}

const KernelTable& table_for(Isa isa) {
    switch (isa) {
#ifdef CCC_KERNELS_HAVE_AVX2
        case Isa::avx2: return kAvx2;
#endif
#ifdef CCC_KERNELS_HAVE_NEON
        case Isa::neon: return kNeon;
#endif
        default: return kScalar;
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    require_same(a.size(), b.size());
    return table_for(active_isa()).dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    require_same(x.size(), y.size());
    table_for(active_isa()).axpy(alpha, x.data(), y.data(), x.size());
}

void scale(double alpha, std::span<double> x) { table_for(active_isa()).scale(alpha, x.data(), x.size()); }

double squared_norm(std::span<const double> x) { return table_for(active_isa()).squared_norm(x.data(), x.size()); }

}  // namespace ccc::kernels
