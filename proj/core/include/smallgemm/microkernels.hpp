#pragma once

#include <smallgemm/layout.hpp>
#include <smallgemm/scalar.hpp>

#include <optional>
#include <span>
#include <string_view>

namespace smallgemm {

/// Largest square size with a specialized kernel.
inline constexpr index_t max_kernel_size = 16;

enum class KernelMethod {
    /// Stage A and B, then every output entry is one independent dot product.
    PerEntry,
    /// m = m1*m2; an m x m2 grid of lanes, each accumulating m1 entries of a
    /// row strip while sharing the staged operands.
    Factorized,
};

std::string_view to_string(KernelMethod method) noexcept;
std::optional<KernelMethod> parse_kernel_method(std::string_view) noexcept;

struct FactorPair {
    index_t m1 = 1;
    index_t m2 = 1;
    friend bool operator==(const FactorPair &, const FactorPair &) = default;
};

/// The pair m1*m2 == m with minimal |m1 - m2|, m1 <= m2. Primes give (1, m).
/// Throws InvalidArgument outside 1..16.
FactorPair factorize(index_t m);

/// Factorized for m in {15, 16}, PerEntry otherwise.
KernelMethod default_method(index_t m) noexcept;

template <Scalar T>
struct KernelPlan {
    KernelMethod method = KernelMethod::PerEntry;
    index_t m           = 1;
    /// Meaningful for Factorized only. Either factorize(m) or its transpose.
    FactorPair factors{};
    TransOp transa = TransOp::None;
    TransOp transb = TransOp::None;
    AxpbyMode<T> mode = AxpbyMode<T>::a1b0();

    static constexpr ScalarKind kind = scalar_kind_v<T>;
};

/// Resolves the kernel for a square size. `method` forces a strategy;
/// `swap_factors` selects the (m2, m1) ordering of the factorized kernel.
/// Throws InvalidArgument if m is outside 1..16.
template <Scalar T>
KernelPlan<T> plan(index_t m, TransOp transa, TransOp transb,
                   const AxpbyMode<T> &mode,
                   std::optional<KernelMethod> method = std::nullopt,
                   bool swap_factors = false) {
    const FactorPair f = factorize(m);
    KernelPlan<T> p;
    p.method  = method.value_or(default_method(m));
    p.m       = m;
    p.factors = swap_factors ? FactorPair{f.m2, f.m1} : f;
    p.transa  = transa;
    p.transb  = transb;
    p.mode    = mode;
    return p;
}

/// Checks a (possibly hand-built) plan: size range, method, and a factor pair
/// that has a compiled kernel. Throws InvalidArgument.
template <Scalar T>
void check_plan(const KernelPlan<T> &plan);

// Runs one kernel over a batch of square m x m matrices. Operand descriptors
// are validated first (errors propagate from batch-layout); the plan method
// must match the entry point.

template <Scalar T>
void run_per_entry(const KernelPlan<T> &plan, std::span<const T> a,
                   const UniformBatchDescriptor &da, std::span<const T> b,
                   const UniformBatchDescriptor &db, std::span<T> c,
                   const UniformBatchDescriptor &dc);

template <Scalar T>
void run_factorized(const KernelPlan<T> &plan, std::span<const T> a,
                    const UniformBatchDescriptor &da, std::span<const T> b,
                    const UniformBatchDescriptor &db, std::span<T> c,
                    const UniformBatchDescriptor &dc);

namespace detail {

/// Kernel-side view of one batch range. Addresses are element offsets into
/// the three buffers; nothing here is validated.
template <Scalar T>
struct KernelArgs {
    const T *a = nullptr;
    const T *b = nullptr;
    T *c       = nullptr;
    index_t lda = 0, ldb = 0, ldc = 0;
    index_t begin = 0, end = 0;
};

struct UniformAddressing {
    index_t a_base = 0, a_ld2 = 0;
    index_t b_base = 0, b_ld2 = 0;
    index_t c_base = 0, c_ld2 = 0;
};

struct HandleAddressing {
    const index_t *a = nullptr;
    const index_t *b = nullptr;
    const index_t *c = nullptr;
};

inline index_t offset_a(const UniformAddressing &d, index_t p) noexcept {
    return d.a_base + d.a_ld2 * p;
}
inline index_t offset_b(const UniformAddressing &d, index_t p) noexcept {
    return d.b_base + d.b_ld2 * p;
}
inline index_t offset_c(const UniformAddressing &d, index_t p) noexcept {
    return d.c_base + d.c_ld2 * p;
}
inline index_t offset_a(const HandleAddressing &d, index_t p) noexcept {
    return d.a[p];
}
inline index_t offset_b(const HandleAddressing &d, index_t p) noexcept {
    return d.b[p];
}
inline index_t offset_c(const HandleAddressing &d, index_t p) noexcept {
    return d.c[p];
}

/// Unchecked launch of the specialized kernel selected by `plan` for matrix
/// indices [args.begin, args.end).
template <Scalar T>
void launch(const KernelPlan<T> &plan, const KernelArgs<T> &args,
            const UniformAddressing &addr);
template <Scalar T>
void launch(const KernelPlan<T> &plan, const KernelArgs<T> &args,
            const HandleAddressing &addr);

} // namespace detail

#define SMALLGEMM_EXTERN_KERNELS(T)                                            \
    extern template void check_plan<T>(const KernelPlan<T> &);                 \
    extern template void run_per_entry<T>(                                     \
        const KernelPlan<T> &, std::span<const T>,                             \
        const UniformBatchDescriptor &, std::span<const T>,                    \
        const UniformBatchDescriptor &, std::span<T>,                          \
        const UniformBatchDescriptor &);                                       \
    extern template void run_factorized<T>(                                    \
        const KernelPlan<T> &, std::span<const T>,                             \
        const UniformBatchDescriptor &, std::span<const T>,                    \
        const UniformBatchDescriptor &, std::span<T>,                          \
        const UniformBatchDescriptor &);                                       \
    extern template void detail::launch<T>(const KernelPlan<T> &,              \
                                           const detail::KernelArgs<T> &,      \
                                           const detail::UniformAddressing &); \
    extern template void detail::launch<T>(const KernelPlan<T> &,              \
                                           const detail::KernelArgs<T> &,      \
                                           const detail::HandleAddressing &);
SMALLGEMM_EXTERN_KERNELS(float)
SMALLGEMM_EXTERN_KERNELS(double)
SMALLGEMM_EXTERN_KERNELS(std::complex<float>)
SMALLGEMM_EXTERN_KERNELS(std::complex<double>)
#undef SMALLGEMM_EXTERN_KERNELS

} // namespace smallgemm
