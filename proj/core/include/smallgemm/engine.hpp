#pragma once

#include <smallgemm/layout.hpp>
#include <smallgemm/microkernels.hpp>
#include <smallgemm/scalar.hpp>

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace smallgemm {

struct EngineConfig {
    /// Number of contiguous batch ranges handed to workers. Unset uses
    /// default_chunk_count(N); an explicit 0 is rejected.
    std::optional<index_t> chunk_count;
    /// Forces a kernel method for square sizes 1..16.
    std::optional<KernelMethod> method_override;
    /// Use the (m2, m1) ordering of the factorized kernel.
    bool swap_factors = false;
};

struct IndexRange {
    index_t begin = 0;
    index_t end   = 0;
    index_t size() const noexcept { return end - begin; }
    friend bool operator==(const IndexRange &, const IndexRange &) = default;
};

/// min(N, 8 * hardware threads).
index_t default_chunk_count(index_t batch_count) noexcept;

/// Balanced partition of [0, N) into min(chunk_count, N) ranges; the first
/// N % chunks ranges are one longer. Throws InvalidArgument for 0 chunks.
std::vector<IndexRange> chunk_ranges(index_t batch_count, index_t chunk_count);

/// Runs `task` once per range, concurrently or not. Each task touches only
/// its own range. The first exception thrown by a task is rethrown.
void run_chunks(std::span<const IndexRange> ranges,
                const std::function<void(IndexRange)> &task);

/// True for shapes served by the specialized kernels: m == n == k, 1..16.
constexpr bool has_fast_path(index_t m, index_t n, index_t k) noexcept {
    return m == n && n == k && m >= 1 && m <= max_kernel_size;
}

/// C^p <- alpha op(A^p) op(B^p) + beta C^p for p < batch_count, where entry
/// (i, j) of X^p is x[i + ldx*j + ldx2*p]. transa/transb accept n, t, c in
/// either case. All checks run before any work starts; on error C is
/// untouched. Results do not depend on the chunk count.
template <Scalar T>
void gemm_multi_uniform(char transa, char transb, index_t m, index_t n,
                        index_t k, const AxpbyMode<T> &mode,
                        std::span<const T> a, index_t lda, index_t lda2,
                        std::span<const T> b, index_t ldb, index_t ldb2,
                        std::span<T> c, index_t ldc, index_t ldc2,
                        index_t batch_count, const EngineConfig &config = {});

/// Same contract with descriptor operands (which may carry a base offset).
/// The batch size is dc.count; da and db must hold at least that many.
template <Scalar T>
void gemm_multi_uniform(TransOp transa, TransOp transb, index_t m, index_t n,
                        index_t k, const AxpbyMode<T> &mode,
                        std::span<const T> a, const UniformBatchDescriptor &da,
                        std::span<const T> b, const UniformBatchDescriptor &db,
                        std::span<T> c, const UniformBatchDescriptor &dc,
                        const EngineConfig &config = {});

/// Pointer-collection variant: matrix p of X starts at x[x_offsets[p]].
/// Output matrices must be pairwise disjoint (OverlappingOutputs) and the C
/// buffer must not overlap A or B (AliasedOutput). Same kernels as the
/// uniform path; only the per-matrix address computation differs.
template <Scalar T>
void gemm_multi_nounif(char transa, char transb, index_t m, index_t n,
                       index_t k, const AxpbyMode<T> &mode,
                       std::span<const T> a, std::span<const index_t> a_offsets,
                       index_t lda, std::span<const T> b,
                       std::span<const index_t> b_offsets, index_t ldb,
                       std::span<T> c, std::span<const index_t> c_offsets,
                       index_t ldc, index_t batch_count,
                       const EngineConfig &config = {});

#define SMALLGEMM_EXTERN_ENGINE(T)                                             \
    extern template void gemm_multi_uniform<T>(                                \
        char, char, index_t, index_t, index_t, const AxpbyMode<T> &,           \
        std::span<const T>, index_t, index_t, std::span<const T>, index_t,     \
        index_t, std::span<T>, index_t, index_t, index_t,                      \
        const EngineConfig &);                                                 \
    extern template void gemm_multi_uniform<T>(                                \
        TransOp, TransOp, index_t, index_t, index_t, const AxpbyMode<T> &,     \
        std::span<const T>, const UniformBatchDescriptor &,                    \
        std::span<const T>, const UniformBatchDescriptor &, std::span<T>,      \
        const UniformBatchDescriptor &, const EngineConfig &);                 \
    extern template void gemm_multi_nounif<T>(                                 \
        char, char, index_t, index_t, index_t, const AxpbyMode<T> &,           \
        std::span<const T>, std::span<const index_t>, index_t,                 \
        std::span<const T>, std::span<const index_t>, index_t, std::span<T>,   \
        std::span<const index_t>, index_t, index_t, const EngineConfig &);
SMALLGEMM_EXTERN_ENGINE(float)
SMALLGEMM_EXTERN_ENGINE(double)
SMALLGEMM_EXTERN_ENGINE(std::complex<float>)
SMALLGEMM_EXTERN_ENGINE(std::complex<double>)
#undef SMALLGEMM_EXTERN_ENGINE

} // namespace smallgemm
