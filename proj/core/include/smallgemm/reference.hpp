#pragma once

#include <smallgemm/layout.hpp>
#include <smallgemm/scalar.hpp>

#include <cstdint>
#include <span>

namespace smallgemm {

// Straightforward batched GEMM used as ground truth and as the fallback for
// shapes outside the specialized kernels (non-square or m > 16). Every entry
// is accumulated in ascending k from a zero start, in the element's own
// precision; the batch is walked in ascending p. Slow on purpose.

namespace detail {

/// Stored shape of an operand given the op applied to it: op(X) is
/// `op_rows x op_cols`.
constexpr void stored_shape(TransOp op, index_t op_rows, index_t op_cols,
                            index_t &rows, index_t &cols) noexcept {
    if (op == TransOp::None) {
        rows = op_rows;
        cols = op_cols;
    } else {
        rows = op_cols;
        cols = op_rows;
    }
}

/// Checks that stored operand shapes agree with op(A) m x k, op(B) k x n and
/// C m x n. Throws InvalidDimension.
void check_shapes(TransOp transa, TransOp transb, index_t m, index_t n,
                  index_t k, index_t a_rows, index_t a_cols, index_t b_rows,
                  index_t b_cols, index_t c_rows, index_t c_cols);

template <Scalar T>
T op_entry(TransOp op, const T *x, index_t ld, index_t i, index_t j) noexcept {
    switch (op) {
        case TransOp::None: return x[i + ld * j];
        case TransOp::Transpose: return x[j + ld * i];
        case TransOp::ConjTranspose: return conjugate(x[j + ld * i]);
    }
    return x[i + ld * j];
}

} // namespace detail

/// One C <- alpha op(A) op(B) + beta C on raw column-major storage.
template <Scalar T>
void gemm_naive_single(TransOp transa, TransOp transb, index_t m, index_t n,
                       index_t k, const AxpbyMode<T> &mode, const T *a,
                       index_t lda, const T *b, index_t ldb, T *c,
                       index_t ldc) {
    mode.visit([&](auto axpby) {
        for (index_t j = 0; j < n; ++j) {
            for (index_t i = 0; i < m; ++i) {
                T acc{};
                for (index_t l = 0; l < k; ++l)
                    acc += mul(detail::op_entry(transa, a, lda, i, l),
                               detail::op_entry(transb, b, ldb, l, j));
                axpby(c[i + ldc * j], acc);
            }
        }
    });
}

/// Uniform-stride batch. `count` must not exceed any descriptor's count.
template <Scalar T>
void gemm_naive(TransOp transa, TransOp transb, index_t m, index_t n,
                index_t k, const AxpbyMode<T> &mode, std::span<const T> a,
                const UniformBatchDescriptor &da, std::span<const T> b,
                const UniformBatchDescriptor &db, std::span<T> c,
                const UniformBatchDescriptor &dc, index_t count);

/// Pointer-collection batch; all three handle batches must have equal count.
template <Scalar T>
void gemm_naive(TransOp transa, TransOp transb, index_t m, index_t n,
                index_t k, const AxpbyMode<T> &mode, std::span<const T> a,
                const MatrixHandleBatch &ha, std::span<const T> b,
                const MatrixHandleBatch &hb, std::span<T> c,
                const MatrixHandleBatch &hc);

#define SMALLGEMM_EXTERN_NAIVE(T)                                              \
    extern template void gemm_naive<T>(                                        \
        TransOp, TransOp, index_t, index_t, index_t, const AxpbyMode<T> &,     \
        std::span<const T>, const UniformBatchDescriptor &,                    \
        std::span<const T>, const UniformBatchDescriptor &, std::span<T>,      \
        const UniformBatchDescriptor &, index_t);                              \
    extern template void gemm_naive<T>(                                        \
        TransOp, TransOp, index_t, index_t, index_t, const AxpbyMode<T> &,     \
        std::span<const T>, const MatrixHandleBatch &, std::span<const T>,     \
        const MatrixHandleBatch &, std::span<T>, const MatrixHandleBatch &);
SMALLGEMM_EXTERN_NAIVE(float)
SMALLGEMM_EXTERN_NAIVE(double)
SMALLGEMM_EXTERN_NAIVE(std::complex<float>)
SMALLGEMM_EXTERN_NAIVE(std::complex<double>)
#undef SMALLGEMM_EXTERN_NAIVE

/// Conventional flop count for `count` square GEMMs of size m: 2m^3 each for
/// real kinds, 8m^3 for complex, whatever alpha, beta and the ops are.
std::uint64_t flops(ScalarKind kind, index_t m, index_t count);

/// Rate in GFlop/s. Throws InvalidArgument unless seconds > 0.
double gflops(double flop_count, double seconds);

} // namespace smallgemm
