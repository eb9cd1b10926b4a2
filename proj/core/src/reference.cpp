#include <smallgemm/error.hpp>
#include <smallgemm/reference.hpp>

#include <string>

namespace smallgemm {

namespace detail {

void check_shapes(TransOp transa, TransOp transb, index_t m, index_t n,
                  index_t k, index_t a_rows, index_t a_cols, index_t b_rows,
                  index_t b_cols, index_t c_rows, index_t c_cols) {
    auto expect = [](std::string field, index_t got, index_t want) {
        if (got != want)
            raise(Errc::InvalidDimension, std::move(field),
                  std::to_string(got) + " != expected " + std::to_string(want));
    };
    index_t r, c;
    stored_shape(transa, m, k, r, c);
    expect("A.rows", a_rows, r);
    expect("A.cols", a_cols, c);
    stored_shape(transb, k, n, r, c);
    expect("B.rows", b_rows, r);
    expect("B.cols", b_cols, c);
    expect("C.rows", c_rows, m);
    expect("C.cols", c_cols, n);
}

} // namespace detail

template <Scalar T>
void gemm_naive(TransOp transa, TransOp transb, index_t m, index_t n,
                index_t k, const AxpbyMode<T> &mode, std::span<const T> a,
                const UniformBatchDescriptor &da, std::span<const T> b,
                const UniformBatchDescriptor &db, std::span<T> c,
                const UniformBatchDescriptor &dc, index_t count) {
    detail::check_shapes(transa, transb, m, n, k, da.rows, da.cols, db.rows,
                         db.cols, dc.rows, dc.cols);
    if (count > da.count || count > db.count || count > dc.count)
        raise(Errc::InvalidArgument, "count",
              "batch count exceeds a descriptor's count");
    validate(da, a.size(), "A");
    validate(db, b.size(), "B");
    validate(dc, c.size(), "C");
    for (index_t p = 0; p < count; ++p)
        gemm_naive_single(transa, transb, m, n, k, mode,
                          a.data() + da.base + da.ld2 * p, da.ld,
                          b.data() + db.base + db.ld2 * p, db.ld,
                          c.data() + dc.base + dc.ld2 * p, dc.ld);
}

template <Scalar T>
void gemm_naive(TransOp transa, TransOp transb, index_t m, index_t n,
                index_t k, const AxpbyMode<T> &mode, std::span<const T> a,
                const MatrixHandleBatch &ha, std::span<const T> b,
                const MatrixHandleBatch &hb, std::span<T> c,
                const MatrixHandleBatch &hc) {
    detail::check_shapes(transa, transb, m, n, k, ha.rows, ha.cols, hb.rows,
                         hb.cols, hc.rows, hc.cols);
    if (ha.count() != hc.count() || hb.count() != hc.count())
        raise(Errc::OffsetCountMismatch, "offsets",
              "A, B and C offset lists differ in length");
    validate(ha, a.size(), "A");
    validate(hb, b.size(), "B");
    validate(hc, c.size(), "C");
    for (index_t p = 0; p < hc.count(); ++p)
        gemm_naive_single(transa, transb, m, n, k, mode,
                          a.data() + ha.offsets[p], ha.ld,
                          b.data() + hb.offsets[p], hb.ld,
                          c.data() + hc.offsets[p], hc.ld);
}

#define SMALLGEMM_INSTANTIATE_NAIVE(T)                                         \
    template void gemm_naive<T>(                                               \
        TransOp, TransOp, index_t, index_t, index_t, const AxpbyMode<T> &,     \
        std::span<const T>, const UniformBatchDescriptor &,                    \
        std::span<const T>, const UniformBatchDescriptor &, std::span<T>,      \
        const UniformBatchDescriptor &, index_t);                              \
    template void gemm_naive<T>(                                               \
        TransOp, TransOp, index_t, index_t, index_t, const AxpbyMode<T> &,     \
        std::span<const T>, const MatrixHandleBatch &, std::span<const T>,     \
        const MatrixHandleBatch &, std::span<T>, const MatrixHandleBatch &);
SMALLGEMM_INSTANTIATE_NAIVE(float)
SMALLGEMM_INSTANTIATE_NAIVE(double)
SMALLGEMM_INSTANTIATE_NAIVE(std::complex<float>)
SMALLGEMM_INSTANTIATE_NAIVE(std::complex<double>)

std::uint64_t flops(ScalarKind kind, index_t m, index_t count) {
    if (m == 0)
        raise(Errc::InvalidArgument, "m", "flop model needs m >= 1");
    const std::uint64_t per = is_complex(kind) ? 8 : 2;
    const std::uint64_t mm  = m;
    return per * mm * mm * mm * static_cast<std::uint64_t>(count);
}

double gflops(double flop_count, double seconds) {
    if (!(seconds > 0))
        raise(Errc::InvalidArgument, "seconds", "must be positive");
    return flop_count / seconds / 1e9;
}

} // namespace smallgemm
