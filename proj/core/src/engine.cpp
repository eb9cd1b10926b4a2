#include <smallgemm/engine.hpp>
#include <smallgemm/error.hpp>
#include <smallgemm/reference.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace smallgemm {

index_t default_chunk_count(index_t batch_count) noexcept {
    const index_t hw = std::max(1u, std::thread::hardware_concurrency());
    return std::min(batch_count, 8 * hw);
}

std::vector<IndexRange> chunk_ranges(index_t batch_count, index_t chunk_count) {
    if (chunk_count == 0)
        raise(Errc::InvalidArgument, "chunk_count", "must be at least 1");
    const index_t chunks = std::min(batch_count, chunk_count);
    std::vector<IndexRange> ranges;
    ranges.reserve(chunks);
    if (chunks == 0)
        return ranges;
    const index_t base = batch_count / chunks, extra = batch_count % chunks;
    index_t begin = 0;
    for (index_t i = 0; i < chunks; ++i) {
        const index_t len = base + (i < extra ? 1 : 0);
        ranges.push_back({begin, begin + len});
        begin += len;
    }
    return ranges;
}

void run_chunks(std::span<const IndexRange> ranges,
                const std::function<void(IndexRange)> &task) {
    const index_t workers = std::min<index_t>(
        ranges.size(), std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (const auto &r : ranges)
            task(r);
        return;
    }
    std::atomic<index_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (index_t i; (i = next.fetch_add(1)) < ranges.size();) {
            try {
                task(ranges[i]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (index_t w = 1; w < workers; ++w)
            pool.emplace_back(worker);
        worker();
    }
    if (failure)
        std::rethrow_exception(failure);
}

namespace {

template <class T, class U>
bool buffers_overlap(std::span<T> x, std::span<U> y) noexcept {
    if (x.empty() || y.empty())
        return false;
    const auto x0 = reinterpret_cast<std::uintptr_t>(x.data());
    const auto y0 = reinterpret_cast<std::uintptr_t>(y.data());
    return x0 < y0 + y.size_bytes() && y0 < x0 + x.size_bytes();
}

template <class T>
void check_aliasing(std::span<const T> a, std::span<const T> b,
                    std::span<T> c) {
    if (buffers_overlap(c, a))
        raise(Errc::AliasedOutput, "C", "output buffer overlaps A");
    if (buffers_overlap(c, b))
        raise(Errc::AliasedOutput, "C", "output buffer overlaps B");
}

index_t resolve_chunks(const EngineConfig &config, index_t batch_count) {
    if (config.chunk_count && *config.chunk_count == 0)
        raise(Errc::InvalidArgument, "chunk_count", "must be at least 1");
    return config.chunk_count.value_or(
        std::max<index_t>(1, default_chunk_count(batch_count)));
}

/// Shared driver for both interfaces; `addr` is a UniformAddressing or a
/// HandleAddressing.
template <Scalar T, class Addr>
void execute(TransOp transa, TransOp transb, index_t m, index_t n, index_t k,
             const AxpbyMode<T> &mode, const T *a, index_t lda, const T *b,
             index_t ldb, T *c, index_t ldc, const Addr &addr,
             index_t batch_count, const EngineConfig &config) {
    const auto ranges =
        chunk_ranges(batch_count, resolve_chunks(config, batch_count));
    if (batch_count == 0 || m == 0 || n == 0)
        return;

    if (has_fast_path(m, n, k)) {
        const auto kp = plan<T>(m, transa, transb, mode,
                                config.method_override, config.swap_factors);
        check_plan(kp);
        run_chunks(ranges, [&](IndexRange r) {
            detail::launch(kp,
                           detail::KernelArgs<T>{a, b, c, lda, ldb, ldc,
                                                 r.begin, r.end},
                           addr);
        });
        return;
    }

    run_chunks(ranges, [&](IndexRange r) {
        for (index_t p = r.begin; p < r.end; ++p)
            gemm_naive_single(transa, transb, m, n, k, mode,
                              a + detail::offset_a(addr, p), lda,
                              b + detail::offset_b(addr, p), ldb,
                              c + detail::offset_c(addr, p), ldc);
    });
}

} // namespace

template <Scalar T>
void gemm_multi_uniform(TransOp transa, TransOp transb, index_t m, index_t n,
                        index_t k, const AxpbyMode<T> &mode,
                        std::span<const T> a, const UniformBatchDescriptor &da,
                        std::span<const T> b, const UniformBatchDescriptor &db,
                        std::span<T> c, const UniformBatchDescriptor &dc,
                        const EngineConfig &config) {
    detail::check_shapes(transa, transb, m, n, k, da.rows, da.cols, db.rows,
                         db.cols, dc.rows, dc.cols);
    if (da.count < dc.count || db.count < dc.count)
        raise(Errc::InvalidArgument, "count",
              "A or B holds fewer matrices than C");
    validate(da, a.size(), "A");
    validate(db, b.size(), "B");
    validate(dc, c.size(), "C");
    check_aliasing(a, b, c);
    execute<T>(transa, transb, m, n, k, mode, a.data(), da.ld, b.data(),
               db.ld, c.data(), dc.ld,
               detail::UniformAddressing{da.base, da.ld2, db.base, db.ld2,
                                         dc.base, dc.ld2},
               dc.count, config);
}

template <Scalar T>
void gemm_multi_uniform(char transa, char transb, index_t m, index_t n,
                        index_t k, const AxpbyMode<T> &mode,
                        std::span<const T> a, index_t lda, index_t lda2,
                        std::span<const T> b, index_t ldb, index_t ldb2,
                        std::span<T> c, index_t ldc, index_t ldc2,
                        index_t batch_count, const EngineConfig &config) {
    const TransOp ta = parse_trans(transa, "transa");
    const TransOp tb = parse_trans(transb, "transb");
    UniformBatchDescriptor da{0, 0, 0, lda, lda2, batch_count};
    UniformBatchDescriptor db{0, 0, 0, ldb, ldb2, batch_count};
    detail::stored_shape(ta, m, k, da.rows, da.cols);
    detail::stored_shape(tb, k, n, db.rows, db.cols);
    const UniformBatchDescriptor dc{0, m, n, ldc, ldc2, batch_count};
    gemm_multi_uniform<T>(ta, tb, m, n, k, mode, a, da, b, db, c, dc, config);
}

template <Scalar T>
void gemm_multi_nounif(char transa, char transb, index_t m, index_t n,
                       index_t k, const AxpbyMode<T> &mode,
                       std::span<const T> a, std::span<const index_t> a_offsets,
                       index_t lda, std::span<const T> b,
                       std::span<const index_t> b_offsets, index_t ldb,
                       std::span<T> c, std::span<const index_t> c_offsets,
                       index_t ldc, index_t batch_count,
                       const EngineConfig &config) {
    const TransOp ta = parse_trans(transa, "transa");
    const TransOp tb = parse_trans(transb, "transb");
    if (a_offsets.size() != batch_count || b_offsets.size() != batch_count ||
        c_offsets.size() != batch_count)
        raise(Errc::OffsetCountMismatch, "offsets",
              "every offset list must hold batch_count entries");
    index_t ar, ac, br, bc;
    detail::stored_shape(ta, m, k, ar, ac);
    detail::stored_shape(tb, k, n, br, bc);
    validate(a_offsets, ar, ac, lda, a.size(), "A");
    validate(b_offsets, br, bc, ldb, b.size(), "B");
    validate(c_offsets, m, n, ldc, c.size(), "C");
    check_aliasing(a, b, c);
    check_disjoint(c_offsets, m, n, ldc, "C");
    execute<T>(ta, tb, m, n, k, mode, a.data(), lda, b.data(), ldb, c.data(),
               ldc,
               detail::HandleAddressing{a_offsets.data(), b_offsets.data(),
                                        c_offsets.data()},
               batch_count, config);
}

#define SMALLGEMM_INSTANTIATE_ENGINE(T)                                        \
    template void gemm_multi_uniform<T>(                                       \
        char, char, index_t, index_t, index_t, const AxpbyMode<T> &,           \
        std::span<const T>, index_t, index_t, std::span<const T>, index_t,     \
        index_t, std::span<T>, index_t, index_t, index_t,                      \
        const EngineConfig &);                                                 \
    template void gemm_multi_uniform<T>(                                       \
        TransOp, TransOp, index_t, index_t, index_t, const AxpbyMode<T> &,     \
        std::span<const T>, const UniformBatchDescriptor &,                    \
        std::span<const T>, const UniformBatchDescriptor &, std::span<T>,      \
        const UniformBatchDescriptor &, const EngineConfig &);                 \
    template void gemm_multi_nounif<T>(                                        \
        char, char, index_t, index_t, index_t, const AxpbyMode<T> &,           \
        std::span<const T>, std::span<const index_t>, index_t,                 \
        std::span<const T>, std::span<const index_t>, index_t, std::span<T>,   \
        std::span<const index_t>, index_t, index_t, const EngineConfig &);
SMALLGEMM_INSTANTIATE_ENGINE(float)
SMALLGEMM_INSTANTIATE_ENGINE(double)
SMALLGEMM_INSTANTIATE_ENGINE(std::complex<float>)
SMALLGEMM_INSTANTIATE_ENGINE(std::complex<double>)

} // namespace smallgemm
