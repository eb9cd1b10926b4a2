#pragma once

// Test-only helpers: seeded random batches with padded layouts, an
// extended-precision GEMM oracle that shares no code with the library, and
// tolerance comparisons.

#include <smallgemm/layout.hpp>
#include <smallgemm/scalar.hpp>

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace testing {

using smallgemm::index_t;
using smallgemm::TransOp;
using smallgemm::UniformBatchDescriptor;

template <class T>
T random_scalar(std::mt19937_64 &rng) {
    using R = smallgemm::real_t<T>;
    std::uniform_real_distribution<R> dist(R(-1), R(1));
    if constexpr (smallgemm::is_complex_v<T>) {
        const R re = dist(rng);
        return T(re, dist(rng));
    } else {
        return dist(rng);
    }
}

template <class T>
T sentinel() {
    using R = smallgemm::real_t<T>;
    if constexpr (smallgemm::is_complex_v<T>)
        return T(R(-777.25), R(313.5));
    else
        return R(-777.25);
}

template <class T>
T quiet_nan() {
    using R = smallgemm::real_t<T>;
    constexpr R q = std::numeric_limits<R>::quiet_NaN();
    if constexpr (smallgemm::is_complex_v<T>)
        return T(q, q);
    else
        return q;
}

template <class T>
bool is_finite(const T &x) {
    if constexpr (smallgemm::is_complex_v<T>)
        return std::isfinite(x.real()) && std::isfinite(x.imag());
    else
        return std::isfinite(x);
}

template <class T>
bool bitwise_equal(std::span<const T> x, std::span<const T> y) {
    return x.size() == y.size() &&
           (x.empty() ||
            std::memcmp(x.data(), y.data(), x.size_bytes()) == 0);
}

/// Buffer plus descriptor. Entries inside matrix footprints are random; the
/// padding (ld > rows, ld2 > ld*cols, leading base) holds sentinel().
template <class T>
struct RandomBatch {
    UniformBatchDescriptor desc;
    std::vector<T> data;

    std::span<const T> cspan() const { return data; }
    std::span<T> span() { return data; }

    bool in_footprint(index_t e) const {
        if (e < desc.base || desc.count == 0)
            return false;
        const index_t rel = e - desc.base;
        const index_t p = rel / desc.ld2, in = rel % desc.ld2;
        return p < desc.count && in % desc.ld < desc.rows &&
               in / desc.ld < desc.cols;
    }
};

/// ld in [rows, rows + max_ld_pad], ld2 in [ld*cols, ld*cols + max_ld2_pad].
template <class T>
RandomBatch<T> make_batch(std::mt19937_64 &rng, index_t rows, index_t cols,
                          index_t count, index_t max_ld_pad = 0,
                          index_t max_ld2_pad = 0, index_t base = 0) {
    std::uniform_int_distribution<index_t> ld_pad(0, max_ld_pad);
    std::uniform_int_distribution<index_t> ld2_pad(0, max_ld2_pad);
    RandomBatch<T> b;
    b.desc.base  = base;
    b.desc.rows  = rows;
    b.desc.cols  = cols;
    b.desc.ld    = std::max<index_t>(1, rows + ld_pad(rng));
    b.desc.ld2   = std::max<index_t>(1, b.desc.ld * cols + ld2_pad(rng));
    b.desc.count = count;
    // A little trailing slack so overruns past the last matrix are visible.
    b.data.assign(smallgemm::required_length(b.desc) + 5, sentinel<T>());
    for (index_t p = 0; p < count; ++p)
        for (index_t j = 0; j < cols; ++j)
            for (index_t i = 0; i < rows; ++i)
                b.data[base + i + b.desc.ld * j + b.desc.ld2 * p] =
                    random_scalar<T>(rng);
    return b;
}

/// Stored shape for an operand that must present op(X) as op_rows x op_cols.
inline void stored_dims(TransOp op, index_t op_rows, index_t op_cols,
                        index_t &rows, index_t &cols) {
    rows = op == TransOp::None ? op_rows : op_cols;
    cols = op == TransOp::None ? op_cols : op_rows;
}

// ---------------------------------------------------------------------------
// Extended-precision oracle.

template <class T>
using wide_t = std::conditional_t<smallgemm::is_complex_v<T>,
                                  std::complex<long double>, long double>;

template <class T>
wide_t<T> widen(const T &x) {
    if constexpr (smallgemm::is_complex_v<T>)
        return {static_cast<long double>(x.real()),
                static_cast<long double>(x.imag())};
    else
        return static_cast<long double>(x);
}

template <class T>
wide_t<T> wide_op(TransOp op, const T *x, index_t ld, index_t i, index_t j) {
    if (op == TransOp::None)
        return widen(x[i + ld * j]);
    wide_t<T> v = widen(x[j + ld * i]);
    if constexpr (smallgemm::is_complex_v<T>)
        if (op == TransOp::ConjTranspose)
            v = std::conj(v);
    return v;
}

/// Expected C for every matrix, packed column-major (m*n per matrix), from
/// an element-by-element sum in long double. `alpha`, `beta` are the
/// effective scalars; when `read_c` is false the prior C is ignored.
template <class T>
std::vector<wide_t<T>> wide_gemm(TransOp ta, TransOp tb, index_t m, index_t n,
                                 index_t k, T alpha, T beta, bool read_c,
                                 const RandomBatch<T> &a,
                                 const RandomBatch<T> &b,
                                 const RandomBatch<T> &c) {
    std::vector<wide_t<T>> out(m * n * c.desc.count);
    for (index_t p = 0; p < c.desc.count; ++p) {
        const T *ap = a.data.data() + a.desc.base + a.desc.ld2 * p;
        const T *bp = b.data.data() + b.desc.base + b.desc.ld2 * p;
        const T *cp = c.data.data() + c.desc.base + c.desc.ld2 * p;
        for (index_t j = 0; j < n; ++j)
            for (index_t i = 0; i < m; ++i) {
                wide_t<T> s{};
                for (index_t l = 0; l < k; ++l)
                    s += wide_op(ta, ap, a.desc.ld, i, l) *
                         wide_op(tb, bp, b.desc.ld, l, j);
                wide_t<T> v = widen(alpha) * s;
                if (read_c)
                    v += widen(beta) * widen(cp[i + c.desc.ld * j]);
                out[i + m * j + m * n * p] = v;
            }
    }
    return out;
}

template <class T>
constexpr double base_tolerance() {
    return std::is_same_v<smallgemm::real_t<T>, float> ? 1e-5 : 1e-12;
}

/// |got - want| <= tol * max(k, 1) * max(|want|, 1).
template <class T, class W>
bool close(const T &got, const W &want, double tol, index_t k) {
    const long double diff = std::abs(widen(got) - static_cast<wide_t<T>>(want));
    const long double mag  = std::max<long double>(std::abs(want), 1.0L);
    return diff <= tol * std::max<index_t>(k, 1) * mag;
}

/// Distance in units in the last place between two finite reals.
template <class R>
std::uint64_t ulp_distance(R x, R y) {
    using U = std::conditional_t<sizeof(R) == 4, std::uint32_t, std::uint64_t>;
    using S = std::make_signed_t<U>;
    auto key = [](R v) {
        const U u = std::bit_cast<U>(v);
        const U sign = U(1) << (sizeof(U) * 8 - 1);
        return (u & sign) ? -static_cast<S>(u & ~sign) : static_cast<S>(u);
    };
    const S kx = key(x), ky = key(y);
    return kx > ky ? static_cast<std::uint64_t>(kx - ky)
                   : static_cast<std::uint64_t>(ky - kx);
}

template <class T>
std::uint64_t ulp_distance_scalar(const T &x, const T &y) {
    if constexpr (smallgemm::is_complex_v<T>)
        return std::max(ulp_distance(x.real(), y.real()),
                        ulp_distance(x.imag(), y.imag()));
    else
        return ulp_distance(x, y);
}

} // namespace testing
