#pragma once

// Size-specialized batch kernels. Everything that varies per call (size,
// ops, alpha/beta mode, method, addressing) is a template parameter, so the
// inner loops carry no branches and have compile-time trip counts. A runtime
// table maps dynamic arguments onto the instances.

#include <smallgemm/error.hpp>
#include <smallgemm/microkernels.hpp>

#include <array>
#include <utility>

namespace smallgemm::detail {

constexpr FactorPair factorize_ct(index_t m) noexcept {
    FactorPair best{1, m};
    for (index_t m1 = 1; m1 * m1 <= m; ++m1)
        if (m % m1 == 0)
            best = {m1, m / m1};
    return best;
}

template <TransOp Op, class T>
inline T op_at(const T *x, index_t ld, index_t r, index_t c) noexcept {
    if constexpr (Op == TransOp::None)
        return x[r + ld * c];
    else if constexpr (Op == TransOp::Transpose)
        return x[c + ld * r];
    else
        return Conjugate{}(x[c + ld * r]);
}

template <class T, AxpbyKind K>
inline auto make_axpby(const AxpbyMode<T> &mode) noexcept {
    if constexpr (K == AxpbyKind::General)
        return AxpbyGeneral<T>{mode.alpha(), mode.beta()};
    else if constexpr (K == AxpbyKind::A1B0)
        return AxpbyA1B0<T>{};
    else if constexpr (K == AxpbyKind::A1B1)
        return AxpbyA1B1<T>{};
    else
        return AxpbyAM1B0<T>{};
}

/// One matrix, per-entry method. Staged layout: row i of op(A) at
/// sa[i*M .. i*M+M), column j of op(B) at sb[j*M .. j*M+M), so every entry is
/// a contiguous dot product.
template <class T, index_t M, TransOp OA, TransOp OB, class F>
inline void per_entry_one(const T *__restrict a, index_t lda,
                          const T *__restrict b, index_t ldb,
                          T *__restrict c, index_t ldc, const F &axpby,
                          T *__restrict sa, T *__restrict sb) noexcept {
    for (index_t l = 0; l < M; ++l)
        for (index_t i = 0; i < M; ++i)
            sa[i * M + l] = op_at<OA>(a, lda, i, l);
    for (index_t j = 0; j < M; ++j)
        for (index_t l = 0; l < M; ++l)
            sb[j * M + l] = op_at<OB>(b, ldb, l, j);

    for (index_t j = 0; j < M; ++j) {
        for (index_t i = 0; i < M; ++i) {
            T acc{};
            for (index_t l = 0; l < M; ++l)
                acc += mul(sa[i * M + l], sb[j * M + l]);
            axpby(c[i + ldc * j], acc);
        }
    }
}

/// One matrix, factorized method with M = M1*M2. Lane (r, g), r < M, g < M2,
/// stages and owns the M1 entries (r, g*M1 + t). op(A) is staged column-major
/// so each lane column sweeps contiguous rows.
template <class T, index_t M, index_t M1, TransOp OA, TransOp OB, class F>
inline void factorized_one(const T *__restrict a, index_t lda,
                           const T *__restrict b, index_t ldb,
                           T *__restrict c, index_t ldc, const F &axpby,
                           T *__restrict sa, T *__restrict sb) noexcept {
    static_assert(M % M1 == 0);
    constexpr index_t M2 = M / M1;

    for (index_t g = 0; g < M2; ++g) {
        for (index_t t = 0; t < M1; ++t) {
            const index_t col = g * M1 + t;
            for (index_t r = 0; r < M; ++r) {
                sa[col * M + r] = op_at<OA>(a, lda, r, col);
                sb[col * M + r] = op_at<OB>(b, ldb, r, col);
            }
        }
    }

    for (index_t g = 0; g < M2; ++g) {
        T acc[M1][M] = {};
        for (index_t l = 0; l < M; ++l) {
            for (index_t t = 0; t < M1; ++t) {
                const T bv = sb[(g * M1 + t) * M + l];
                for (index_t r = 0; r < M; ++r)
                    acc[t][r] += mul(sa[l * M + r], bv);
            }
        }
        for (index_t t = 0; t < M1; ++t)
            for (index_t r = 0; r < M; ++r)
                axpby(c[r + ldc * (g * M1 + t)], acc[t][r]);
    }
}

/// M1 == 0 selects the per-entry method.
template <class T, index_t M, index_t M1, TransOp OA, TransOp OB, AxpbyKind K,
          class Addr>
void run_range(const KernelArgs<T> &args, const Addr &addr,
               const AxpbyMode<T> &mode) {
    const auto axpby = make_axpby<T, K>(mode);
    const Addr ad    = addr;
    const T *const a0 = args.a;
    const T *const b0 = args.b;
    T *const c0       = args.c;
    const index_t lda = args.lda, ldb = args.ldb, ldc = args.ldc;
    alignas(64) T stage[2 * M * M];
    for (index_t p = args.begin; p < args.end; ++p) {
        const T *a = a0 + offset_a(ad, p);
        const T *b = b0 + offset_b(ad, p);
        T *c       = c0 + offset_c(ad, p);
        if constexpr (M1 == 0)
            per_entry_one<T, M, OA, OB>(a, lda, b, ldb, c, ldc, axpby, stage,
                                        stage + M * M);
        else
            factorized_one<T, M, M1, OA, OB>(a, lda, b, ldb, c, ldc, axpby,
                                             stage, stage + M * M);
    }
}

template <class T, class Addr>
using range_fn = void (*)(const KernelArgs<T> &, const Addr &,
                          const AxpbyMode<T> &);

/// Method variant: 0 = per-entry, 1 = factorize(M), 2 = factorize(M) swapped.
inline constexpr index_t n_variants = 3;
inline constexpr index_t n_ops      = 3;
inline constexpr index_t n_modes    = 4;

template <index_t M, index_t V>
constexpr index_t variant_m1() noexcept {
    if constexpr (V == 0)
        return 0;
    else if constexpr (V == 1)
        return factorize_ct(M).m1;
    else
        return factorize_ct(M).m2;
}

template <class T, class Addr, index_t M, index_t V>
struct SizeTable {
    template <index_t... I>
    static constexpr auto make(std::index_sequence<I...>) {
        // I enumerates (opa, opb, mode) in row-major order.
        return std::array<range_fn<T, Addr>, sizeof...(I)>{
            &run_range<T, M, variant_m1<M, V>(),
                       static_cast<TransOp>(I / (n_ops * n_modes)),
                       static_cast<TransOp>((I / n_modes) % n_ops),
                       static_cast<AxpbyKind>(I % n_modes), Addr>...};
    }
    static constexpr auto table =
        make(std::make_index_sequence<n_ops * n_ops * n_modes>{});
};

inline index_t op_index(TransOp op) noexcept { return static_cast<index_t>(op); }
inline index_t mode_index(AxpbyKind k) noexcept {
    return static_cast<index_t>(k);
}

template <class T, class Addr, index_t V, index_t... Ms>
range_fn<T, Addr> select_size(index_t m, index_t slot,
                              std::integer_sequence<index_t, Ms...>) {
    range_fn<T, Addr> fn = nullptr;
    ((m == Ms + 1 ? (fn = SizeTable<T, Addr, Ms + 1, V>::table[slot], 0) : 0),
     ...);
    return fn;
}

template <class T, class Addr>
range_fn<T, Addr> select(const KernelPlan<T> &plan) {
    const index_t slot = (op_index(plan.transa) * n_ops + op_index(plan.transb)) *
                             n_modes +
                         mode_index(plan.mode.kind());
    index_t variant = 0;
    if (plan.method == KernelMethod::Factorized)
        variant = plan.factors == factorize_ct(plan.m) ? 1 : 2;
    constexpr auto sizes = std::make_integer_sequence<index_t, max_kernel_size>{};
    switch (variant) {
        case 0: return select_size<T, Addr, 0>(plan.m, slot, sizes);
        case 1: return select_size<T, Addr, 1>(plan.m, slot, sizes);
        default: return select_size<T, Addr, 2>(plan.m, slot, sizes);
    }
}

template <Scalar T>
void check_plan_impl(const KernelPlan<T> &plan) {
    if (plan.m < 1 || plan.m > max_kernel_size)
        raise(Errc::InvalidArgument, "plan.m",
              "specialized kernels cover sizes 1..16");
    if (plan.method == KernelMethod::Factorized) {
        const FactorPair f = factorize_ct(plan.m);
        if (plan.factors != f && plan.factors != FactorPair{f.m2, f.m1})
            raise(Errc::InvalidArgument, "plan.factors",
                  "no compiled factorized kernel for this factor pair");
    }
}

template <Scalar T>
void run_uniform_checked(const KernelPlan<T> &plan, KernelMethod expected,
                         std::span<const T> a, const UniformBatchDescriptor &da,
                         std::span<const T> b, const UniformBatchDescriptor &db,
                         std::span<T> c, const UniformBatchDescriptor &dc);

} // namespace smallgemm::detail
