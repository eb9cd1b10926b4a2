#pragma once

#include <smallgemm/engine.hpp>
#include <smallgemm/reference.hpp>
#include <smallgemm_bench/bench.hpp>

#include <cmath>
#include <cstring>
#include <random>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace smallgemm::bench {

template <class T>
struct type_tag {
    using type = T;
};

template <class F>
decltype(auto) with_kind(ScalarKind kind, F &&f) {
    switch (kind) {
        case ScalarKind::SingleReal: return f(type_tag<float>{});
        case ScalarKind::DoubleReal: return f(type_tag<double>{});
        case ScalarKind::SingleComplex: return f(type_tag<std::complex<float>>{});
        case ScalarKind::DoubleComplex: break;
    }
    return f(type_tag<std::complex<double>>{});
}

inline constexpr std::size_t n_trans_pairs = 9;

inline std::size_t pair_index(const OpPair &ops) noexcept {
    return static_cast<std::size_t>(ops.first) * 3 +
           static_cast<std::size_t>(ops.second);
}

/// Generator for one (seed, kind, m, N) tuple; identical tuples give
/// identical streams.
inline std::mt19937_64 make_rng(std::uint64_t seed, ScalarKind kind, index_t m,
                                index_t n, std::uint64_t salt = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(kind),
                      static_cast<std::uint32_t>(m),
                      static_cast<std::uint32_t>(n),
                      static_cast<std::uint32_t>(salt)};
    return std::mt19937_64(seq);
}

/// Entries uniform in [-1, 1] per real component.
template <class T>
T uniform_scalar(std::mt19937_64 &rng) {
    using R = real_t<T>;
    std::uniform_real_distribution<R> dist(R(-1), R(1));
    if constexpr (is_complex_v<T>) {
        const R re = dist(rng);
        return T(re, dist(rng));
    } else {
        return dist(rng);
    }
}

/// Packed square batches (ld = m, ld2 = m*m).
template <class T>
struct Workload {
    index_t m = 0, count = 0;
    std::vector<T> a, b, c;

    Workload(std::mt19937_64 &rng, index_t m_, index_t count_)
        : m(m_), count(count_), a(m_ * m_ * count_), b(a.size()),
          c(a.size()) {
        for (auto *v : {&a, &b, &c})
            for (auto &x : *v)
                x = uniform_scalar<T>(rng);
    }

    UniformBatchDescriptor desc(index_t n) const {
        return UniformBatchDescriptor::packed(m, m, n);
    }
};

template <class T>
void run_unif(Workload<T> &w, index_t n, const OpPair &ops,
              const AxpbyMode<T> &mode, const EngineConfig &cfg) {
    gemm_multi_uniform<T>(trans_letter(ops.first), trans_letter(ops.second),
                          w.m, w.m, w.m, mode, w.a, w.m, w.m * w.m, w.b, w.m,
                          w.m * w.m, w.c, w.m, w.m * w.m, n, cfg);
}

template <class T>
void run_nounif(Workload<T> &w, index_t n, const OpPair &ops,
                const AxpbyMode<T> &mode, const EngineConfig &cfg,
                const MatrixHandleBatch &handles) {
    const std::span<const index_t> offs =
        std::span(handles.offsets).first(n);
    gemm_multi_nounif<T>(trans_letter(ops.first), trans_letter(ops.second),
                         w.m, w.m, w.m, mode, w.a, offs, w.m, w.b, offs, w.m,
                         w.c, offs, w.m, n, cfg);
}

template <class T>
void run_naive(Workload<T> &w, index_t n, const OpPair &ops,
               const AxpbyMode<T> &mode) {
    const auto d = w.desc(n);
    gemm_naive<T>(ops.first, ops.second, w.m, w.m, w.m, mode, w.a, d, w.b, d,
                  w.c, d, n);
}

template <class T>
constexpr double tolerance() {
    return std::is_same_v<real_t<T>, float> ? 1e-5 : 1e-12;
}

/// |got - want| <= tol * k * max(|want|, 1), elementwise.
template <class T>
bool oracle_close(std::span<const T> got, std::span<const T> want, index_t k) {
    if (got.size() != want.size())
        return false;
    const double tol = tolerance<T>() * static_cast<double>(k);
    for (std::size_t e = 0; e < got.size(); ++e) {
        const double diff = std::abs(got[e] - want[e]);
        const double mag  = std::max(1.0, static_cast<double>(std::abs(want[e])));
        if (!(diff <= tol * mag))
            return false;
    }
    return true;
}

template <class T>
bool bitwise_same(std::span<const T> x, std::span<const T> y) {
    return x.size() == y.size() &&
           (x.empty() || std::memcmp(x.data(), y.data(), x.size_bytes()) == 0);
}

/// Matrices used by correctness side-checks; timings still cover all N.
inline constexpr index_t side_check_batch = 1024;

/// Runs `engine_call` on a prefix of the workload and compares it with the
/// reference; C is restored afterwards. Throws CorrectnessFailure.
template <class T, class Call>
void check_with_oracle(Workload<T> &w, const OpPair &ops,
                       const AxpbyMode<T> &mode, const std::string &what,
                       Call &&engine_call) {
    const index_t n = std::min(w.count, side_check_batch);
    const std::vector<T> saved = w.c;
    engine_call(n);
    std::vector<T> got(w.c.begin(), w.c.begin() + w.m * w.m * n);
    w.c = saved;
    run_naive(w, n, ops, mode);
    std::vector<T> want(w.c.begin(), w.c.begin() + w.m * w.m * n);
    w.c = saved;
    if (!oracle_close<T>(got, want, w.m))
        throw CorrectnessFailure(what + ": result differs from reference (m=" +
                                 std::to_string(w.m) + ")");
}

} // namespace smallgemm::bench
