#include <smallgemm/engine.hpp>
#include <smallgemm/reference.hpp>

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace smallgemm;

namespace {

template <class T>
struct Batch {
    index_t m, n;
    std::vector<T> a, b, c;
    MatrixHandleBatch handles;

    Batch(index_t m_, index_t n_)
        : m(m_), n(n_), a(m_ * m_ * n_), b(a.size()), c(a.size()),
          handles(as_handles(UniformBatchDescriptor::packed(m_, m_, n_))) {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<real_t<T>> d(-1, 1);
        for (auto *v : {&a, &b, &c})
            for (auto &x : *v) {
                if constexpr (is_complex_v<T>)
                    x = T(d(rng), d(rng));
                else
                    x = d(rng);
            }
    }

    void uniform(const AxpbyMode<T> &mode) {
        gemm_multi_uniform<T>('n', 'n', m, m, m, mode, a, m, m * m, b, m,
                              m * m, c, m, m * m, n);
    }

    void nounif(const AxpbyMode<T> &mode) {
        gemm_multi_nounif<T>('n', 'n', m, m, m, mode, a, handles.offsets, m, b,
                             handles.offsets, m, c, handles.offsets, m, n);
    }
};

void set_rate(benchmark::State &state, ScalarKind kind, index_t m, index_t n) {
    state.counters["flops"] = benchmark::Counter(
        static_cast<double>(flops(kind, m, n)) * state.iterations(),
        benchmark::Counter::kIsRate);
}

template <class T>
void BM_Uniform(benchmark::State &state) {
    Batch<T> w(state.range(0), state.range(1));
    for (auto _ : state) {
        w.uniform(AxpbyMode<T>::a1b0());
        benchmark::DoNotOptimize(w.c.data());
    }
    set_rate(state, scalar_kind_v<T>, w.m, w.n);
}

template <class T>
void BM_Nounif(benchmark::State &state) {
    Batch<T> w(state.range(0), state.range(1));
    for (auto _ : state) {
        w.nounif(AxpbyMode<T>::a1b0());
        benchmark::DoNotOptimize(w.c.data());
    }
    set_rate(state, scalar_kind_v<T>, w.m, w.n);
}

template <class T>
void BM_General10(benchmark::State &state) {
    Batch<T> w(state.range(0), state.range(1));
    for (auto _ : state) {
        w.uniform(AxpbyMode<T>::general(T(1), T(0)));
        benchmark::DoNotOptimize(w.c.data());
    }
    set_rate(state, scalar_kind_v<T>, w.m, w.n);
}

template <class T>
void BM_Naive(benchmark::State &state) {
    Batch<T> w(state.range(0), state.range(1));
    const auto d = UniformBatchDescriptor::packed(w.m, w.m, w.n);
    for (auto _ : state) {
        gemm_naive<T>(TransOp::None, TransOp::None, w.m, w.m, w.m,
                      AxpbyMode<T>::a1b0(), w.a, d, w.b, d, w.c, d, w.n);
        benchmark::DoNotOptimize(w.c.data());
    }
    set_rate(state, scalar_kind_v<T>, w.m, w.n);
}

void sizes(benchmark::internal::Benchmark *b) {
    for (int m : {2, 4, 8, 10, 15, 16})
        b->Args({m, 10000});
    b->Unit(benchmark::kMillisecond);
}

} // namespace

BENCHMARK(BM_Uniform<float>)->Apply(sizes);
BENCHMARK(BM_Nounif<float>)->Apply(sizes);
BENCHMARK(BM_General10<float>)->Apply(sizes);
BENCHMARK(BM_Naive<float>)->Apply(sizes);
BENCHMARK(BM_Uniform<std::complex<double>>)->Apply(sizes);
BENCHMARK(BM_Nounif<std::complex<double>>)->Apply(sizes);

BENCHMARK_MAIN();
