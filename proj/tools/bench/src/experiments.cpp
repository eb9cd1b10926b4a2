#include "workload.hpp"

#include <smallgemm/error.hpp>

#include <algorithm>
#include <chrono>

namespace smallgemm::bench {

namespace {

constexpr OpPair nn{TransOp::None, TransOp::None};

std::vector<index_t> sizes_or_default(const BenchConfig &cfg) {
    if (!cfg.sizes.empty())
        return cfg.sizes;
    std::vector<index_t> s;
    for (index_t m = 1; m <= max_kernel_size; ++m)
        s.push_back(m);
    return s;
}

std::vector<ScalarKind> kinds_or(const BenchConfig &cfg,
                                 std::vector<ScalarKind> fallback) {
    return cfg.kinds.empty() ? fallback : cfg.kinds;
}

OpPair ops_or_nn(const BenchConfig &cfg) {
    return cfg.ops.empty() ? nn : cfg.ops.front();
}

AxpbyKind mode_or(const BenchConfig &cfg, AxpbyKind fallback) {
    return cfg.modes.empty() ? fallback : cfg.modes.front();
}

void check_sizes(const std::vector<index_t> &sizes) {
    for (auto m : sizes)
        if (m < 1 || m > max_kernel_size)
            raise(Errc::InvalidArgument, "sizes",
                  "benchmark sizes must lie in 1..16, got " +
                      std::to_string(m));
}

index_t resolved_chunks(const BenchConfig &cfg, index_t n) {
    if (!cfg.chunk_counts.empty())
        return cfg.chunk_counts.front();
    return std::max<index_t>(1, default_chunk_count(n));
}

EngineConfig engine_config(const BenchConfig &cfg, index_t chunks) {
    return EngineConfig{chunks, cfg.method_override, cfg.swap_factors};
}

/// Random alpha/beta for General, drawn with the workload stream.
template <class T>
AxpbyMode<T> make_mode(AxpbyKind kind, std::mt19937_64 &rng) {
    const T alpha = uniform_scalar<T>(rng);
    const T beta  = uniform_scalar<T>(rng);
    return AxpbyMode<T>::of(kind, alpha, beta);
}

TimingRecord record(const std::string &experiment, ScalarKind kind, index_t m,
                    index_t n, const OpPair &ops, AxpbyKind mode,
                    const std::string &interface, index_t chunks,
                    double seconds, std::uint64_t seed) {
    TimingRecord r;
    r.experiment     = experiment;
    r.kind           = kind;
    r.m              = m;
    r.batch          = n;
    r.ops            = ops;
    r.mode           = mode;
    r.interface      = interface;
    r.chunk_count    = chunks;
    r.median_seconds = seconds;
    r.gflops = gflops(static_cast<double>(flops(kind, m, n)), seconds);
    r.seed   = seed;
    return r;
}

} // namespace

index_t effective_batch(const BenchConfig &cfg) {
    return cfg.quick ? std::min<index_t>(cfg.batch, 10000) : cfg.batch;
}

std::vector<index_t> default_batch_grid(const BenchConfig &cfg) {
    const index_t top = effective_batch(cfg);
    std::vector<index_t> grid;
    for (index_t decade = 1000; decade <= 100000; decade *= 10)
        for (index_t step : {1, 2, 5})
            if (decade * step <= std::min<index_t>(top, 100000))
                grid.push_back(decade * step);
    if (grid.empty() || grid.back() != top)
        grid.push_back(top);
    return grid;
}

std::vector<index_t> default_chunk_grid() {
    return {1, 2, 4, 8, 16, 32, 64, 125, 250, 500, 1000, 2000};
}

std::vector<TimingRecord> experiment_sweep_chunks(const BenchConfig &cfg) {
    const auto sizes = sizes_or_default(cfg);
    check_sizes(sizes);
    const auto chunk_grid =
        cfg.chunk_counts.empty() ? default_chunk_grid() : cfg.chunk_counts;
    const index_t n   = effective_batch(cfg);
    const OpPair ops  = ops_or_nn(cfg);
    const AxpbyKind mk = mode_or(cfg, AxpbyKind::General);
    std::vector<TimingRecord> rows;
    for (auto kind : kinds_or(cfg, {ScalarKind::SingleReal})) {
        with_kind(kind, [&]<class T>(type_tag<T>) {
            for (auto m : sizes) {
                auto rng = make_rng(cfg.seed, kind, m, n);
                Workload<T> w(rng, m, n);
                const auto mode = make_mode<T>(mk, rng);
                check_with_oracle(w, ops, mode, "sweep-chunks", [&](index_t k) {
                    run_unif(w, k, ops, mode, engine_config(cfg, chunk_grid[0]));
                });
                for (auto chunks : chunk_grid) {
                    const auto ec = engine_config(cfg, chunks);
                    const double t = time_kernel(
                        [&] { run_unif(w, n, ops, mode, ec); }, cfg.repeats);
                    rows.push_back(record("sweep-chunks", kind, m, n, ops, mk,
                                          "unif", chunks, t, cfg.seed));
                }
            }
        });
    }
    return rows;
}

std::vector<TimingRecord> experiment_sweep_batch(const BenchConfig &cfg) {
    const auto sizes = sizes_or_default(cfg);
    check_sizes(sizes);
    const auto grid =
        cfg.batch_grid.empty() ? default_batch_grid(cfg) : cfg.batch_grid;
    const index_t top  = *std::ranges::max_element(grid);
    const OpPair ops   = ops_or_nn(cfg);
    const AxpbyKind mk = mode_or(cfg, AxpbyKind::General);
    std::vector<TimingRecord> rows;
    for (auto kind : kinds_or(cfg, {ScalarKind::SingleReal})) {
        with_kind(kind, [&]<class T>(type_tag<T>) {
            for (auto m : sizes) {
                auto rng = make_rng(cfg.seed, kind, m, top);
                Workload<T> w(rng, m, top);
                const auto mode = make_mode<T>(mk, rng);
                check_with_oracle(w, ops, mode, "sweep-batch", [&](index_t k) {
                    run_unif(w, k, ops, mode,
                             engine_config(cfg, resolved_chunks(cfg, k)));
                });
                for (auto n : grid) {
                    const index_t chunks = resolved_chunks(cfg, n);
                    const auto ec        = engine_config(cfg, chunks);
                    const double t = time_kernel(
                        [&] { run_unif(w, n, ops, mode, ec); }, cfg.repeats);
                    rows.push_back(record("sweep-batch", kind, m, n, ops, mk,
                                          "unif", chunks, t, cfg.seed));
                }
            }
        });
    }
    return rows;
}

std::vector<TimingRecord> experiment_ops_grid(const BenchConfig &cfg) {
    const auto sizes = sizes_or_default(cfg);
    check_sizes(sizes);
    const index_t n      = effective_batch(cfg);
    const index_t chunks = resolved_chunks(cfg, n);
    const auto ec        = engine_config(cfg, chunks);
    std::vector<TimingRecord> rows;
    for (auto kind : kinds_or(cfg, {ScalarKind::SingleComplex})) {
        with_kind(kind, [&]<class T>(type_tag<T>) {
            for (auto m : sizes) {
                auto rng = make_rng(cfg.seed, kind, m, n);
                Workload<T> w(rng, m, n);
                const auto mode = make_mode<T>(AxpbyKind::General, rng);

                std::vector<std::vector<T>> side(n_trans_pairs);
                for (auto ta : all_trans_ops)
                    for (auto tb : all_trans_ops) {
                        const OpPair ops{ta, tb};
                        check_with_oracle(w, ops, mode, "ops-grid",
                                          [&](index_t k) {
                                              run_unif(w, k, ops, mode, ec);
                                              side[pair_index(ops)].assign(
                                                  w.c.begin(),
                                                  w.c.begin() + m * m * k);
                                          });
                    }
                if constexpr (!is_complex_v<T>) {
                    // Conjugation is the identity on reals.
                    for (auto tb : all_trans_ops)
                        if (!bitwise_same<T>(
                                side[pair_index({TransOp::Transpose, tb})],
                                side[pair_index({TransOp::ConjTranspose, tb})]))
                            throw CorrectnessFailure(
                                "ops-grid: t and c differ for a real kind");
                }

                const std::size_t first = rows.size();
                double t_nn             = 0;
                for (auto ta : all_trans_ops)
                    for (auto tb : all_trans_ops) {
                        const OpPair ops{ta, tb};
                        const double t = time_kernel(
                            [&] { run_unif(w, n, ops, mode, ec); },
                            cfg.repeats);
                        if (ops == nn)
                            t_nn = t;
                        rows.push_back(record("ops-grid", kind, m, n, ops,
                                              AxpbyKind::General, "unif",
                                              chunks, t, cfg.seed));
                    }
                for (std::size_t i = first; i < rows.size(); ++i) {
                    rows[i].metric       = "speed_vs_nn";
                    rows[i].metric_value = t_nn / rows[i].median_seconds;
                }
            }
        });
    }
    return rows;
}

std::vector<TimingRecord> experiment_axpby(const BenchConfig &cfg) {
    const auto sizes = sizes_or_default(cfg);
    check_sizes(sizes);
    const index_t n      = effective_batch(cfg);
    const index_t chunks = resolved_chunks(cfg, n);
    const auto ec        = engine_config(cfg, chunks);
    const OpPair ops     = ops_or_nn(cfg);
    std::vector<TimingRecord> rows;
    for (auto kind : kinds_or(cfg, {ScalarKind::SingleReal})) {
        with_kind(kind, [&]<class T>(type_tag<T>) {
            for (auto m : sizes) {
                auto rng = make_rng(cfg.seed, kind, m, n);
                Workload<T> w(rng, m, n);
                const auto special = AxpbyMode<T>::a1b0();
                const auto general = AxpbyMode<T>::general(T(1), T(0));
                check_with_oracle(w, ops, special, "axpby", [&](index_t k) {
                    run_unif(w, k, ops, special, ec);
                });
                check_with_oracle(w, ops, general, "axpby", [&](index_t k) {
                    run_unif(w, k, ops, general, ec);
                });
                const auto [t_general, t_special] = time_paired(
                    [&] { run_unif(w, n, ops, general, ec); },
                    [&] { run_unif(w, n, ops, special, ec); }, cfg.repeats);
                auto g = record("axpby", kind, m, n, ops, AxpbyKind::General,
                                "unif", chunks, t_general, cfg.seed);
                auto s = record("axpby", kind, m, n, ops, AxpbyKind::A1B0,
                                "unif", chunks, t_special, cfg.seed);
                g.metric = s.metric = "gain_general_over_a1b0";
                g.metric_value = s.metric_value = t_general / t_special;
                rows.push_back(std::move(g));
                rows.push_back(std::move(s));
            }
        });
    }
    return rows;
}

std::vector<TimingRecord> experiment_interfaces(const BenchConfig &cfg) {
    const auto sizes = sizes_or_default(cfg);
    check_sizes(sizes);
    const index_t n      = effective_batch(cfg);
    const index_t chunks = resolved_chunks(cfg, n);
    const auto ec        = engine_config(cfg, chunks);
    const OpPair ops     = ops_or_nn(cfg);
    const AxpbyKind mk   = mode_or(cfg, AxpbyKind::A1B0);
    std::vector<TimingRecord> rows;
    for (auto kind : kinds_or(cfg, {ScalarKind::SingleReal,
                                    ScalarKind::DoubleReal,
                                    ScalarKind::SingleComplex,
                                    ScalarKind::DoubleComplex})) {
        with_kind(kind, [&]<class T>(type_tag<T>) {
            for (auto m : sizes) {
                auto rng = make_rng(cfg.seed, kind, m, n);
                Workload<T> w(rng, m, n);
                const auto mode = make_mode<T>(mk, rng);

                MatrixHandleBatch handles;
                const double t_setup = time_kernel(
                    [&] { handles = as_handles(w.desc(n)); }, cfg.repeats);

                check_with_oracle(w, ops, mode, "interfaces", [&](index_t k) {
                    run_unif(w, k, ops, mode, ec);
                });
                const std::vector<T> saved = w.c;
                run_unif(w, n, ops, mode, ec);
                const std::vector<T> unif_out = w.c;
                w.c = saved;
                run_nounif(w, n, ops, mode, ec, handles);
                if (!bitwise_same<T>(unif_out, w.c))
                    throw CorrectnessFailure(
                        "interfaces: unif and nounif outputs differ (m=" +
                        std::to_string(m) + ")");
                w.c = saved;

                const auto [t_unif, t_nounif] = time_paired(
                    [&] { run_unif(w, n, ops, mode, ec); },
                    [&] { run_nounif(w, n, ops, mode, ec, handles); },
                    cfg.repeats);
                const double t_naive = time_kernel(
                    [&] { run_naive(w, n, ops, mode); }, cfg.repeats);

                auto r_unif = record("interfaces", kind, m, n, ops, mk, "unif",
                                     chunks, t_unif, cfg.seed);
                auto r_nounif = record("interfaces", kind, m, n, ops, mk,
                                       "nounif", chunks, t_nounif, cfg.seed);
                auto r_naive = record("interfaces", kind, m, n, ops, mk,
                                      "naive", 1, t_naive, cfg.seed);
                for (auto *r : {&r_unif, &r_nounif, &r_naive}) {
                    r->metric       = "setup_seconds";
                    r->metric_value = 0.0;
                }
                r_nounif.metric_value = t_setup;
                rows.push_back(std::move(r_unif));
                rows.push_back(std::move(r_nounif));
                rows.push_back(std::move(r_naive));
            }
        });
    }
    return rows;
}

std::vector<TimingRecord> experiment_speed_table(const BenchConfig &cfg) {
    const auto sizes = sizes_or_default(cfg);
    check_sizes(sizes);
    const index_t n      = effective_batch(cfg);
    const index_t chunks = resolved_chunks(cfg, n);
    const auto ec        = engine_config(cfg, chunks);
    std::vector<TimingRecord> rows;
    for (auto kind : kinds_or(cfg, {ScalarKind::SingleReal,
                                    ScalarKind::DoubleReal,
                                    ScalarKind::SingleComplex,
                                    ScalarKind::DoubleComplex})) {
        with_kind(kind, [&]<class T>(type_tag<T>) {
            for (auto m : sizes) {
                auto rng = make_rng(cfg.seed, kind, m, n);
                Workload<T> w(rng, m, n);
                const auto mode = AxpbyMode<T>::a1b0();
                check_with_oracle(w, nn, mode, "speed-table", [&](index_t k) {
                    run_unif(w, k, nn, mode, ec);
                });
                const double t = time_kernel(
                    [&] { run_unif(w, n, nn, mode, ec); }, cfg.repeats);
                rows.push_back(record("speed-table", kind, m, n, nn,
                                      AxpbyKind::A1B0, "unif", chunks, t,
                                      cfg.seed));
            }
        });
    }
    return rows;
}

} // namespace smallgemm::bench
