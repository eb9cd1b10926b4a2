#include "workload.hpp"

#include <smallgemm_bench/verify.hpp>

#include <limits>

namespace smallgemm::bench {

namespace {

template <class T>
T pad_value() {
    using R = real_t<T>;
    if constexpr (is_complex_v<T>)
        return T(R(-777.25), R(313.5));
    else
        return R(-777.25);
}

template <class T>
bool finite(const T &x) {
    if constexpr (is_complex_v<T>)
        return std::isfinite(x.real()) && std::isfinite(x.imag());
    else
        return std::isfinite(x);
}

/// Square batch with ld in [m, m+3] and ld2 in [ld*m, ld*m+7]; everything
/// outside the footprints (plus 5 trailing elements) holds pad_value().
template <class T>
struct PaddedBatch {
    UniformBatchDescriptor desc;
    std::vector<T> data;

    PaddedBatch(std::mt19937_64 &rng, index_t m, index_t count, bool padded) {
        std::uniform_int_distribution<index_t> ld_pad(0, padded ? 3 : 0);
        std::uniform_int_distribution<index_t> ld2_pad(0, padded ? 7 : 0);
        desc.rows  = m;
        desc.cols  = m;
        desc.ld    = m + ld_pad(rng);
        desc.ld2   = desc.ld * m + ld2_pad(rng);
        desc.count = count;
        data.assign(required_length(desc) + 5, pad_value<T>());
        for_each_entry([&](index_t e) { data[e] = uniform_scalar<T>(rng); });
    }

    template <class F>
    void for_each_entry(F &&f) const {
        for (index_t p = 0; p < desc.count; ++p)
            for (index_t j = 0; j < desc.cols; ++j)
                for (index_t i = 0; i < desc.rows; ++i)
                    f(desc.base + i + desc.ld * j + desc.ld2 * p);
    }

    std::vector<T> footprint() const {
        std::vector<T> out;
        out.reserve(desc.rows * desc.cols * desc.count);
        for_each_entry([&](index_t e) { out.push_back(data[e]); });
        return out;
    }

    bool padding_intact() const {
        std::vector<bool> inside(data.size(), false);
        for_each_entry([&](index_t e) { inside[e] = true; });
        const T pad = pad_value<T>();
        for (std::size_t e = 0; e < data.size(); ++e)
            if (!inside[e] && std::memcmp(&data[e], &pad, sizeof(T)) != 0)
                return false;
        return true;
    }
};

template <class T>
void run_engine(const OpPair &ops, index_t m, const AxpbyMode<T> &mode,
                const PaddedBatch<T> &a, const PaddedBatch<T> &b,
                PaddedBatch<T> &c, const EngineConfig &cfg) {
    gemm_multi_uniform<T>(ops.first, ops.second, m, m, m, mode, a.data,
                          a.desc, b.data, b.desc, c.data, c.desc, cfg);
}

template <class T>
void run_reference(const OpPair &ops, index_t m, const AxpbyMode<T> &mode,
                   const PaddedBatch<T> &a, const PaddedBatch<T> &b,
                   PaddedBatch<T> &c) {
    gemm_naive<T>(ops.first, ops.second, m, m, m, mode, a.data, a.desc,
                  b.data, b.desc, c.data, c.desc, c.desc.count);
}

template <class T>
AxpbyMode<T> random_mode(AxpbyKind kind, std::mt19937_64 &rng) {
    const T alpha = uniform_scalar<T>(rng);
    const T beta  = uniform_scalar<T>(rng);
    return AxpbyMode<T>::of(kind, alpha, beta);
}

std::string where(ScalarKind kind, index_t m, const OpPair &ops) {
    return std::string(1, blas_letter(kind)) + " m=" + std::to_string(m) +
           " op=" + op_pair_string(ops);
}

struct OracleOutcome {
    bool oracle_ok  = true;
    bool padding_ok = true;
    std::string oracle_detail, padding_detail;
};

void check_oracle_and_padding(const VerifyOptions &opts, OracleOutcome &out) {
    bool first = true;
    for (auto kind : all_scalar_kinds) {
        with_kind(kind, [&]<class T>(type_tag<T>) {
            for (index_t m = 1; m <= max_kernel_size; ++m) {
                auto rng = make_rng(opts.seed, kind, m, opts.oracle_batch, 1);
                for (auto ta : all_trans_ops)
                    for (auto tb : all_trans_ops)
                        for (auto mk : all_axpby_kinds)
                            for (auto method : {KernelMethod::PerEntry,
                                                KernelMethod::Factorized}) {
                                const OpPair ops{ta, tb};
                                const PaddedBatch<T> a(rng, m, opts.oracle_batch, true);
                                const PaddedBatch<T> b(rng, m, opts.oracle_batch, true);
                                PaddedBatch<T> c(rng, m, opts.oracle_batch, true);
                                PaddedBatch<T> want = c;
                                const auto mode = random_mode<T>(mk, rng);
                                run_engine(ops, m, mode, a, b, c,
                                           EngineConfig{{}, method, false});
                                run_reference(ops, m, mode, a, b, want);
                                if (first && opts.fault == Fault::Oracle)
                                    c.data[c.desc.base] += T(1);
                                if (first && opts.fault == Fault::Padding)
                                    c.data.back() = T(0);
                                first = false;

                                const auto got = c.footprint();
                                const auto exp = want.footprint();
                                if (out.oracle_ok &&
                                    !oracle_close<T>(got, exp, m)) {
                                    out.oracle_ok = false;
                                    out.oracle_detail =
                                        where(kind, m, ops) + " mode=" +
                                        std::string(to_string(mk)) +
                                        " method=" +
                                        std::string(to_string(method));
                                }
                                if (out.padding_ok && !c.padding_intact()) {
                                    out.padding_ok = false;
                                    out.padding_detail = where(kind, m, ops);
                                }
                            }
            }
        });
    }
}

CheckResult check_chunks(const VerifyOptions &opts) {
    CheckResult r{"chunk-independence", true, ""};
    std::mt19937_64 pick(opts.seed ^ 0xc4u);
    for (int trial = 0; trial < 20 && r.passed; ++trial) {
        const auto kind = all_scalar_kinds[pick() % 4];
        const index_t m = 1 + pick() % max_kernel_size;
        const index_t n = 1 + pick() % 3000;
        const OpPair ops{all_trans_ops[pick() % 3], all_trans_ops[pick() % 3]};
        const auto mk   = all_axpby_kinds[pick() % 4];
        with_kind(kind, [&]<class T>(type_tag<T>) {
            auto rng = make_rng(opts.seed, kind, m, n, 2 + trial);
            const PaddedBatch<T> a(rng, m, n, true);
            const PaddedBatch<T> b(rng, m, n, true);
            const PaddedBatch<T> c0(rng, m, n, true);
            const auto mode = random_mode<T>(mk, rng);
            std::vector<T> baseline;
            for (index_t chunks : {index_t(1), index_t(3),
                                   default_chunk_count(n), index_t(2000)}) {
                PaddedBatch<T> c = c0;
                run_engine(ops, m, mode, a, b, c, EngineConfig{chunks, {}, false});
                if (chunks == 3 && opts.fault == Fault::Chunks)
                    c.data[c.desc.base] += T(1);
                if (baseline.empty()) {
                    baseline = c.data;
                } else if (!bitwise_same<T>(baseline, c.data)) {
                    r.passed = false;
                    r.detail = where(kind, m, ops) + " N=" + std::to_string(n) +
                               " chunks=" + std::to_string(chunks);
                    return;
                }
            }
        });
    }
    return r;
}

CheckResult check_interface(const VerifyOptions &opts) {
    CheckResult r{"interface-equivalence", true, ""};
    const index_t n = opts.interface_batch;
    for (auto kind : all_scalar_kinds) {
        with_kind(kind, [&]<class T>(type_tag<T>) {
            for (index_t m = 1; m <= max_kernel_size && r.passed; ++m) {
                auto rng = make_rng(opts.seed, kind, m, n, 3);
                const OpPair ops{all_trans_ops[m % 3], all_trans_ops[(m / 3) % 3]};
                const auto mk = all_axpby_kinds[m % 4];
                const PaddedBatch<T> a(rng, m, n, true);
                const PaddedBatch<T> b(rng, m, n, true);
                PaddedBatch<T> cu(rng, m, n, true);
                PaddedBatch<T> ch = cu;
                const auto mode = random_mode<T>(mk, rng);
                run_engine(ops, m, mode, a, b, cu, EngineConfig{});
                const auto ha = as_handles(a.desc), hb = as_handles(b.desc),
                           hc = as_handles(ch.desc);
                gemm_multi_nounif<T>(trans_letter(ops.first),
                                     trans_letter(ops.second), m, m, m, mode,
                                     a.data, ha.offsets, a.desc.ld, b.data,
                                     hb.offsets, b.desc.ld, ch.data,
                                     hc.offsets, ch.desc.ld, n);
                if (opts.fault == Fault::Interface)
                    ch.data[ch.desc.base] += T(1);
                if (!bitwise_same<T>(cu.data, ch.data)) {
                    r.passed = false;
                    r.detail = where(kind, m, ops);
                }
            }
        });
    }
    return r;
}

CheckResult check_beta(const VerifyOptions &opts) {
    CheckResult r{"beta-elision", true, ""};
    const index_t n = opts.oracle_batch;
    for (auto kind : all_scalar_kinds) {
        with_kind(kind, [&]<class T>(type_tag<T>) {
            using R = real_t<T>;
            for (index_t m = 1; m <= max_kernel_size && r.passed; ++m)
                for (auto mk : {AxpbyKind::A1B0, AxpbyKind::AM1B0}) {
                    auto rng = make_rng(opts.seed, kind, m, n, 4);
                    const PaddedBatch<T> a(rng, m, n, true);
                    const PaddedBatch<T> b(rng, m, n, true);
                    PaddedBatch<T> c(rng, m, n, true);
                    PaddedBatch<T> want = c;
                    const R q = std::numeric_limits<R>::quiet_NaN();
                    c.for_each_entry([&](index_t e) {
                        if constexpr (is_complex_v<T>)
                            c.data[e] = T(q, q);
                        else
                            c.data[e] = q;
                    });
                    want.for_each_entry([&](index_t e) { want.data[e] = T(0); });
                    const T sign = T(mk == AxpbyKind::A1B0 ? 1 : -1);
                    auto mode = AxpbyMode<T>::of(mk, T(1), T(0));
                    if (opts.fault == Fault::Beta)
                        mode = AxpbyMode<T>::general(sign, T(0));
                    const OpPair ops{TransOp::None, TransOp::None};
                    run_engine(ops, m, mode, a, b, c, EngineConfig{});
                    run_reference(ops, m, AxpbyMode<T>::general(sign, T(0)), a,
                                  b, want);
                    const auto got = c.footprint();
                    bool ok = true;
                    for (const auto &x : got)
                        ok = ok && finite(x);
                    ok = ok && oracle_close<T>(got, want.footprint(), m);
                    if (!ok) {
                        r.passed = false;
                        r.detail = where(kind, m, ops) + " mode=" +
                                   std::string(to_string(mk));
                        break;
                    }
                }
        });
    }
    return r;
}

CheckResult check_flops(const VerifyOptions &opts) {
    CheckResult r{"flop-model", true, ""};
    const std::uint64_t bump = opts.fault == Fault::Flops ? 1 : 0;
    const std::uint64_t s16 = flops(ScalarKind::SingleReal, 16, 100000) + bump;
    if (s16 != 819200000ull) {
        r.passed = false;
        r.detail = "flops(s,16,100000)=" + std::to_string(s16);
        return r;
    }
    for (index_t m = 1; m <= max_kernel_size; ++m) {
        const index_t n = 1 + m * 37;
        if (flops(ScalarKind::SingleComplex, m, n) !=
                4 * flops(ScalarKind::SingleReal, m, n) ||
            flops(ScalarKind::DoubleComplex, m, n) !=
                4 * flops(ScalarKind::DoubleReal, m, n)) {
            r.passed = false;
            r.detail = "complex/real ratio at m=" + std::to_string(m);
            break;
        }
    }
    return r;
}

} // namespace

std::optional<Fault> parse_fault(std::string_view name) noexcept {
    if (name == "none") return Fault::None;
    if (name == "oracle") return Fault::Oracle;
    if (name == "chunks") return Fault::Chunks;
    if (name == "interface") return Fault::Interface;
    if (name == "beta") return Fault::Beta;
    if (name == "padding") return Fault::Padding;
    if (name == "flops") return Fault::Flops;
    return std::nullopt;
}

std::vector<CheckResult> run_verify(const VerifyOptions &opts) {
    OracleOutcome o;
    check_oracle_and_padding(opts, o);
    std::vector<CheckResult> out;
    out.push_back({"oracle-equivalence", o.oracle_ok, o.oracle_detail});
    out.push_back(check_chunks(opts));
    out.push_back(check_interface(opts));
    out.push_back(check_beta(opts));
    out.push_back({"padding-safety", o.padding_ok, o.padding_detail});
    out.push_back(check_flops(opts));
    return out;
}

} // namespace smallgemm::bench
