// Acceptance suite: one PASS/FAIL line per criterion. Soft criteria are
// reported but do not affect the exit status.

#include "support.hpp"

#include <smallgemm/engine.hpp>
#include <smallgemm/microkernels.hpp>
#include <smallgemm/reference.hpp>
#include <smallgemm_bench/bench.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#ifndef SMALLGEMM_BENCH_EXE
#error "SMALLGEMM_BENCH_EXE must name the CLI executable"
#endif

using namespace smallgemm;
using testing::RandomBatch;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;

    void fail(std::string why) {
        if (passed)
            detail = std::move(why);
        passed = false;
    }
};

template <class F>
void for_each_kind(F &&f) {
    f.template operator()<float>();
    f.template operator()<double>();
    f.template operator()<std::complex<float>>();
    f.template operator()<std::complex<double>>();
}

std::string label(char kind, index_t m, TransOp ta, TransOp tb) {
    return std::string(1, kind) + " m=" + std::to_string(m) + " op=" +
           trans_letter(ta) + trans_letter(tb);
}

template <class T>
struct Square {
    RandomBatch<T> a, b, c;
};

template <class T>
Square<T> square(std::mt19937_64 &rng, index_t m, index_t count) {
    return {testing::make_batch<T>(rng, m, m, count, 3, 7),
            testing::make_batch<T>(rng, m, m, count, 3, 7),
            testing::make_batch<T>(rng, m, m, count, 3, 7)};
}

template <class T>
void run_uniform(Square<T> &s, TransOp ta, TransOp tb, index_t m,
                 const AxpbyMode<T> &mode, const EngineConfig &cfg) {
    gemm_multi_uniform<T>(ta, tb, m, m, m, mode, s.a.cspan(), s.a.desc,
                          s.b.cspan(), s.b.desc, s.c.span(), s.c.desc, cfg);
}

/// Effective (alpha, beta, reads C) for a mode.
template <class T>
struct Effective {
    T alpha, beta;
    bool read_c;
};

template <class T>
Effective<T> effective(const AxpbyMode<T> &mode) {
    switch (mode.kind()) {
        case AxpbyKind::General: return {mode.alpha(), mode.beta(), true};
        case AxpbyKind::A1B0: return {T(1), T(0), false};
        case AxpbyKind::A1B1: return {T(1), T(1), true};
        case AxpbyKind::AM1B0: break;
    }
    return {T(-1), T(0), false};
}

template <class T>
bool matches_oracle(const Square<T> &before, const RandomBatch<T> &after,
                    TransOp ta, TransOp tb, index_t m,
                    const AxpbyMode<T> &mode) {
    const auto e    = effective(mode);
    const auto want = testing::wide_gemm<T>(ta, tb, m, m, m, e.alpha, e.beta,
                                            e.read_c, before.a, before.b,
                                            before.c);
    const auto &d = after.desc;
    for (index_t p = 0; p < d.count; ++p)
        for (index_t j = 0; j < m; ++j)
            for (index_t i = 0; i < m; ++i) {
                const T got = after.data[d.base + i + d.ld * j + d.ld2 * p];
                if (!testing::is_finite(got) ||
                    !testing::close(got, want[i + m * j + m * m * p],
                                    testing::base_tolerance<T>(), m))
                    return false;
            }
    return true;
}

template <class T>
bool padding_intact(const RandomBatch<T> &b) {
    const T pad = testing::sentinel<T>();
    for (index_t e = 0; e < b.data.size(); ++e)
        if (!b.in_footprint(e) &&
            std::memcmp(&b.data[e], &pad, sizeof(T)) != 0)
            return false;
    return true;
}

template <class T>
AxpbyMode<T> mode_of(AxpbyKind kind, std::mt19937_64 &rng) {
    const T alpha = testing::random_scalar<T>(rng);
    const T beta  = testing::random_scalar<T>(rng);
    return AxpbyMode<T>::of(kind, alpha, beta);
}

// Criteria 1 and 5 share one sweep.
void oracle_sweep(Outcome &oracle, Outcome &padding) {
    std::mt19937_64 rng(1001);
    for_each_kind([&]<class T>() {
        const char kl = blas_letter(scalar_kind_v<T>);
        for (index_t m = 1; m <= 16; ++m)
            for (auto ta : all_trans_ops)
                for (auto tb : all_trans_ops)
                    for (auto mk : all_axpby_kinds)
                        for (auto method : {KernelMethod::PerEntry,
                                            KernelMethod::Factorized}) {
                            const Square<T> before = square<T>(rng, m, 64);
                            Square<T> s            = before;
                            const auto mode        = mode_of<T>(mk, rng);
                            run_uniform(s, ta, tb, m, mode,
                                        EngineConfig{{}, method, false});
                            const std::string where =
                                label(kl, m, ta, tb) + " mode=" +
                                std::string(to_string(mk)) + " method=" +
                                std::string(to_string(method));
                            if (!matches_oracle(before, s.c, ta, tb, m, mode))
                                oracle.fail(where);
                            if (!padding_intact(s.c) ||
                                !testing::bitwise_equal(s.a.cspan(),
                                                        before.a.cspan()) ||
                                !testing::bitwise_equal(s.b.cspan(),
                                                        before.b.cspan()))
                                padding.fail(where);
                        }
    });
}

Outcome chunk_independence() {
    Outcome out;
    std::mt19937_64 rng(2002);
    for (int trial = 0; trial < 20; ++trial) {
        const auto kind = all_scalar_kinds[rng() % 4];
        const index_t m = 1 + rng() % 16;
        const index_t n = 1 + rng() % 4000;
        const TransOp ta = all_trans_ops[rng() % 3], tb = all_trans_ops[rng() % 3];
        const AxpbyKind mk = all_axpby_kinds[rng() % 4];
        for_each_kind([&]<class T>() {
            if (scalar_kind_v<T> != kind)
                return;
            const Square<T> before = square<T>(rng, m, n);
            const auto mode        = mode_of<T>(mk, rng);
            std::vector<T> first;
            for (index_t chunks :
                 {index_t(1), index_t(3), default_chunk_count(n), index_t(2000)}) {
                Square<T> s = before;
                run_uniform(s, ta, tb, m, mode, EngineConfig{chunks, {}, false});
                if (first.empty())
                    first = s.c.data;
                else if (!testing::bitwise_equal<T>(first, s.c.data))
                    out.fail(label(blas_letter(kind), m, ta, tb) + " N=" +
                             std::to_string(n) + " chunks=" +
                             std::to_string(chunks));
            }
        });
    }
    return out;
}

Outcome interface_equivalence() {
    Outcome out;
    std::mt19937_64 rng(3003);
    for_each_kind([&]<class T>() {
        for (index_t m = 1; m <= 16; ++m) {
            const TransOp ta = all_trans_ops[m % 3];
            const TransOp tb = all_trans_ops[(m + 1) % 3];
            const Square<T> before = square<T>(rng, m, 1000);
            const auto mode = mode_of<T>(all_axpby_kinds[m % 4], rng);
            Square<T> u = before, h = before;
            run_uniform(u, ta, tb, m, mode, EngineConfig{});
            const auto ha = as_handles(h.a.desc), hb = as_handles(h.b.desc),
                       hc = as_handles(h.c.desc);
            gemm_multi_nounif<T>(trans_letter(ta), trans_letter(tb), m, m, m,
                                 mode, h.a.cspan(), ha.offsets, ha.ld,
                                 h.b.cspan(), hb.offsets, hb.ld, h.c.span(),
                                 hc.offsets, hc.ld, 1000);
            if (!testing::bitwise_equal(u.c.cspan(), h.c.cspan()))
                out.fail(label(blas_letter(scalar_kind_v<T>), m, ta, tb));
        }
    });
    return out;
}

Outcome beta_elision() {
    Outcome out;
    std::mt19937_64 rng(4004);
    for_each_kind([&]<class T>() {
        for (index_t m = 1; m <= 16; ++m)
            for (auto mk : {AxpbyKind::A1B0, AxpbyKind::AM1B0}) {
                Square<T> s = square<T>(rng, m, 64);
                for (index_t e = 0; e < s.c.data.size(); ++e)
                    if (s.c.in_footprint(e))
                        s.c.data[e] = testing::quiet_nan<T>();
                const Square<T> before = s;
                const auto mode        = AxpbyMode<T>::of(mk, T(1), T(0));
                run_uniform(s, TransOp::None, TransOp::None, m, mode,
                            EngineConfig{});
                if (!matches_oracle(before, s.c, TransOp::None, TransOp::None,
                                    m, mode))
                    out.fail(label(blas_letter(scalar_kind_v<T>), m,
                                   TransOp::None, TransOp::None) +
                             " mode=" + std::string(to_string(mk)));
            }
    });
    return out;
}

Outcome flop_model() {
    Outcome out;
    if (flops(ScalarKind::SingleReal, 16, 100000) != 819200000ull)
        out.fail("flops(s,16,100000)");
    for (index_t m = 1; m <= 16; ++m)
        for (index_t n : {index_t(1), index_t(999), index_t(100000)})
            if (flops(ScalarKind::SingleComplex, m, n) !=
                    4 * flops(ScalarKind::SingleReal, m, n) ||
                flops(ScalarKind::DoubleComplex, m, n) !=
                    4 * flops(ScalarKind::DoubleReal, m, n))
                out.fail("complex/real at m=" + std::to_string(m));
    return out;
}

struct Packed {
    std::vector<float> a, b, c;
    index_t m, n;
    Packed(index_t m_, index_t n_) : a(m_ * m_ * n_), b(a.size()), c(a.size()), m(m_), n(n_) {
        std::mt19937_64 rng(5005);
        for (auto *v : {&a, &b, &c})
            for (auto &x : *v)
                x = testing::random_scalar<float>(rng);
    }
    void uniform(const AxpbyMode<float> &mode) {
        gemm_multi_uniform<float>('n', 'n', m, m, m, mode, a, m, m * m, b, m,
                                  m * m, c, m, m * m, n);
    }
};

Outcome a1b0_not_slower(double &ratio) {
    Outcome out;
    Packed w(16, 100000);
    const auto [t_general, t_a1b0] = bench::time_paired(
        [&] { w.uniform(AxpbyMode<float>::general(1.0f, 0.0f)); },
        [&] { w.uniform(AxpbyMode<float>::a1b0()); }, 5);
    ratio = t_general / t_a1b0;
    if (ratio < 1.0)
        out.fail("t_general/t_a1b0 = " + std::to_string(ratio));
    else
        out.detail = "t_general/t_a1b0 = " + std::to_string(ratio);
    return out;
}

Outcome uniform_vs_nounif() {
    Outcome out;
    std::ostringstream detail;
    for (index_t m : {4, 8, 10, 16}) {
        Packed w(m, 100000);
        const auto h = as_handles(UniformBatchDescriptor::packed(m, m, w.n));
        const auto mode = AxpbyMode<float>::a1b0();
        const auto [t_unif, t_nounif] = bench::time_paired(
            [&] { w.uniform(mode); },
            [&] {
                gemm_multi_nounif<float>('n', 'n', m, m, m, mode, w.a,
                                         h.offsets, m, w.b, h.offsets, m, w.c,
                                         h.offsets, m, w.n);
            },
            5);
        // Throughput ratio unif/nounif is the inverse time ratio.
        const double ratio = t_nounif / t_unif;
        detail << "m=" << m << ":" << ratio << ' ';
        if (ratio < 0.95)
            out.passed = false;
    }
    out.detail = "unif/nounif throughput " + detail.str();
    return out;
}

Outcome factorized_plan() {
    Outcome out;
    for (index_t m = 1; m <= 16; ++m) {
        // Brute force: the divisor pair closest to sqrt(m), m1 <= m2.
        index_t best1 = 1, best2 = m;
        for (index_t d = 1; d <= m; ++d)
            if (m % d == 0 && d <= m / d && (m / d - d) < (best2 - best1)) {
                best1 = d;
                best2 = m / d;
            }
        const auto f = factorize(m);
        if (f.m1 != best1 || f.m2 != best2)
            out.fail("factorize(" + std::to_string(m) + ")");
        const auto p = plan<float>(m, TransOp::None, TransOp::None,
                                   AxpbyMode<float>::a1b0());
        const bool want_factorized = m == 15 || m == 16;
        if ((p.method == KernelMethod::Factorized) != want_factorized)
            out.fail("plan method at m=" + std::to_string(m));
    }
    const auto p15 = plan<double>(15, TransOp::None, TransOp::None,
                                  AxpbyMode<double>::a1b0());
    const auto p16 = plan<double>(16, TransOp::None, TransOp::None,
                                  AxpbyMode<double>::a1b0());
    if (!(p15.factors == FactorPair{3, 5}))
        out.fail("plan(15) factors");
    if (!(p16.factors == FactorPair{4, 4}))
        out.fail("plan(16) factors");
    return out;
}

// CLI contract ---------------------------------------------------------------

int run(const std::string &args, const std::string &out_file) {
    const std::string cmd = std::string("\"") + SMALLGEMM_BENCH_EXE + "\" " +
                            args + " --out \"" + out_file + "\" 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return status;
}

/// Data rows in a CSV file whose header equals `header` and whose rows all
/// have the header's field count; -1 if the schema does not hold.
long csv_rows(const std::string &path, const std::string &header) {
    std::ifstream in(path);
    std::string line;
    if (!std::getline(in, line) || line != header)
        return -1;
    const auto fields = std::count(header.begin(), header.end(), ',');
    long n = 0;
    while (std::getline(in, line)) {
        if (std::count(line.begin(), line.end(), ',') != fields)
            return -1;
        ++n;
    }
    return n;
}

Outcome cli_contract() {
    Outcome out;
    const auto dir  = std::filesystem::temp_directory_path();
    const auto file = (dir / "smallgemm_acceptance.csv").string();
    const std::pair<const char *, long> experiments[] = {
        {"sweep-chunks", 16 * 12}, {"sweep-batch", 16 * 4},
        {"ops-grid", 16 * 9},      {"axpby", 16 * 2},
        {"interfaces", 16 * 4 * 3}, {"speed-table", 16 * 4},
    };
    for (const auto &[name, rows] : experiments) {
        const int status = run(std::string(name) + " --quick", file);
        const long got   = csv_rows(file, bench::csv_header);
        if (status != 0 || got != rows)
            out.fail(std::string(name) + ": status " + std::to_string(status) +
                     ", rows " + std::to_string(got));
    }
    if (run("verify --quick", file) != 0 ||
        csv_rows(file, "check,passed,detail") != 6)
        out.fail("verify on a correct build");
    for (const char *fault :
         {"oracle", "chunks", "interface", "beta", "padding", "flops"})
        if (run(std::string("verify --inject-fault ") + fault, file) == 0)
            out.fail(std::string("verify ignored fault ") + fault);
    std::filesystem::remove(file);
    return out;
}

void report(int id, const char *what, const Outcome &o, bool soft,
            bool &all_hard) {
    std::cout << "criterion " << id << ": "
              << (o.passed ? "PASS" : "FAIL") << (soft ? " (soft)" : "")
              << "  " << what;
    if (!o.detail.empty())
        std::cout << "  [" << o.detail << "]";
    std::cout << std::endl;
    if (!soft && !o.passed)
        all_hard = false;
}

} // namespace

int main() {
    bool ok = true;
    // Timing first, before the long correctness sweeps load the machine.
    double ratio = 0;
    const Outcome soft7 = a1b0_not_slower(ratio);
    const Outcome soft8 = uniform_vs_nounif();

    Outcome oracle, padding;
    oracle_sweep(oracle, padding);
    report(1, "oracle equivalence over sizes, kinds, ops, modes, methods",
           oracle, false, ok);
    report(2, "bitwise chunk independence", chunk_independence(), false, ok);
    report(3, "nounif over as_handles equals uniform bitwise",
           interface_equivalence(), false, ok);
    report(4, "NaN-filled C is ignored by a1b0 and am1b0", beta_elision(),
           false, ok);
    report(5, "padding and inputs untouched", padding, false, ok);
    report(6, "flop model", flop_model(), false, ok);
    report(7, "a1b0 not slower than general(1,0)", soft7, true, ok);
    report(8, "uniform throughput within 5% of nounif", soft8, true, ok);
    report(9, "factorized plan for 15 and 16", factorized_plan(), false, ok);
    report(10, "CLI row counts, schema and verify mutation smoke",
           cli_contract(), false, ok);
    return ok ? 0 : 1;
}
