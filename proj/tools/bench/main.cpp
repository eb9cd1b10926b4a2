// smallgemm-bench: timing experiments and the correctness suite.

#include <smallgemm/error.hpp>
#include <smallgemm_bench/bench.hpp>
#include <smallgemm_bench/verify.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

using namespace smallgemm;
using namespace smallgemm::bench;

enum ExitCode { Ok = 0, VerifyFailed = 1, Incorrect = 2, BadArguments = 3 };

struct RawOptions {
    std::vector<std::string> sizes, kinds, chunks;
    std::string transa, transb, mode, method, out, fault = "none";
    index_t batch = 100000;
    int repeats   = 5;
    std::uint64_t seed = 20130101;
    bool quick = false, swap_factors = false;
};

std::vector<index_t> parse_sizes(const std::vector<std::string> &items) {
    std::vector<index_t> out;
    for (const auto &item : items) {
        const auto dash = item.find('-');
        if (dash == std::string::npos) {
            out.push_back(std::stoul(item));
            continue;
        }
        const index_t lo = std::stoul(item.substr(0, dash));
        const index_t hi = std::stoul(item.substr(dash + 1));
        for (index_t m = lo; m <= hi; ++m)
            out.push_back(m);
    }
    return out;
}

std::vector<ScalarKind> parse_kinds(const std::vector<std::string> &items) {
    std::vector<ScalarKind> out;
    for (const auto &item : items)
        for (char ch : item) {
            const auto k = parse_scalar_kind(ch);
            if (!k)
                raise(Errc::InvalidArgument, "kinds",
                      std::string("unknown kind '") + ch + "'");
            out.push_back(*k);
        }
    return out;
}

BenchConfig to_config(const RawOptions &raw) {
    BenchConfig cfg;
    cfg.sizes   = parse_sizes(raw.sizes);
    cfg.batch   = raw.batch;
    cfg.kinds   = parse_kinds(raw.kinds);
    cfg.repeats = raw.repeats;
    cfg.seed    = raw.seed;
    cfg.quick   = raw.quick;
    cfg.swap_factors = raw.swap_factors;
    for (const auto &c : raw.chunks)
        cfg.chunk_counts.push_back(std::stoul(c));
    if (!raw.transa.empty() || !raw.transb.empty()) {
        const TransOp ta = parse_trans(raw.transa.empty() ? 'n' : raw.transa[0],
                                       "transa");
        const TransOp tb = parse_trans(raw.transb.empty() ? 'n' : raw.transb[0],
                                       "transb");
        cfg.ops.push_back({ta, tb});
    }
    if (!raw.mode.empty()) {
        const auto m = parse_axpby_kind(raw.mode);
        if (!m)
            raise(Errc::InvalidArgument, "mode", "unknown mode " + raw.mode);
        cfg.modes.push_back(*m);
    }
    if (!raw.method.empty()) {
        const auto m = parse_kernel_method(raw.method);
        if (!m)
            raise(Errc::InvalidArgument, "method", "unknown method " + raw.method);
        cfg.method_override = *m;
    }
    if (cfg.repeats < 1)
        raise(Errc::InvalidArgument, "repeats", "must be at least 1");
    if (cfg.batch < 1)
        raise(Errc::InvalidArgument, "batch", "must be at least 1");
    for (auto c : cfg.chunk_counts)
        if (c < 1)
            raise(Errc::InvalidArgument, "chunks", "must be at least 1");
    return cfg;
}

void add_common(CLI::App *sub, RawOptions &raw) {
    sub->add_option("--sizes", raw.sizes, "Matrix sizes, e.g. 1-16 or 4,8,16")
        ->delimiter(',');
    sub->add_option("--batch", raw.batch, "Batch size N")->capture_default_str();
    sub->add_option("--kinds", raw.kinds, "Scalar kinds from s,d,c,z")
        ->delimiter(',');
    sub->add_option("--transa", raw.transa, "n, t or c");
    sub->add_option("--transb", raw.transb, "n, t or c");
    sub->add_option("--mode", raw.mode, "general, a1b0, a1b1 or am1b0");
    sub->add_option("--chunks", raw.chunks, "Chunk counts")->delimiter(',');
    sub->add_option("--repeats", raw.repeats, "Timed runs per point")
        ->capture_default_str();
    sub->add_option("--seed", raw.seed, "RNG seed")->capture_default_str();
    sub->add_flag("--quick", raw.quick, "Cap N at 10000");
    sub->add_option("--out", raw.out, "CSV output file (default stdout)");
    sub->add_option("--method", raw.method, "per-entry or factorized")
        ->group("Advanced");
    sub->add_flag("--swap-factors", raw.swap_factors,
                  "Use the (m2, m1) factorized kernel")
        ->group("Advanced");
}

template <class Write>
void emit(const std::string &path, Write &&write) {
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream f(path);
    if (!f)
        raise(Errc::InvalidArgument, "out", "cannot open " + path);
    write(f);
}

int run_verify_command(const RawOptions &raw) {
    const auto fault = parse_fault(raw.fault);
    if (!fault)
        raise(Errc::InvalidArgument, "inject-fault", "unknown fault " + raw.fault);
    VerifyOptions opts;
    opts.seed  = raw.seed;
    opts.fault = *fault;
    const auto results = run_verify(opts);
    bool all = true;
    emit(raw.out, [&](std::ostream &os) {
        os << "check,passed,detail\n";
        for (const auto &r : results) {
            os << r.name << ',' << (r.passed ? "true" : "false") << ','
               << r.detail << '\n';
            all = all && r.passed;
        }
    });
    return all ? Ok : VerifyFailed;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Batched small-matrix GEMM benchmarks"};
    app.require_subcommand(1);

    using Experiment = std::vector<TimingRecord> (*)(const BenchConfig &);
    const std::map<std::string, std::pair<Experiment, std::string>> experiments{
        {"sweep-chunks", {experiment_sweep_chunks, "Throughput versus chunk count"}},
        {"sweep-batch", {experiment_sweep_batch, "Throughput versus batch size"}},
        {"ops-grid", {experiment_ops_grid, "All nine op pairs"}},
        {"axpby", {experiment_axpby, "a1b0 versus general(1,0)"}},
        {"interfaces", {experiment_interfaces, "unif, nounif and naive"}},
        {"speed-table", {experiment_speed_table, "Sizes x kinds, a1b0, unif"}},
    };

    RawOptions raw;
    std::map<CLI::App *, Experiment> dispatch;
    for (const auto &[name, entry] : experiments) {
        auto *sub = app.add_subcommand(name, entry.second);
        add_common(sub, raw);
        dispatch[sub] = entry.first;
    }
    auto *verify = app.add_subcommand("verify", "Correctness suite only");
    verify->add_option("--seed", raw.seed, "RNG seed")->capture_default_str();
    verify->add_flag("--quick", raw.quick, "Accepted for symmetry");
    verify->add_option("--out", raw.out, "CSV output file (default stdout)");
    verify->add_option("--inject-fault", raw.fault)->group("");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed())
            return run_verify_command(raw);
        for (const auto &[sub, fn] : dispatch) {
            if (!sub->parsed())
                continue;
            const auto rows = fn(to_config(raw));
            emit(raw.out, [&](std::ostream &os) { write_csv(os, rows); });
        }
    } catch (const CorrectnessFailure &e) {
        std::cerr << "correctness failure: " << e.what() << '\n';
        return Incorrect;
    } catch (const smallgemm::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return BadArguments;
    } catch (const std::logic_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return BadArguments;
    }
    return Ok;
}
