#include <smallgemm_bench/bench.hpp>

#include <charconv>
#include <ostream>

namespace smallgemm::bench {

namespace {

void append_double(std::string &out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v,
                                   std::chars_format::general, 9);
    out.append(buf, res.ptr);
}

} // namespace

std::string op_pair_string(const OpPair &ops) {
    return {trans_letter(ops.first), trans_letter(ops.second)};
}

std::string to_csv_row(const TimingRecord &r) {
    std::string out;
    out += r.experiment;
    out += ',';
    out += blas_letter(r.kind);
    out += ',';
    out += std::to_string(r.m);
    out += ',';
    out += std::to_string(r.batch);
    out += ',';
    out += op_pair_string(r.ops);
    out += ',';
    out += to_string(r.mode);
    out += ',';
    out += r.interface;
    out += ',';
    out += std::to_string(r.chunk_count);
    out += ',';
    append_double(out, r.median_seconds);
    out += ',';
    append_double(out, r.gflops);
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += r.metric;
    out += ',';
    if (r.metric_value)
        append_double(out, *r.metric_value);
    return out;
}

void write_csv(std::ostream &os, const std::vector<TimingRecord> &rows) {
    os << csv_header << '\n';
    for (const auto &r : rows)
        os << to_csv_row(r) << '\n';
}

} // namespace smallgemm::bench
