#pragma once

#include <smallgemm/layout.hpp>
#include <smallgemm/microkernels.hpp>
#include <smallgemm/scalar.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace smallgemm::bench {

using OpPair = std::pair<TransOp, TransOp>;

struct BenchConfig {
    std::vector<index_t> sizes;
    index_t batch = 100000;
    /// Batch sizes for sweep-batch; empty means the geometric default grid.
    std::vector<index_t> batch_grid;
    std::vector<ScalarKind> kinds;
    std::vector<OpPair> ops;
    std::vector<AxpbyKind> modes;
    std::vector<index_t> chunk_counts;
    int repeats        = 5;
    std::uint64_t seed = 20130101;
    std::optional<KernelMethod> method_override;
    bool swap_factors = false;
    bool quick        = false;
};

/// One CSV row. The first ten fields are the measurement proper; `seed`
/// makes the row reproducible and `metric`/`metric_value` carry the
/// experiment's derived quantity (empty when it has none).
struct TimingRecord {
    std::string experiment;
    ScalarKind kind = ScalarKind::SingleReal;
    index_t m       = 0;
    index_t batch   = 0;
    OpPair ops{TransOp::None, TransOp::None};
    AxpbyKind mode = AxpbyKind::General;
    std::string interface;
    index_t chunk_count   = 0;
    double median_seconds = 0;
    double gflops         = 0;
    std::uint64_t seed    = 0;
    std::string metric;
    std::optional<double> metric_value;
};

/// Raised when an experiment's correctness side-check fails; timings from
/// that run must not be reported.
class CorrectnessFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Median of the samples; even counts average the two middle values.
/// Throws std::invalid_argument when empty.
double median(std::vector<double> samples);

/// One untimed warm-up call, then `repeats` timed calls; returns the median
/// in seconds. Throws std::invalid_argument if repeats < 1.
double time_kernel(const std::function<void()> &runnable, int repeats);

/// time_kernel for two runnables, interleaved round by round with alternating
/// order. Returns the two medians.
std::pair<double, double> time_paired(const std::function<void()> &first,
                                      const std::function<void()> &second,
                                      int repeats);

// CSV ------------------------------------------------------------------------

inline constexpr const char *csv_header =
    "experiment,kind,m,N,op_pair,mode,interface,chunk_count,median_seconds,"
    "gflops,seed,metric,metric_value";

std::string to_csv_row(const TimingRecord &r);
void write_csv(std::ostream &os, const std::vector<TimingRecord> &rows);

// Experiments ------------------------------------------------------------------

/// Each experiment fills unset config fields with its own defaults, runs its
/// correctness side-checks first (throwing CorrectnessFailure), then times.
std::vector<TimingRecord> experiment_sweep_chunks(const BenchConfig &cfg);
std::vector<TimingRecord> experiment_sweep_batch(const BenchConfig &cfg);
std::vector<TimingRecord> experiment_ops_grid(const BenchConfig &cfg);
std::vector<TimingRecord> experiment_axpby(const BenchConfig &cfg);
std::vector<TimingRecord> experiment_interfaces(const BenchConfig &cfg);
std::vector<TimingRecord> experiment_speed_table(const BenchConfig &cfg);

/// Batch size after --quick scaling (capped at 10,000).
index_t effective_batch(const BenchConfig &cfg);
/// 1,000 -> 100,000 in 1-2-5 steps, truncated at effective_batch().
std::vector<index_t> default_batch_grid(const BenchConfig &cfg);
std::vector<index_t> default_chunk_grid();

std::string op_pair_string(const OpPair &ops);

} // namespace smallgemm::bench
