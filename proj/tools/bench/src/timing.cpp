#include <smallgemm_bench/bench.hpp>

#include <algorithm>
#include <chrono>

namespace smallgemm::bench {

double median(std::vector<double> samples) {
    if (samples.empty())
        throw std::invalid_argument("median of no samples");
    std::ranges::sort(samples);
    const std::size_t n = samples.size();
    if (n % 2 == 1)
        return samples[n / 2];
    return 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
}

namespace {

// The engine joins its workers before returning, so the call is fully
// synchronized on both sides of the bracket.
double seconds(const std::function<void()> &runnable) {
    using clock   = std::chrono::steady_clock;
    const auto t0 = clock::now();
    runnable();
    const auto t1 = clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

double time_kernel(const std::function<void()> &runnable, int repeats) {
    if (repeats < 1)
        throw std::invalid_argument("repeats must be at least 1");
    runnable();
    std::vector<double> samples;
    samples.reserve(repeats);
    for (int r = 0; r < repeats; ++r)
        samples.push_back(seconds(runnable));
    return median(std::move(samples));
}

std::pair<double, double> time_paired(const std::function<void()> &first,
                                      const std::function<void()> &second,
                                      int repeats) {
    if (repeats < 1)
        throw std::invalid_argument("repeats must be at least 1");
    first();
    second();
    std::vector<double> s1, s2;
    s1.reserve(repeats);
    s2.reserve(repeats);
    for (int r = 0; r < repeats; ++r) {
        if (r % 2 == 0) {
            s1.push_back(seconds(first));
            s2.push_back(seconds(second));
        } else {
            s2.push_back(seconds(second));
            s1.push_back(seconds(first));
        }
    }
    return {median(std::move(s1)), median(std::move(s2))};
}

} // namespace smallgemm::bench
