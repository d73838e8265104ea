#pragma once

// Closed forms for a single read flowing through a linear pipeline of
// single-server stages with constant per-job latencies.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

inline int64_t linear_pipeline_makespan(const std::vector<int64_t>& latencies, int64_t jobs) {
    if (jobs == 0) {
        return 0;
    }
    const int64_t sum = std::accumulate(latencies.begin(), latencies.end(), int64_t{0});
    const int64_t slowest = *std::max_element(latencies.begin(), latencies.end());
    return sum + (jobs - 1) * slowest;
}

inline int64_t serial_makespan(const std::vector<int64_t>& latencies, int64_t jobs) {
    return jobs * std::accumulate(latencies.begin(), latencies.end(), int64_t{0});
}

} // namespace oracle
