#include "genpip/genio.hpp"

#include <algorithm>
#include <numeric>

#include "genpip/error.hpp"

namespace genpip {

namespace {

template <typename T>
double median_of(std::vector<T> values) {
    std::sort(values.begin(), values.end());
    size_t n = values.size();
    if (n % 2 == 1) {
        return static_cast<double>(values[n / 2]);
    }
    return (static_cast<double>(values[n / 2 - 1]) + static_cast<double>(values[n / 2])) / 2.0;
}

} // namespace

void DatasetStatsBuilder::add(const Read& read) {
    uint64_t sum = std::accumulate(read.quals.begin(), read.quals.end(), uint64_t{0});
    lengths_.push_back(read.length());
    mean_quals_.push_back(read.quals.empty()
                              ? 0.0
                              : static_cast<double>(sum) / static_cast<double>(read.quals.size()));
}

DatasetStats DatasetStatsBuilder::finish() const {
    if (lengths_.empty()) {
        throw Error("dataset_stats: empty read stream");
    }
    DatasetStats s;
    s.num_reads = lengths_.size();
    s.total_bases = std::accumulate(lengths_.begin(), lengths_.end(), uint64_t{0});
    s.mean_len = static_cast<double>(s.total_bases) / static_cast<double>(s.num_reads);
    s.median_len = median_of(lengths_);
    // Running mean: exact when all reads share one value.
    double mean = 0.0;
    for (size_t i = 0; i < mean_quals_.size(); ++i) {
        mean += (mean_quals_[i] - mean) / static_cast<double>(i + 1);
    }
    s.mean_q = mean;
    s.median_q = median_of(mean_quals_);
    return s;
}

DatasetStats dataset_stats(std::span<const Read> reads) {
    DatasetStatsBuilder b;
    for (const Read& r : reads) {
        b.add(r);
    }
    return b.finish();
}

} // namespace genpip
