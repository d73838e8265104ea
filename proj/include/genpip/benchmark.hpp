#pragma once

#include <string>
#include <vector>

#include "genpip/genio.hpp"

namespace genpip {

/// A seeded synthetic dataset: random reference plus simulated reads.
struct BenchmarkSpec {
    std::string name;
    uint64_t ref_len = 1'000'000;
    uint64_t ref_seed = 1;
    SynthParams synth;
};

struct BenchmarkData {
    Reference ref;
    SynthOutput reads;
};

/// 1000 reads of 6-12 kb, 20% junk, no low-quality reads.
BenchmarkSpec shipped_benchmark();
/// Same read model with 20.5% low-quality reads and 10% junk.
BenchmarkSpec useless_work_benchmark();
/// Names accepted by find_benchmark().
std::vector<std::string> benchmark_names();
/// Throws ConfigError for an unknown name.
BenchmarkSpec find_benchmark(const std::string& name);

BenchmarkData make_benchmark(const BenchmarkSpec& spec);

} // namespace genpip
