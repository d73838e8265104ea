#include "genpip/benchmark.hpp"

#include "genpip/error.hpp"

namespace genpip {

namespace {

SynthParams base_params() {
    SynthParams p;
    p.num_reads = 1000;
    p.len_min = 6000;
    p.len_max = 12000;
    p.sub_rate = 0.05;
    p.ins_rate = 0.02;
    p.del_rate = 0.02;
    p.qual_high_mean = 10.0;
    p.qual_low_mean = 5.0;
    p.rng_seed = 1;
    return p;
}

} // namespace

BenchmarkSpec shipped_benchmark() {
    BenchmarkSpec s;
    s.name = "shipped";
    s.synth = base_params();
    s.synth.junk_frac = 0.20;
    s.synth.lowq_frac = 0.0;
    return s;
}

BenchmarkSpec useless_work_benchmark() {
    BenchmarkSpec s;
    s.name = "useless-work";
    s.synth = base_params();
    s.synth.junk_frac = 0.10;
    s.synth.lowq_frac = 0.205;
    return s;
}

std::vector<std::string> benchmark_names() { return {"shipped", "useless-work"}; }

BenchmarkSpec find_benchmark(const std::string& name) {
    if (name == "shipped") {
        return shipped_benchmark();
    }
    if (name == "useless-work") {
        return useless_work_benchmark();
    }
    throw ConfigError("unknown benchmark " + name);
}

BenchmarkData make_benchmark(const BenchmarkSpec& spec) {
    BenchmarkData d;
    d.ref = random_reference("synth_ref", spec.ref_len, spec.ref_seed);
    d.reads = synth_reads(d.ref, spec.synth);
    return d;
}

} // namespace genpip
