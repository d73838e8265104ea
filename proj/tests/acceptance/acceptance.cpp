#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "genpip/benchmark.hpp"
#include "genpip/chunkqc.hpp"
#include "genpip/costmodel.hpp"
#include "genpip/dna.hpp"
#include "genpip/mapdp.hpp"
#include "genpip/pipeline.hpp"
#include "genpip/refindex.hpp"
#include "oracles/pipeline_oracle.hpp"
#include "pipeline_fixture.hpp"
#include "test_util.hpp"

using namespace genpip;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int n, const std::string& what, const std::function<Outcome()>& body) {
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << what << " (" << o.detail << ")"
              << std::endl;
    failures += !o.pass;
}

std::string fmt(double v, int prec = 3) {
    std::ostringstream os;
    os.precision(prec);
    os << std::fixed << v;
    return os.str();
}

uint64_t qual_sum(const Read& r) { return std::accumulate(r.quals.begin(), r.quals.end(), uint64_t{0}); }

// ---- 1 ----

Outcome aqs_equivalence() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(101);
    uint64_t checks = 0, bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const size_t n = 1 + rng() % 5000;
        Read r = testutil::random_read(rng, "r" + std::to_string(i), n, 0, 40);
        const QualityAverage whole = read_aqs(r);
        bad += whole.sum_q != qual_sum(r) || whole.n_bases != n;
        for (size_t c : {1u, 7u, 300u}) {
            SqsAccumulator acc;
            for (const Chunk& ch : split_into_chunks(r, c)) {
                acc = merge_aqs(acc, ch);
            }
            bad += !(acc.average() == whole) || acc.average().value() != whole.value();
            ++checks;
        }
    }
    const double secs = seconds_since(t0);
    return {bad == 0 && secs < 5.0,
            std::to_string(checks - bad) + "/" + std::to_string(checks) + " exact, " + fmt(secs) + " s"};
}

// ---- 2 ----

Outcome qsr_oracle() {
    std::mt19937_64 rng(202);
    int agree = 0;
    const int total = 500;
    for (int i = 0; i < total; ++i) {
        const uint32_t c = 1 + static_cast<uint32_t>(rng() % 400);
        const uint32_t m = 1 + static_cast<uint32_t>(rng() % 12);
        const int qlo = static_cast<int>(rng() % 10);
        Read r = testutil::random_read(rng, "r", size_t{c} * m, qlo, qlo + static_cast<int>(rng() % 8));
        const auto chunks = split_into_chunks(r, c);
        const uint32_t n_qs = m + static_cast<uint32_t>(rng() % 3);
        std::vector<Chunk> sampled;
        for (uint32_t idx : qsr_sample_indices(m, n_qs)) {
            sampled.push_back(chunks[idx]);
        }
        const double theta = 0.5 * static_cast<double>(rng() % 30);
        const bool decided = qsr_decide(sampled, QsrConfig{n_qs, theta}).reject;
        // sum/n < theta  <=>  2*sum < 2*theta*n, all integers
        const bool expected = 2 * qual_sum(r) < static_cast<uint64_t>(2 * theta) * r.length();
        agree += decided == expected && decided == read_aqs(r).below(theta);
    }
    return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " agree"};
}

// ---- 3 ----

Outcome chaining_oracle() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(303);
    int agree = 0;
    const int total = 1000;
    for (int i = 0; i < total; ++i) {
        ChainParams p;
        p.min_chain_anchors = 1;
        p.match_weight = 5 + static_cast<double>(rng() % 20);
        p.gap_coef = 0.01 * static_cast<double>(rng() % 30);
        p.max_gap = 20 + static_cast<uint32_t>(rng() % 500);
        const size_t n = rng() % 13;
        const uint32_t span = 50 + static_cast<uint32_t>(rng() % 1000);
        std::vector<Anchor> a;
        for (size_t j = 0; j < n; ++j) {
            a.push_back(Anchor{static_cast<uint32_t>(rng() % span), static_cast<uint32_t>(rng() % 2),
                               static_cast<uint32_t>(rng() % span),
                               rng() % 3 == 0 ? Strand::reverse : Strand::forward});
        }
        const auto chains = chain(a, p);
        const double dp = chains.empty() ? 0.0 : chains.front().score;
        agree += dp == chain_bruteforce(a, p);
    }
    const double secs = seconds_since(t0);
    return {agree == total && secs < 30.0,
            std::to_string(agree) + "/" + std::to_string(total) + " equal, " + fmt(secs) + " s"};
}

// ---- 4 ----

Outcome seeding_geometry() {
    std::vector<Reference> refs{random_reference("ref", 1'000'000, 404)};
    PipelineConfig cfg;
    const MinimizerIndex idx = build_index(refs, cfg.seed.params);
    SynthParams sp;
    sp.num_reads = 200;
    sp.len_min = 300;
    sp.len_max = 5000;
    sp.forward_only = true;
    sp.qual_high_mean = 12;
    sp.rng_seed = 404;
    const SynthOutput data = synth_reads(refs[0], sp);
    const int64_t k = cfg.seed.params.k;

    auto best_chain = [&](const Read& r) -> std::optional<Chain> {
        std::vector<ChunkAnchors> per_chunk;
        for (const Chunk& c : split_into_chunks(r, cfg.chunk_size)) {
            per_chunk.push_back(ChunkAnchors{r.id, c.index, seed_chunk(c, idx, cfg.seed)});
        }
        const auto chains = chain(merge_chunk_anchors(per_chunk), cfg.chain);
        if (chains.empty()) {
            return std::nullopt;
        }
        return chains.front();
    };

    int with_anchor = 0, on_diag = 0, twins_ok = 0;
    uint64_t anchors_total = 0, anchors_on = 0;
    for (size_t i = 0; i < data.reads.size(); ++i) {
        const Read& r = data.reads[i];
        const int64_t origin = static_cast<int64_t>(*data.truth[i].origin);
        const int64_t len = static_cast<int64_t>(r.length());
        Read twin = r;
        twin.id += "_rc";
        twin.bases = reverse_complement(r.bases);
        std::reverse(twin.quals.begin(), twin.quals.end());

        const auto fc = best_chain(r);
        const auto rc = best_chain(twin);
        if (!fc || !rc) {
            continue;
        }
        ++with_anchor;
        bool all_on = fc->strand == Strand::forward && rc->strand == Strand::reverse;
        for (const Anchor& a : fc->anchors) {
            const bool ok = int64_t{a.ref_pos} - int64_t{a.read_pos} == origin;
            anchors_on += ok;
            all_on &= ok;
        }
        for (const Anchor& a : rc->anchors) {
            const bool ok = int64_t{a.ref_pos} + int64_t{a.read_pos} == origin + len - k;
            anchors_on += ok;
            all_on &= ok;
        }
        anchors_total += fc->anchors.size() + rc->anchors.size();
        on_diag += all_on;

        const ReadRun fr = run_read(r, idx, refs, cfg, Mode::cp);
        const ReadRun tr = run_read(twin, idx, refs, cfg, Mode::cp);
        twins_ok += fr.result.status == ReadStatus::mapped && tr.result.status == ReadStatus::mapped &&
                    fr.result.region && tr.result.region && fr.result.region->start == tr.result.region->start &&
                    fr.result.region->end == tr.result.region->end &&
                    fr.result.region->ref_id == tr.result.region->ref_id &&
                    fr.result.region->strand == Strand::forward && tr.result.region->strand == Strand::reverse;
    }
    const int n = static_cast<int>(data.reads.size());
    return {with_anchor == n && on_diag == n && twins_ok == n,
            std::to_string(with_anchor) + "/" + std::to_string(n) + " anchored, " + std::to_string(anchors_on) +
                "/" + std::to_string(anchors_total) + " chain anchors on diagonal, " + std::to_string(twins_ok) +
                "/" + std::to_string(n) + " twins identical with strand -"};
}

// ---- 5 ----

Outcome closed_forms() {
    std::mt19937_64 rng(505);
    int ok = 0, total = 0;
    for (uint32_t m : {1u, 2u, 10u, 100u}) {
        for (int t = 0; t < 25; ++t) {
            std::vector<int64_t> lat(4);
            for (auto& l : lat) {
                l = 1 + static_cast<int64_t>(rng() % 5000);
            }
            const CostModel cost = testutil::latency_model(lat);
            const std::vector<std::vector<StageJob>> jobs{testutil::linear_chunk_jobs(m)};
            ok += simulate_timing(jobs, cost, Mode::cp).makespan_ns == oracle::linear_pipeline_makespan(lat, m);
            ok += simulate_timing(jobs, cost, Mode::sequential).makespan_ns == oracle::serial_makespan(lat, m);
            total += 2;
        }
    }
    return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " exact"};
}

// ---- shared benchmark state for 6 and 8 ----

struct Bench {
    BenchmarkData data;
    std::vector<Reference> refs;
    MinimizerIndex index;
    PipelineConfig cfg;
    CostModel cost = default_cost_model();
};

Bench load_bench(const BenchmarkSpec& spec) {
    Bench b;
    b.data = make_benchmark(spec);
    b.refs = {b.data.ref};
    b.index = build_index(b.refs, b.cfg.seed.params);
    return b;
}

double junk_fraction(const SynthOutput& s) {
    const auto junk = std::count_if(s.truth.begin(), s.truth.end(), [](const GroundTruth& g) { return g.is_junk(); });
    return static_cast<double>(junk) / static_cast<double>(s.truth.size());
}

struct ShippedRuns {
    DatasetRun cp;
    RunReport cp_er_default;
};

Outcome mode_ordering(const Bench& b, ShippedRuns& keep) {
    const EvaluateOptions opts{1, true, {}};
    RunReport cp = evaluate(b.data.reads.reads, b.index, b.refs, b.cfg, Mode::cp, b.cost, opts, &keep.cp);
    RunReport seq =
        evaluate(b.data.reads.reads, b.index, b.refs, b.cfg, Mode::sequential, b.cost, opts, nullptr, &keep.cp);
    RunReport dec =
        evaluate(b.data.reads.reads, b.index, b.refs, b.cfg, Mode::decoupled, b.cost, opts, nullptr, &keep.cp);
    keep.cp_er_default =
        evaluate(b.data.reads.reads, b.index, b.refs, b.cfg, Mode::cp_er, b.cost, opts, nullptr, &keep.cp);
    const int64_t t_seq = seq.timing.makespan_ns, t_dec = dec.timing.makespan_ns, t_cp = cp.timing.makespan_ns,
                  t_er = keep.cp_er_default.timing.makespan_ns;
    const double speedup = static_cast<double>(t_seq) / static_cast<double>(t_cp);
    return {t_er <= t_cp && t_cp <= t_dec && t_dec <= t_seq && speedup > 1.5,
            "cp-er " + std::to_string(t_er) + " <= cp " + std::to_string(t_cp) + " <= decoupled " +
                std::to_string(t_dec) + " <= sequential " + std::to_string(t_seq) + " ns, speedup " + fmt(speedup, 2)};
}

// ---- 7 ----

Outcome useless_work() {
    const auto t0 = Clock::now();
    Bench b = load_bench(useless_work_benchmark());
    b.cfg.chunk_size = 300;
    b.cfg.er.qsr.n_qs = 2;
    b.cfg.er.n_cm = 5;
    DatasetRun cp_run;
    const EvaluateOptions opts{1, true, {}};
    RunReport cp = evaluate(b.data.reads.reads, b.index, b.refs, b.cfg, Mode::cp, b.cost, opts, &cp_run);
    RunReport er = evaluate(b.data.reads.reads, b.index, b.refs, b.cfg, Mode::cp_er, b.cost, opts, nullptr, &cp_run);
    const double secs = seconds_since(t0);
    const double reduction = 1.0 - static_cast<double>(er.work.chunks_basecalled) /
                                       static_cast<double>(cp.work.chunks_basecalled);
    const double fn_qsr = er.metrics.fn_ratio_qsr.value_or(1.0);
    const double fn_cmr = er.metrics.fn_ratio_cmr.value_or(1.0);
    return {reduction >= 0.25 && fn_qsr <= 0.05 && fn_cmr == 0.0 && secs < 120.0,
            "chunks " + std::to_string(cp.work.chunks_basecalled) + " -> " + std::to_string(er.work.chunks_basecalled) +
                ", reduction " + fmt(100 * reduction, 1) + "%, fn_qsr " + fmt(fn_qsr, 4) + ", fn_cmr " +
                fmt(fn_cmr, 4) + ", " + fmt(secs, 1) + " s"};
}

// ---- 8 ----

Outcome ncm_sweep(const Bench& b, const ShippedRuns& keep) {
    std::vector<double> fn;
    double rej_at_5 = -1;
    for (uint32_t n_cm = 1; n_cm <= 5; ++n_cm) {
        RunReport rep;
        if (n_cm == b.cfg.er.n_cm) {
            rep = keep.cp_er_default;
        } else {
            PipelineConfig cfg = b.cfg;
            cfg.er.n_cm = n_cm;
            rep = evaluate(b.data.reads.reads, b.index, b.refs, cfg, Mode::cp_er, b.cost, EvaluateOptions{1, true, {}},
                           nullptr, &keep.cp);
        }
        fn.push_back(rep.metrics.fn_ratio_cmr.value_or(1.0));
        if (n_cm == 5) {
            rej_at_5 = rep.metrics.rejection_ratio;
        }
    }
    const bool nonincreasing = std::adjacent_find(fn.begin(), fn.end(), std::less<>()) == fn.end();
    const double junk = junk_fraction(b.data.reads);
    std::string trail;
    for (double f : fn) {
        trail += (trail.empty() ? "" : ",") + fmt(f, 4);
    }
    return {nonincreasing && std::fabs(rej_at_5 - junk) <= 0.03,
            "fn_cmr over n_cm 1..5 = [" + trail + "], rejection at 5 = " + fmt(rej_at_5, 3) + " vs junk " +
                fmt(junk, 3)};
}

// ---- 9 ----

Outcome table_fidelity() {
    const AreaPowerSummary s = area_power_summary(default_cost_model());
    struct Row {
        std::string module, power, area;
    };
    const std::vector<Row> expected{{"basecalling", "27.4", "49.2"},
                                    {"read_mapping", "114.5", "93.1"},
                                    {"controller", "5.3", "21.5"}};
    int ok = 0;
    for (const Row& row : expected) {
        for (const ModuleSubtotal& m : s.modules) {
            if (m.module == row.module) {
                ok += format_fixed(m.reported_power_uw, 1'000'000, 1) == row.power &&
                      format_fixed(m.reported_area_umm2, 1'000'000, 1) == row.area;
            }
        }
    }
    const std::string power = format_fixed(s.total_power_uw, 1'000'000, 1);
    const std::string area = format_fixed(s.total_area_umm2, 1'000'000, 1);
    return {ok == 3 && power == "147.2" && area == "163.8",
            std::to_string(ok) + "/3 module subtotals, total " + power + " W / " + area + " mm^2"};
}

// ---- 10 ----

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    const auto dir = testutil::tmp_dir();
    const std::string ref = (dir / "det_ref.fa").string();
    const std::string idx = (dir / "det_ref.idx").string();
    const std::string reads = (dir / "det_reads.fq").string();
    std::ostringstream sink;
    auto cli = [&](std::vector<std::string> args) { return cli::run(args, sink, sink); };
    if (cli({"synth", "--benchmark", "shipped", "--ref-out", ref, "-o", reads, "--num-reads", "80"}) != 0 ||
        cli({"index", "--ref", ref, "-o", idx}) != 0) {
        return {false, "could not prepare inputs: " + sink.str()};
    }
    int identical = 0, total = 0;
    for (const std::string mode : {"cp-er", "cp", "decoupled", "sequential"}) {
        std::vector<std::string> outputs;
        for (const std::string threads : {"1", "1", "8"}) {
            const std::string out = (dir / ("det_" + mode + "_" + std::to_string(outputs.size()) + ".json")).string();
            if (cli({"run", "--index", idx, "--ref", ref, "--reads", reads, "--mode", mode, "--threads", threads,
                     "--oracle", "--per-read", "-o", out}) != 0) {
                return {false, "run failed: " + sink.str()};
            }
            outputs.push_back(slurp(out));
        }
        identical += outputs[0] == outputs[1];
        identical += outputs[0] == outputs[2];
        total += 2;
    }
    return {identical == total, std::to_string(identical) + "/" + std::to_string(total) +
                                    " repeat and thread-count comparisons byte-identical"};
}

} // namespace

int main() {
    const auto t0 = Clock::now();
    report(1, "incremental chunk quality merge equals whole-read average", aqs_equivalence);
    report(2, "sampled quality rejection with full coverage equals whole-read decision", qsr_oracle);
    report(3, "chaining DP equals exhaustive enumeration", chaining_oracle);
    report(4, "error-free reads seed on their true diagonal, reverse twins map identically", seeding_geometry);
    report(5, "pipeline and sequential makespans follow the closed forms", closed_forms);

    Bench shipped = load_bench(shipped_benchmark());
    ShippedRuns keep;
    report(6, "mode ordering and sequential-to-pipelined speedup on the shipped benchmark",
           [&] { return mode_ordering(shipped, keep); });
    report(7, "early rejection removes useless basecalling without false negatives", useless_work);
    report(8, "n_cm sweep: chaining false negatives nonincreasing, rejection near junk fraction",
           [&] { return ncm_sweep(shipped, keep); });
    report(9, "area and power subtotals reproduce the published table", table_fidelity);
    report(10, "run reports are byte-identical across repeats and thread counts", determinism);
    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << " in "
              << fmt(seconds_since(t0), 1) << " s" << std::endl;
    return failures == 0 ? 0 : 1;
}
