#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "genpip/benchmark.hpp"
#include "genpip/costmodel.hpp"
#include "genpip/error.hpp"
#include "genpip/genio.hpp"
#include "genpip/paf.hpp"
#include "genpip/pipeline.hpp"
#include "genpip/refindex.hpp"

namespace genpip::cli {

namespace {

struct ArgError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class F>
void as_arg_error(F&& check) {
    try {
        check();
    } catch (const ConfigError& e) {
        throw ArgError(e.what());
    }
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f || !(f << text)) {
        throw IoError("cannot write " + path);
    }
}

std::vector<Read> load_reads(const std::string& path, uint64_t seed) {
    FastqReader reader{std::filesystem::path(path), seed};
    std::vector<Read> reads;
    while (auto r = reader.next()) {
        reads.push_back(std::move(*r));
    }
    return reads;
}

CostModel resolve_cost(const std::string& flag) {
    std::string path = flag;
    if (path.empty()) {
        if (const char* env = std::getenv("GENPIP_COST_CONFIG"); env && *env) {
            path = env;
        }
    }
    return path.empty() ? default_cost_model() : load_cost_config(path);
}

// Options shared by `run` and `sweep`.
struct RunArgs {
    std::string index;
    std::string ref;
    std::string reads;
    std::string mode = "cp";
    std::string cost;
    std::string out;
    uint32_t chunk_size = 300;
    uint32_t n_qs = 2;
    double theta_qs = 7.0;
    uint32_t n_cm = 5;
    std::optional<double> theta_cm;
    std::optional<double> gate_theta;
    bool no_qsr = false;
    bool no_cmr = false;
    bool no_read_gate = false;
    bool strict_large_chunk = false;
    bool buffer_stalls = false;
    uint32_t max_occ = 500;
    uint32_t band = 500;
    uint32_t flank = 100;
    unsigned threads = 0;
    uint64_t seed = 0;
};

void add_run_options(CLI::App* app, RunArgs& a) {
    app->add_option("--index", a.index, "Index file built by `index`")->required();
    app->add_option("--ref", a.ref, "Reference FASTA the index was built from")->required();
    app->add_option("--reads", a.reads, "Reads (FASTQ)")->required();
    app->add_option("--mode", a.mode, "sequential | decoupled | cp | cp-er")->capture_default_str();
    app->add_option("--cost", a.cost, "Cost config (JSON); falls back to $GENPIP_COST_CONFIG, then the built-in default");
    app->add_option("--chunk-size", a.chunk_size, "Bases per chunk")->capture_default_str();
    app->add_option("--nqs", a.n_qs, "Chunks sampled for quality rejection")->capture_default_str();
    app->add_option("--thqs", a.theta_qs, "Quality threshold (mean Phred)")->capture_default_str();
    app->add_option("--ncm", a.n_cm, "Consecutive chunks for chaining rejection")->capture_default_str();
    app->add_option("--thcm", a.theta_cm, "Chaining score threshold per base [default: 0.005 * match weight]");
    app->add_option("--gate-theta", a.gate_theta, "Read-level gate threshold [default: --thcm]");
    app->add_flag("--no-qsr", a.no_qsr, "Disable quality-based early rejection");
    app->add_flag("--no-cmr", a.no_cmr, "Disable chaining-based early rejection");
    app->add_flag("--no-read-gate", a.no_read_gate, "Align every chained read");
    app->add_flag("--cmr-strict-large-chunk", a.strict_large_chunk,
                  "Normalize the chaining check by the consecutive chunks only");
    app->add_flag("--model-buffer-stalls", a.buffer_stalls, "Block basecalling while the chunk buffer is full");
    app->add_option("--max-occ", a.max_occ, "Skip minimizers with more reference hits")->capture_default_str();
    app->add_option("--band", a.band, "Alignment band half-width")->capture_default_str();
    app->add_option("--flank", a.flank, "Reference bases added around a chain")->capture_default_str();
    app->add_option("--threads", a.threads, "Worker threads [default: all cores]");
    app->add_option("--seed", a.seed, "Seed for resolving ambiguous bases")->capture_default_str();
}

struct Loaded {
    MinimizerIndex index;
    std::vector<Reference> refs;
    std::vector<Read> reads;
    CostModel cost;
};

Mode parse_mode_arg(const std::string& s) {
    auto m = parse_mode(s);
    if (!m) {
        throw ArgError("unknown mode " + s);
    }
    return *m;
}

PipelineConfig make_config(const RunArgs& a) {
    PipelineConfig cfg;
    cfg.chunk_size = a.chunk_size;
    cfg.er.qsr.n_qs = a.n_qs;
    cfg.er.qsr.theta_qs = a.theta_qs;
    cfg.er.n_cm = a.n_cm;
    cfg.er.theta_cm = a.theta_cm.value_or(0.005 * cfg.chain.match_weight);
    cfg.er.qsr_enabled = !a.no_qsr;
    cfg.er.cmr_enabled = !a.no_cmr;
    cfg.er.strict_large_chunk = a.strict_large_chunk;
    cfg.read_gate = !a.no_read_gate;
    cfg.read_gate_theta = a.gate_theta;
    cfg.seed.max_occ = a.max_occ;
    cfg.align.band = a.band;
    cfg.align.flank = a.flank;
    as_arg_error([&] { cfg.validate(); });
    return cfg;
}

Loaded load_inputs(const RunArgs& a, PipelineConfig& cfg, std::ostream& err) {
    Loaded in;
    in.cost = resolve_cost(a.cost);
    in.index = load_index(a.index);
    in.refs = parse_fasta(a.ref, FastaOptions{a.seed});
    check_references(in.index, in.refs);
    in.reads = load_reads(a.reads, a.seed);
    cfg.seed.params = in.index.params();
    cfg.chain.seed_len = static_cast<uint32_t>(in.index.params().k);
    err << "loaded " << in.reads.size() << " reads, " << in.index.num_codes() << " index codes\n";
    return in;
}

EvaluateOptions eval_options(const RunArgs& a, bool oracle) {
    EvaluateOptions o;
    o.threads = a.threads;
    o.oracle = oracle;
    o.timing.model_buffer_stalls = a.buffer_stalls;
    return o;
}

std::string fmt6(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

// ---- index ----

struct IndexArgs {
    std::string ref;
    std::string out;
    int k = 15;
    int w = 10;
    bool no_canonical = false;
    uint64_t seed = 0;
};

int cmd_index(const IndexArgs& a, std::ostream& out, std::ostream& err) {
    IndexParams p{a.k, a.w, !a.no_canonical};
    as_arg_error([&] { p.validate(); });
    const std::vector<Reference> refs = parse_fasta(a.ref, FastaOptions{a.seed});
    err << "indexing " << refs.size() << " reference record(s)\n";
    const MinimizerIndex idx = build_index(refs, p);
    save_index(a.out, idx);
    out << "references\t" << idx.refs().size() << '\n'
        << "minimizer_codes\t" << idx.num_codes() << '\n'
        << "locations\t" << idx.num_locations() << '\n'
        << "load_factor\t" << fmt6(idx.load_factor()) << '\n';
    return 0;
}

// ---- run ----

struct RunOnly {
    bool oracle = false;
    bool per_read = false;
    std::string paf;
};

int cmd_run(const RunArgs& a, const RunOnly& r, std::ostream& out, std::ostream& err) {
    const Mode mode = parse_mode_arg(a.mode);
    PipelineConfig cfg = make_config(a);
    Loaded in = load_inputs(a, cfg, err);
    const RunReport rep = evaluate(in.reads, in.index, in.refs, cfg, mode, in.cost, eval_options(a, r.oracle));
    write_text(a.out, report_to_json(rep, r.per_read), out);
    if (!r.paf.empty()) {
        write_paf(r.paf, rep.reads, in.index.refs());
    }
    err << mode_name(mode) << ": makespan " << rep.timing.makespan_ns << " ns, " << rep.work.chunks_basecalled
        << " chunks basecalled, " << rep.work.reads_mapped << " mapped\n";
    return 0;
}

// ---- sweep ----

struct SweepArgs {
    std::string param;
    std::vector<std::string> values;
};

const std::map<std::string, std::string>& sweep_aliases() {
    static const std::map<std::string, std::string> m = {
        {"n_qs", "n_qs"},         {"nqs", "n_qs"},         {"n_cm", "n_cm"},
        {"ncm", "n_cm"},          {"chunk_size", "chunk_size"}, {"chunk-size", "chunk_size"},
        {"theta_qs", "theta_qs"}, {"thqs", "theta_qs"},    {"theta_cm", "theta_cm"},
        {"thcm", "theta_cm"}};
    return m;
}

uint32_t positive_int(const std::string& s) {
    size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || v == 0 || v > UINT32_MAX || s.find('-') != std::string::npos) {
        throw ArgError("expected a positive integer, got '" + s + "'");
    }
    return static_cast<uint32_t>(v);
}

double non_negative(const std::string& s) {
    size_t used = 0;
    double v = -1;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || !(v >= 0)) {
        throw ArgError("expected a non-negative number, got '" + s + "'");
    }
    return v;
}

int cmd_sweep(const RunArgs& a, const SweepArgs& s, std::ostream& out, std::ostream& err) {
    const auto it = sweep_aliases().find(s.param);
    if (it == sweep_aliases().end()) {
        throw ArgError("unknown sweep parameter " + s.param);
    }
    const std::string param = it->second;
    if (s.values.empty()) {
        throw ArgError("sweep needs at least one value");
    }
    const Mode mode = parse_mode_arg(a.mode);
    std::vector<PipelineConfig> configs;
    for (const std::string& v : s.values) {
        RunArgs b = a;
        if (param == "n_qs") b.n_qs = positive_int(v);
        if (param == "n_cm") b.n_cm = positive_int(v);
        if (param == "chunk_size") b.chunk_size = positive_int(v);
        if (param == "theta_qs") b.theta_qs = non_negative(v);
        if (param == "theta_cm") b.theta_cm = non_negative(v);
        configs.push_back(make_config(b));
    }
    PipelineConfig base = make_config(a);
    Loaded in = load_inputs(a, base, err);
    // The CP oracle only changes when the swept value changes CP behavior.
    const bool oracle_shared = param == "n_qs" || param == "n_cm";
    std::optional<DatasetRun> shared;

    std::ostringstream csv;
    csv << "param,value,rejection_ratio,fn_ratio_qsr,fn_ratio_cmr,chunks_basecalled,makespan_ns,energy_nj\n";
    for (size_t i = 0; i < configs.size(); ++i) {
        PipelineConfig& cfg = configs[i];
        cfg.seed.params = base.seed.params;
        cfg.chain.seed_len = base.chain.seed_len;
        DatasetRun oracle;
        const DatasetRun* oracle_ptr = nullptr;
        if (oracle_shared && shared) {
            oracle_ptr = &*shared;
        } else {
            oracle = run_dataset(in.reads, in.index, in.refs, cfg, Mode::cp, a.threads);
            if (oracle_shared) {
                shared = std::move(oracle);
                oracle_ptr = &*shared;
            } else {
                oracle_ptr = &oracle;
            }
        }
        const RunReport rep =
            evaluate(in.reads, in.index, in.refs, cfg, mode, in.cost, eval_options(a, true), nullptr, oracle_ptr);
        csv << s.param << ',' << s.values[i] << ',' << fmt6(rep.metrics.rejection_ratio) << ','
            << fmt6(rep.metrics.fn_ratio_qsr.value_or(0)) << ',' << fmt6(rep.metrics.fn_ratio_cmr.value_or(0))
            << ',' << rep.work.chunks_basecalled << ',' << rep.timing.makespan_ns << ','
            << format_fixed(rep.energy_pj, 1000, 3) << '\n';
        err << "sweep " << s.param << '=' << s.values[i] << " done\n";
    }
    write_text(a.out, csv.str(), out);
    return 0;
}

// ---- synth ----

struct SynthArgs {
    std::string ref;
    std::string benchmark;
    std::string ref_out;
    std::string out;
    std::string truth;
    SynthParams p;
};

int cmd_synth(CLI::App* app, SynthArgs a, std::ostream& err) {
    Reference ref;
    if (!a.benchmark.empty()) {
        BenchmarkSpec spec;
        as_arg_error([&] { spec = find_benchmark(a.benchmark); });
        if (a.ref_out.empty()) {
            throw ArgError("--benchmark needs --ref-out for the generated reference");
        }
        // Explicit flags override the benchmark's read model.
        const SynthParams given = a.p;
        a.p = spec.synth;
        auto given_flag = [&](const char* name) { return app->count(name) > 0; };
        if (given_flag("--num-reads")) a.p.num_reads = given.num_reads;
        if (given_flag("--len-min")) a.p.len_min = given.len_min;
        if (given_flag("--len-max")) a.p.len_max = given.len_max;
        if (given_flag("--sub-rate")) a.p.sub_rate = given.sub_rate;
        if (given_flag("--ins-rate")) a.p.ins_rate = given.ins_rate;
        if (given_flag("--del-rate")) a.p.del_rate = given.del_rate;
        if (given_flag("--junk-frac")) a.p.junk_frac = given.junk_frac;
        if (given_flag("--lowq-frac")) a.p.lowq_frac = given.lowq_frac;
        if (given_flag("--qual-high")) a.p.qual_high_mean = given.qual_high_mean;
        if (given_flag("--qual-low")) a.p.qual_low_mean = given.qual_low_mean;
        if (given_flag("--seed")) a.p.rng_seed = given.rng_seed;
        if (given_flag("--forward-only")) a.p.forward_only = given.forward_only;
        as_arg_error([&] { a.p.validate(); });
        ref = random_reference("synth_ref", spec.ref_len, spec.ref_seed);
        std::ofstream f(a.ref_out);
        if (!f) {
            throw IoError("cannot write " + a.ref_out);
        }
        write_fasta(f, ref);
    } else {
        if (a.ref.empty()) {
            throw ArgError("synth needs --ref or --benchmark");
        }
        as_arg_error([&] { a.p.validate(); });
        ref = parse_fasta_single(a.ref);
    }
    const SynthOutput s = synth_reads(ref, a.p);
    write_fastq(a.out, s.reads);
    write_truth_jsonl(a.truth.empty() ? a.out + ".truth.jsonl" : a.truth, s.truth);
    err << "wrote " << s.reads.size() << " reads to " << a.out << '\n';
    return 0;
}

// ---- stats / compare / area ----

int cmd_stats(const std::string& path, std::ostream& out) {
    FastqReader reader{std::filesystem::path(path)};
    DatasetStatsBuilder b;
    while (auto r = reader.next()) {
        b.add(*r);
    }
    const DatasetStats s = b.finish();
    nlohmann::ordered_json j;
    j["num_reads"] = s.num_reads;
    j["total_bases"] = s.total_bases;
    j["mean_len"] = s.mean_len;
    j["median_len"] = s.median_len;
    j["mean_q"] = s.mean_q;
    j["median_q"] = s.median_q;
    out << j.dump(2) << '\n';
    return 0;
}

int cmd_compare(const std::string& a, const std::string& b, bool table, std::ostream& out) {
    const ComparisonReport c = compare(summary_from_json(read_text(a)), summary_from_json(read_text(b)));
    if (table) {
        out << std::left << std::setw(16) << "metric" << "ratio\n"
            << std::setw(16) << "speedup" << fmt6(c.speedup) << '\n'
            << std::setw(16) << "energy_savings" << fmt6(c.energy_savings) << '\n'
            << std::setw(16) << "work_reduction" << fmt6(c.work_reduction) << '\n';
        return 0;
    }
    nlohmann::ordered_json j;
    j["schema"] = "genpip-comparison";
    j["schema_version"] = 1;
    j["speedup"] = c.speedup;
    j["energy_savings"] = c.energy_savings;
    j["work_reduction"] = c.work_reduction;
    out << j.dump(2) << '\n';
    return 0;
}

int cmd_area(const std::string& cost, std::ostream& out) {
    out << format_area_power_table(area_power_summary(resolve_cost(cost)));
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Chunk-pipelined read analysis simulator", "genpip"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "genpip 0.1.0");

    IndexArgs ia;
    auto* index = app.add_subcommand("index", "Build a minimizer index from a FASTA reference");
    index->add_option("--ref", ia.ref, "Reference FASTA")->required();
    index->add_option("-o,--out", ia.out, "Output index file")->required();
    index->add_option("--k", ia.k, "k-mer length (1-31)")->capture_default_str();
    index->add_option("--w", ia.w, "Minimizer window")->capture_default_str();
    index->add_flag("--no-canonical,--forward-only", ia.no_canonical, "Use forward-strand k-mers only");
    index->add_option("--seed", ia.seed, "Seed for resolving ambiguous bases")->capture_default_str();

    RunArgs ra;
    RunOnly ro;
    auto* run_cmd = app.add_subcommand("run", "Run the pipeline on a read set and write a JSON report");
    add_run_options(run_cmd, ra);
    run_cmd->add_option("-o,--out", ra.out, "Report path [default: stdout]");
    run_cmd->add_flag("--oracle", ro.oracle, "Also run CP without rejection to fill false-negative metrics");
    run_cmd->add_flag("--per-read", ro.per_read, "Include per-read results in the report");
    run_cmd->add_option("--paf", ro.paf, "Write mappings as PAF");

    RunArgs swa;
    SweepArgs sw;
    swa.mode = "cp-er";
    auto* sweep = app.add_subcommand("sweep", "Run once per parameter value and write CSV");
    add_run_options(sweep, swa);
    sweep->add_option("-o,--out", swa.out, "CSV path [default: stdout]");
    sweep->add_option("--param", sw.param, "n_qs | n_cm | chunk_size | theta_qs | theta_cm")->required();
    sweep->add_option("--values", sw.values, "Comma-separated values")->required()->delimiter(',');

    SynthArgs sa;
    auto* synth = app.add_subcommand("synth", "Simulate reads with ground truth");
    synth->add_option("--ref", sa.ref, "Reference FASTA to sample from");
    synth->add_option("--benchmark", sa.benchmark, "Built-in dataset: shipped | useless-work");
    synth->add_option("--ref-out", sa.ref_out, "Where to write the benchmark reference");
    synth->add_option("-o,--out", sa.out, "Output FASTQ")->required();
    synth->add_option("--truth", sa.truth, "Ground-truth JSONL [default: <out>.truth.jsonl]");
    synth->add_option("--num-reads", sa.p.num_reads)->capture_default_str();
    synth->add_option("--len-min", sa.p.len_min)->capture_default_str();
    synth->add_option("--len-max", sa.p.len_max)->capture_default_str();
    synth->add_option("--sub-rate", sa.p.sub_rate)->capture_default_str();
    synth->add_option("--ins-rate", sa.p.ins_rate)->capture_default_str();
    synth->add_option("--del-rate", sa.p.del_rate)->capture_default_str();
    synth->add_option("--junk-frac", sa.p.junk_frac)->capture_default_str();
    synth->add_option("--lowq-frac", sa.p.lowq_frac)->capture_default_str();
    synth->add_option("--qual-high", sa.p.qual_high_mean, "Mean Phred of normal reads")->capture_default_str();
    synth->add_option("--qual-low", sa.p.qual_low_mean, "Mean Phred of low-quality reads")->capture_default_str();
    synth->add_option("--seed", sa.p.rng_seed)->capture_default_str();
    synth->add_flag("--forward-only", sa.p.forward_only, "Never reverse-complement");

    std::string stats_reads;
    auto* stats = app.add_subcommand("stats", "Print read-set statistics as JSON");
    stats->add_option("--reads", stats_reads, "Reads (FASTQ)")->required();

    std::string cmp_a, cmp_b;
    bool cmp_table = false;
    auto* cmp = app.add_subcommand("compare", "Ratios of report A over report B");
    cmp->add_option("a", cmp_a, "Baseline report")->required();
    cmp->add_option("b", cmp_b, "Compared report")->required();
    cmp->add_flag("--table", cmp_table, "Aligned text instead of JSON");

    std::string area_cost;
    auto* area = app.add_subcommand("area", "Print the area and power summary of a cost config");
    area->add_option("--cost", area_cost, "Cost config [default: $GENPIP_COST_CONFIG or built-in]");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (index->parsed()) return cmd_index(ia, out, err);
        if (run_cmd->parsed()) return cmd_run(ra, ro, out, err);
        if (sweep->parsed()) return cmd_sweep(swa, sw, out, err);
        if (synth->parsed()) return cmd_synth(synth, sa, err);
        if (stats->parsed()) return cmd_stats(stats_reads, out);
        if (cmp->parsed()) return cmd_compare(cmp_a, cmp_b, cmp_table, out);
        if (area->parsed()) return cmd_area(area_cost, out);
    } catch (const ArgError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace genpip::cli
