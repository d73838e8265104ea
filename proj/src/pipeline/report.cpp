#include <json.hpp>

#include "genpip/error.hpp"
#include "genpip/pipeline.hpp"

namespace genpip {

using nlohmann::ordered_json;

RunReport evaluate(std::span<const Read> reads, const MinimizerIndex& index, std::span<const Reference> refs,
                   const PipelineConfig& cfg, Mode mode, const CostModel& cost, const EvaluateOptions& opts,
                   DatasetRun* run_out, const DatasetRun* oracle_run) {
    DatasetRun run = run_dataset(reads, index, refs, cfg, mode, opts.threads);

    std::vector<std::vector<StageJob>> jobs;
    jobs.reserve(run.reads.size());
    for (const ReadRun& r : run.reads) {
        jobs.push_back(r.jobs);
    }

    RunReport rep;
    rep.mode = mode;
    rep.config = cfg;
    rep.num_reads = run.reads.size();
    rep.timing = simulate_timing(jobs, cost, mode, opts.timing);
    rep.work = run.work;
    rep.energy_pj = energy_total_pj(run.work, cost, mode);

    DatasetRun fresh_oracle;
    const DatasetRun* oracle = oracle_run;
    if (!oracle && opts.oracle) {
        if (mode == Mode::cp) {
            oracle = &run;
        } else {
            fresh_oracle = run_dataset(reads, index, refs, cfg, Mode::cp, opts.threads);
            oracle = &fresh_oracle;
        }
    }
    rep.metrics = rejection_metrics(run, oracle, cfg.er.qsr.theta_qs);
    rep.reads.reserve(run.reads.size());
    for (const ReadRun& r : run.reads) {
        rep.reads.push_back(r.result);
    }
    if (run_out) {
        *run_out = std::move(run);
    }
    return rep;
}

namespace {

ordered_json work_json(const WorkCounts& w) {
    ordered_json j;
    j["chunks_basecalled"] = w.chunks_basecalled;
    j["chunks_cqs"] = w.chunks_cqs;
    j["chunks_seeded"] = w.chunks_seeded;
    j["chunks_chained"] = w.chunks_chained;
    j["reads_aligned"] = w.reads_aligned;
    j["aligned_bases"] = w.aligned_bases;
    j["reads_rejected_qsr"] = w.reads_rejected_qsr;
    j["reads_rejected_cmr"] = w.reads_rejected_cmr;
    j["reads_qc_failed"] = w.reads_qc_failed;
    j["reads_unmapped"] = w.reads_unmapped;
    j["reads_mapped"] = w.reads_mapped;
    j["reads_transferred"] = w.reads_transferred;
    j["bytes_transferred"] = w.bytes_transferred;
    return j;
}

ordered_json config_json(const PipelineConfig& c) {
    ordered_json j;
    j["chunk_size"] = c.chunk_size;
    j["n_qs"] = c.er.qsr.n_qs;
    j["theta_qs"] = c.er.qsr.theta_qs;
    j["n_cm"] = c.er.n_cm;
    j["theta_cm"] = c.er.theta_cm;
    j["qsr_enabled"] = c.er.qsr_enabled;
    j["cmr_enabled"] = c.er.cmr_enabled;
    j["strict_large_chunk"] = c.er.strict_large_chunk;
    j["read_gate"] = c.read_gate;
    j["read_gate_theta"] = c.gate_theta();
    j["k"] = c.seed.params.k;
    j["w"] = c.seed.params.w;
    j["max_occ"] = c.seed.max_occ;
    j["chain"] = {{"match_weight", c.chain.match_weight},
                  {"gap_coef", c.chain.gap_coef},
                  {"max_gap", c.chain.max_gap},
                  {"min_chain_anchors", c.chain.min_chain_anchors}};
    j["align"] = {{"match", c.align.match},         {"mismatch", c.align.mismatch},
                  {"gap_open", c.align.gap_open},   {"gap_extend", c.align.gap_extend},
                  {"band", c.align.band},           {"flank", c.align.flank}};
    return j;
}

ordered_json optional_number(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

} // namespace

std::string report_to_json(const RunReport& rep, bool per_read) {
    ordered_json j;
    j["schema"] = "genpip-run-report";
    j["schema_version"] = kReportSchemaVersion;
    j["mode"] = std::string(mode_name(rep.mode));
    j["num_reads"] = rep.num_reads;
    j["config"] = config_json(rep.config);
    j["makespan_ns"] = rep.timing.makespan_ns;
    ordered_json stages = ordered_json::array();
    for (Stage s : kAllStages) {
        const StageTiming& st = rep.timing.stages[static_cast<size_t>(s)];
        stages.push_back({{"stage", std::string(stage_name(s))},
                          {"jobs", st.jobs},
                          {"busy_ns", st.busy_ns},
                          {"servers", st.servers},
                          {"utilization", st.utilization}});
    }
    j["stages"] = stages;
    j["work_counts"] = work_json(rep.work);
    j["energy_pj"] = rep.energy_pj;
    j["energy_j"] = static_cast<double>(rep.energy_pj) * 1e-12;
    j["metrics"] = {{"rejection_ratio", rep.metrics.rejection_ratio},
                    {"fn_ratio_qsr", optional_number(rep.metrics.fn_ratio_qsr)},
                    {"fn_ratio_cmr", optional_number(rep.metrics.fn_ratio_cmr)}};
    if (per_read) {
        ordered_json reads = ordered_json::array();
        for (const MappingResult& r : rep.reads) {
            ordered_json e;
            e["id"] = r.read_id;
            e["len"] = r.read_len;
            e["status"] = std::string(status_name(r.status));
            e["chain_score"] = r.best_chain_score;
            if (r.region) {
                e["ref_id"] = r.region->ref_id;
                e["ref_start"] = r.region->start;
                e["ref_end"] = r.region->end;
                e["strand"] = std::string(1, strand_char(r.region->strand));
                e["read_start"] = r.read_start;
                e["read_end"] = r.read_end;
                e["alignment_score"] = r.alignment_score.value_or(0);
                e["matches"] = r.matches;
                e["block_len"] = r.block_len;
            }
            reads.push_back(std::move(e));
        }
        j["reads"] = std::move(reads);
    }
    return j.dump(2) + "\n";
}

RunSummary summary_from_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        if (j.value("schema", "") != "genpip-run-report") {
            throw FormatError("not a genpip run report");
        }
        if (j.at("schema_version").get<int>() != kReportSchemaVersion) {
            throw FormatError("unsupported run report version");
        }
        RunSummary s;
        s.num_reads = j.at("num_reads").get<uint64_t>();
        s.makespan_ns = j.at("makespan_ns").get<int64_t>();
        s.energy_pj = j.at("energy_pj").get<int64_t>();
        s.chunks_basecalled = j.at("work_counts").at("chunks_basecalled").get<uint64_t>();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed run report: ") + e.what());
    }
}

} // namespace genpip
