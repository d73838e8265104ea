#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "genpip/work.hpp"

namespace genpip {

// All quantities are fixed-point integers so that totals are exact and
// reports are byte-identical across platforms:
//   time    ns (per job) or ps (per base / per byte)
//   energy  pJ
//   power   uW
//   area    1e-6 mm^2

struct StageCost {
    int64_t latency_ns = 0;
    int64_t energy_pj = 0;
    uint32_t units = 1;
};

struct Component {
    std::string name;
    std::string module; // summary group, e.g. "basecalling"
    std::string spec;
    int64_t power_uw = 0;
    int64_t area_umm2 = 0; // 1e-6 mm^2
};

struct CostModel {
    std::array<StageCost, kNumStages> stages{};
    int64_t align_ps_per_base = 0;
    int64_t align_pj_per_base = 0;
    int64_t xfer_ps_per_byte = 0;
    int64_t xfer_pj_per_byte = 0;
    /// Raw signal size relative to basecalled data (2 bytes per base).
    double raw_signal_inflation = 10.0;
    uint64_t read_queue_bytes = 6'000'000;
    uint64_t chunk_buffer_bases = 2'300'000;
    /// Decimal places used for reported module subtotals.
    int summary_decimals = 1;
    std::vector<Component> components;

    StageCost& stage(Stage s) { return stages[static_cast<size_t>(s)]; }
    const StageCost& stage(Stage s) const { return stages[static_cast<size_t>(s)]; }

    void validate() const;
};

struct CostLoadOptions {
    /// Reject keys the schema does not know.
    bool strict = true;
};

CostModel parse_cost_config(const std::string& json_text, const CostLoadOptions& opts = {});
CostModel load_cost_config(const std::filesystem::path& path, const CostLoadOptions& opts = {});
/// Shipped default (also in config/cost_default.json).
CostModel default_cost_model();
const std::string& default_cost_config_text();

/// Energy of a run in pJ: stage jobs times per-job energy, plus per-base
/// alignment energy; decoupled runs add the transfer term.
int64_t energy_total_pj(const WorkCounts& work, const CostModel& cost, Mode mode);
double energy_total_joules(const WorkCounts& work, const CostModel& cost, Mode mode);

/// Minimal view of a run needed for normalization.
struct RunSummary {
    uint64_t num_reads = 0;
    int64_t makespan_ns = 0;
    int64_t energy_pj = 0;
    uint64_t chunks_basecalled = 0;
};

struct ComparisonReport {
    double speedup = 1.0;        // makespan_a / makespan_b
    double energy_savings = 1.0; // energy_a / energy_b
    double work_reduction = 1.0; // chunks_a / chunks_b
};

/// Ratios of a over b. 0/0 is 1; x/0 with x > 0 throws.
ComparisonReport compare(const RunSummary& a, const RunSummary& b);

struct ModuleSubtotal {
    std::string module;
    std::vector<Component> components;
    int64_t power_uw = 0; // exact sum of components
    int64_t area_umm2 = 0;
    int64_t reported_power_uw = 0; // rounded to summary_decimals
    int64_t reported_area_umm2 = 0;
};

struct AreaPowerSummary {
    std::vector<ModuleSubtotal> modules; // order of first appearance
    int64_t exact_power_uw = 0;
    int64_t exact_area_umm2 = 0;
    /// Sum of reported subtotals.
    int64_t total_power_uw = 0;
    int64_t total_area_umm2 = 0;
    int decimals = 1;
};

AreaPowerSummary area_power_summary(const CostModel& cost);
std::string format_area_power_table(const AreaPowerSummary& summary);

/// Fixed-point helpers; `scale` is the number of units per whole (e.g. 1e6).
int64_t to_fixed(double value, int64_t scale);
std::string format_fixed(int64_t value, int64_t scale, int decimals);

} // namespace genpip
