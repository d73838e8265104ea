#include "genpip/costmodel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "genpip/error.hpp"

namespace genpip {

namespace {

using nlohmann::json;

constexpr int kCostSchema = 1;
constexpr int64_t kMicro = 1'000'000;
constexpr int64_t kMilli = 1'000;

void check_keys(const json& obj, const std::set<std::string>& known, const std::string& where,
                const CostLoadOptions& opts) {
    if (!obj.is_object()) {
        throw ConfigError(where + " must be an object");
    }
    if (!opts.strict) {
        return;
    }
    for (const auto& [key, _] : obj.items()) {
        if (!known.count(key)) {
            throw ConfigError("unknown key " + where + "." + key);
        }
    }
}

double number_at(const json& obj, const std::string& key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(where + "." + key + " must be a number");
    }
    double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw ConfigError(where + "." + key + " must be finite");
    }
    if (x < 0) {
        throw ConfigError("negative value for " + where + "." + key);
    }
    return x;
}

double number_or(const json& obj, const std::string& key, const std::string& where, double fallback) {
    return obj.contains(key) ? number_at(obj, key, where) : fallback;
}

StageCost parse_stage_cost(const json& obj, const std::string& where, const CostLoadOptions& opts) {
    check_keys(obj, {"latency_ns", "energy_nj", "units"}, where, opts);
    if (!obj.contains("latency_ns")) {
        throw ConfigError(where + ".latency_ns is required");
    }
    StageCost s;
    s.latency_ns = std::llround(number_at(obj, "latency_ns", where));
    s.energy_pj = to_fixed(number_or(obj, "energy_nj", where, 0.0), kMilli);
    double units = number_or(obj, "units", where, 1.0);
    if (units < 1 || units != std::floor(units)) {
        throw ConfigError(where + ".units must be a positive integer");
    }
    s.units = static_cast<uint32_t>(units);
    return s;
}

} // namespace

int64_t to_fixed(double value, int64_t scale) {
    return std::llround(value * static_cast<double>(scale));
}

std::string format_fixed(int64_t value, int64_t scale, int decimals) {
    int64_t step = scale;
    for (int i = 0; i < decimals; ++i) {
        step /= 10;
    }
    if (step < 1) {
        step = 1;
    }
    const bool neg = value < 0;
    int64_t v = neg ? -value : value;
    v = (v + step / 2) / step; // round half up in magnitude
    int64_t denom = scale / step;
    std::ostringstream os;
    if (neg && v != 0) {
        os << '-';
    }
    os << v / denom;
    if (decimals > 0) {
        os << '.' << std::setw(decimals) << std::setfill('0') << v % denom;
    }
    return os.str();
}

void CostModel::validate() const {
    for (Stage s : kAllStages) {
        const StageCost& c = stage(s);
        if (c.latency_ns < 0 || c.energy_pj < 0) {
            throw ConfigError("negative cost for stage " + std::string(stage_name(s)));
        }
        if (c.units < 1) {
            throw ConfigError("stage " + std::string(stage_name(s)) + " needs at least one unit");
        }
    }
    if (align_ps_per_base < 0 || align_pj_per_base < 0 || xfer_ps_per_byte < 0 || xfer_pj_per_byte < 0) {
        throw ConfigError("negative per-base or per-byte cost");
    }
    if (!(raw_signal_inflation >= 1)) {
        throw ConfigError("raw_signal_inflation must be at least 1");
    }
    if (summary_decimals < 0 || summary_decimals > 6) {
        throw ConfigError("summary_decimals must lie in [0, 6]");
    }
}

CostModel parse_cost_config(const std::string& text, const CostLoadOptions& opts) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("cost config is not valid JSON: ") + e.what());
    }
    check_keys(root,
               {"cost_schema", "stages", "align", "xfer", "raw_signal_inflation", "buffers",
                "summary_decimals", "components"},
               "cost", opts);
    if (!root.contains("cost_schema") || root["cost_schema"] != kCostSchema) {
        throw ConfigError("unsupported or missing cost_schema (expected 1)");
    }
    CostModel c;
    if (!root.contains("stages")) {
        throw ConfigError("cost config has no stages");
    }
    const json& stages = root["stages"];
    check_keys(stages, {"BC", "CQS", "XFER", "SEED", "CHAIN", "ALIGN"}, "stages", opts);
    for (Stage s : kAllStages) {
        const std::string name(stage_name(s));
        if (!stages.contains(name)) {
            if (s == Stage::xfer) {
                continue; // only used by decoupled runs
            }
            throw ConfigError("missing stage " + name);
        }
        c.stage(s) = parse_stage_cost(stages[name], "stages." + name, opts);
    }
    if (root.contains("align")) {
        const json& a = root["align"];
        check_keys(a, {"ns_per_base", "nj_per_base"}, "align", opts);
        c.align_ps_per_base = to_fixed(number_or(a, "ns_per_base", "align", 0.0), kMilli);
        c.align_pj_per_base = to_fixed(number_or(a, "nj_per_base", "align", 0.0), kMilli);
    }
    if (root.contains("xfer")) {
        const json& x = root["xfer"];
        check_keys(x, {"ns_per_byte", "nj_per_byte"}, "xfer", opts);
        c.xfer_ps_per_byte = to_fixed(number_or(x, "ns_per_byte", "xfer", 0.0), kMilli);
        c.xfer_pj_per_byte = to_fixed(number_or(x, "nj_per_byte", "xfer", 0.0), kMilli);
    }
    c.raw_signal_inflation = number_or(root, "raw_signal_inflation", "cost", 10.0);
    if (root.contains("buffers")) {
        const json& b = root["buffers"];
        check_keys(b, {"read_queue_bytes", "chunk_buffer_bases"}, "buffers", opts);
        c.read_queue_bytes = static_cast<uint64_t>(
            std::llround(number_or(b, "read_queue_bytes", "buffers", 6'000'000)));
        c.chunk_buffer_bases = static_cast<uint64_t>(
            std::llround(number_or(b, "chunk_buffer_bases", "buffers", 2'300'000)));
    }
    c.summary_decimals = static_cast<int>(number_or(root, "summary_decimals", "cost", 1));
    if (root.contains("components")) {
        const json& comps = root["components"];
        if (!comps.is_array()) {
            throw ConfigError("components must be an array");
        }
        for (size_t i = 0; i < comps.size(); ++i) {
            const json& j = comps[i];
            const std::string where = "components[" + std::to_string(i) + "]";
            check_keys(j, {"name", "module", "spec", "power_w", "area_mm2"}, where, opts);
            Component comp;
            comp.name = j.value("name", "");
            comp.module = j.value("module", "");
            comp.spec = j.value("spec", "");
            comp.power_uw = to_fixed(number_or(j, "power_w", where, 0.0), kMicro);
            comp.area_umm2 = to_fixed(number_or(j, "area_mm2", where, 0.0), kMicro);
            c.components.push_back(std::move(comp));
        }
    }
    c.validate();
    return c;
}

CostModel load_cost_config(const std::filesystem::path& path, const CostLoadOptions& opts) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open cost config " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_cost_config(ss.str(), opts);
}

int64_t energy_total_pj(const WorkCounts& w, const CostModel& c, Mode mode) {
    auto per_job = [&](Stage s, uint64_t count) {
        return static_cast<int64_t>(count) * c.stage(s).energy_pj;
    };
    int64_t total = per_job(Stage::bc, w.chunks_basecalled) + per_job(Stage::cqs, w.chunks_cqs) +
                    per_job(Stage::seed, w.chunks_seeded) + per_job(Stage::chain, w.chunks_chained) +
                    per_job(Stage::align, w.reads_aligned) +
                    static_cast<int64_t>(w.aligned_bases) * c.align_pj_per_base;
    if (mode == Mode::decoupled) {
        total += per_job(Stage::xfer, w.reads_transferred) +
                 static_cast<int64_t>(w.bytes_transferred) * c.xfer_pj_per_byte;
    }
    return total;
}

double energy_total_joules(const WorkCounts& w, const CostModel& c, Mode mode) {
    return static_cast<double>(energy_total_pj(w, c, mode)) * 1e-12;
}

namespace {

double ratio(double a, double b, const char* what) {
    if (b == 0) {
        if (a == 0) {
            return 1.0;
        }
        throw Error(std::string("compare: zero ") + what + " in the second report");
    }
    return a / b;
}

} // namespace

ComparisonReport compare(const RunSummary& a, const RunSummary& b) {
    if (a.num_reads != b.num_reads) {
        throw Error("compare: reports cover different datasets (" + std::to_string(a.num_reads) +
                    " vs " + std::to_string(b.num_reads) + " reads)");
    }
    ComparisonReport r;
    r.speedup = ratio(static_cast<double>(a.makespan_ns), static_cast<double>(b.makespan_ns), "makespan");
    r.energy_savings = ratio(static_cast<double>(a.energy_pj), static_cast<double>(b.energy_pj), "energy");
    r.work_reduction = ratio(static_cast<double>(a.chunks_basecalled),
                             static_cast<double>(b.chunks_basecalled), "chunk count");
    return r;
}

AreaPowerSummary area_power_summary(const CostModel& c) {
    if (c.components.empty()) {
        throw ConfigError("area/power summary needs at least one component");
    }
    AreaPowerSummary s;
    s.decimals = c.summary_decimals;
    int64_t step = kMicro;
    for (int i = 0; i < c.summary_decimals; ++i) {
        step /= 10;
    }
    auto round_to_step = [step](int64_t v) { return (v + step / 2) / step * step; };

    for (const Component& comp : c.components) {
        if (comp.module.empty()) {
            throw ConfigError("component " + comp.name + " has no module tag");
        }
        auto it = std::find_if(s.modules.begin(), s.modules.end(),
                               [&](const ModuleSubtotal& m) { return m.module == comp.module; });
        if (it == s.modules.end()) {
            s.modules.push_back(ModuleSubtotal{comp.module, {}, 0, 0, 0, 0});
            it = std::prev(s.modules.end());
        }
        it->components.push_back(comp);
        it->power_uw += comp.power_uw;
        it->area_umm2 += comp.area_umm2;
    }
    for (ModuleSubtotal& m : s.modules) {
        m.reported_power_uw = round_to_step(m.power_uw);
        m.reported_area_umm2 = round_to_step(m.area_umm2);
        s.exact_power_uw += m.power_uw;
        s.exact_area_umm2 += m.area_umm2;
        s.total_power_uw += m.reported_power_uw;
        s.total_area_umm2 += m.reported_area_umm2;
    }
    return s;
}

std::string format_area_power_table(const AreaPowerSummary& s) {
    std::ostringstream os;
    auto row = [&os](const std::string& a, const std::string& b, const std::string& c) {
        os << std::left << std::setw(28) << a << std::right << std::setw(12) << b << std::setw(14) << c
           << '\n';
    };
    auto w = [](int64_t uw) { return format_fixed(uw, kMicro, 4); };
    row("Component", "Power W", "Area mm^2");
    for (const ModuleSubtotal& m : s.modules) {
        for (const Component& comp : m.components) {
            row("  " + comp.name, w(comp.power_uw), w(comp.area_umm2));
        }
        row(m.module + " total", format_fixed(m.reported_power_uw, kMicro, s.decimals),
            format_fixed(m.reported_area_umm2, kMicro, s.decimals));
    }
    row("Total", format_fixed(s.total_power_uw, kMicro, s.decimals),
        format_fixed(s.total_area_umm2, kMicro, s.decimals));
    return os.str();
}

} // namespace genpip
