#include <algorithm>
#include <queue>
#include <tuple>

#include "genpip/error.hpp"
#include "genpip/pipeline.hpp"

namespace genpip {

int64_t service_time_ns(const StageJob& job, const CostModel& cost) {
    const int64_t latency = cost.stage(job.stage).latency_ns;
    auto scaled = [&](int64_t ps_per_unit) {
        return (ps_per_unit * static_cast<int64_t>(job.work) + 500) / 1000;
    };
    switch (job.stage) {
    case Stage::align: return latency + scaled(cost.align_ps_per_base);
    case Stage::xfer: return latency + scaled(cost.xfer_ps_per_byte);
    default: return latency;
    }
}

namespace {

struct Resource {
    uint32_t servers = 1;
    uint32_t busy = 0;
    // (ready time, read, job within read, global id)
    using Key = std::tuple<int64_t, uint32_t, uint32_t, size_t>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
};

std::array<size_t, kNumStages> resource_map(Mode mode, const CostModel& cost, std::vector<Resource>& res) {
    std::array<size_t, kNumStages> map{};
    auto add = [&](uint32_t servers) {
        res.emplace_back();
        res.back().servers = servers;
        return res.size() - 1;
    };
    switch (mode) {
    case Mode::sequential: {
        const size_t only = add(1);
        map.fill(only);
        break;
    }
    case Mode::decoupled: {
        const size_t mapper = add(1);
        map.fill(mapper);
        map[static_cast<size_t>(Stage::bc)] = add(cost.stage(Stage::bc).units);
        map[static_cast<size_t>(Stage::xfer)] = add(cost.stage(Stage::xfer).units);
        break;
    }
    case Mode::cp:
    case Mode::cp_er:
        for (Stage s : kAllStages) {
            map[static_cast<size_t>(s)] = add(cost.stage(s).units);
        }
        break;
    }
    return map;
}

void check_buffers(std::span<const std::vector<StageJob>> jobs, const CostModel& cost, Mode mode,
                   bool chunk_buffer) {
    for (size_t r = 0; r < jobs.size(); ++r) {
        uint64_t bases = 0;
        for (const StageJob& j : jobs[r]) {
            if (j.stage == Stage::bc) {
                bases += j.work;
            }
        }
        const double raw_bytes = static_cast<double>(bases) * 2.0 * cost.raw_signal_inflation;
        if (raw_bytes > static_cast<double>(cost.read_queue_bytes)) {
            throw Error("read " + std::to_string(r) + " overflows the read queue (" +
                        std::to_string(static_cast<uint64_t>(raw_bytes)) + " bytes)");
        }
        if (chunk_buffer && (mode == Mode::cp || mode == Mode::cp_er) && bases > cost.chunk_buffer_bases) {
            throw Error("read " + std::to_string(r) + " overflows the chunk buffer (" + std::to_string(bases) +
                        " bases)");
        }
    }
}

} // namespace

TimingResult simulate_timing(std::span<const std::vector<StageJob>> jobs, const CostModel& cost, Mode mode,
                             const TimingOptions& opts) {
    const bool stalls = opts.model_buffer_stalls && (mode == Mode::cp || mode == Mode::cp_er);
    check_buffers(jobs, cost, mode, !stalls);

    std::vector<Resource> res;
    const std::array<size_t, kNumStages> where = resource_map(mode, cost, res);

    // Flatten to global ids.
    std::vector<size_t> base(jobs.size() + 1, 0);
    for (size_t r = 0; r < jobs.size(); ++r) {
        base[r + 1] = base[r] + jobs[r].size();
    }
    const size_t total = base.back();
    std::vector<const StageJob*> job(total);
    std::vector<uint32_t> read_of(total), local(total), pending(total);
    std::vector<int64_t> service(total);
    std::vector<std::vector<size_t>> dependents(total);
    std::vector<uint64_t> release(total, 0); // chunk bases freed when this job ends
    for (size_t r = 0; r < jobs.size(); ++r) {
        std::vector<int64_t> last_of_chunk;
        for (size_t l = 0; l < jobs[r].size(); ++l) {
            const size_t g = base[r] + l;
            const StageJob& j = jobs[r][l];
            job[g] = &j;
            read_of[g] = static_cast<uint32_t>(r);
            local[g] = static_cast<uint32_t>(l);
            service[g] = service_time_ns(j, cost);
            pending[g] = static_cast<uint32_t>(j.deps.size());
            for (uint32_t d : j.deps) {
                if (d >= l) {
                    throw Error("job dependency does not point backwards");
                }
                dependents[base[r] + d].push_back(g);
            }
            if (j.chunk >= 0) {
                if (last_of_chunk.size() <= static_cast<size_t>(j.chunk)) {
                    last_of_chunk.resize(j.chunk + 1, -1);
                }
                last_of_chunk[j.chunk] = static_cast<int64_t>(l);
            }
        }
        if (stalls) {
            for (size_t l = 0; l < jobs[r].size(); ++l) {
                const StageJob& j = jobs[r][l];
                if (j.stage == Stage::bc) {
                    release[base[r] + last_of_chunk[j.chunk]] += j.work;
                }
            }
        }
    }

    TimingResult out;
    for (Stage s : kAllStages) {
        out.stages[static_cast<size_t>(s)].servers = res[where[static_cast<size_t>(s)]].servers;
    }
    auto make_ready = [&](size_t g, int64_t t) {
        res[where[static_cast<size_t>(job[g]->stage)]].ready.emplace(t, read_of[g], local[g], g);
    };
    for (size_t g = 0; g < total; ++g) {
        if (pending[g] == 0) {
            make_ready(g, 0);
        }
    }

    const size_t bc_res = where[static_cast<size_t>(Stage::bc)];
    uint64_t buffered = 0;
    using Event = std::pair<int64_t, size_t>; // (finish time, global id)
    std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
    size_t finished = 0;
    int64_t now = 0;

    auto dispatch = [&] {
        for (size_t ri = 0; ri < res.size(); ++ri) {
            Resource& rs = res[ri];
            while (rs.busy < rs.servers && !rs.ready.empty()) {
                const size_t g = std::get<3>(rs.ready.top());
                const StageJob& j = *job[g];
                const bool holds = stalls && ri == bc_res && j.stage == Stage::bc;
                if (holds && buffered > 0 && buffered + j.work > cost.chunk_buffer_bases) {
                    break;
                }
                rs.ready.pop();
                if (holds) {
                    buffered += j.work;
                }
                ++rs.busy;
                events.emplace(now + service[g], g);
                StageTiming& st = out.stages[static_cast<size_t>(j.stage)];
                ++st.jobs;
                st.busy_ns += service[g];
                if (opts.record_events) {
                    out.events.push_back(TimingEvent{now, now + service[g], j.stage, read_of[g], local[g]});
                }
            }
        }
    };

    dispatch();
    while (!events.empty()) {
        now = events.top().first;
        while (!events.empty() && events.top().first == now) {
            const size_t g = events.top().second;
            events.pop();
            ++finished;
            --res[where[static_cast<size_t>(job[g]->stage)]].busy;
            buffered -= release[g];
            for (size_t d : dependents[g]) {
                if (--pending[d] == 0) {
                    make_ready(d, now);
                }
            }
        }
        dispatch();
    }
    if (finished != total) {
        throw Error("timing simulation stalled with unfinished jobs");
    }
    out.makespan_ns = now;
    for (StageTiming& st : out.stages) {
        st.utilization = out.makespan_ns == 0
                             ? 0.0
                             : static_cast<double>(st.busy_ns) /
                                   (static_cast<double>(out.makespan_ns) * static_cast<double>(st.servers));
    }
    return out;
}

} // namespace genpip
