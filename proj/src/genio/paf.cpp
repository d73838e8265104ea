#include "genpip/paf.hpp"

#include <fstream>
#include <ostream>

#include "genpip/error.hpp"

namespace genpip {

void write_paf(std::ostream& out, std::span<const MappingResult> results, std::span<const RefMeta> refs) {
    for (const MappingResult& r : results) {
        out << r.read_id << '\t' << r.read_len << '\t';
        if (r.status == ReadStatus::mapped && r.region) {
            const MappedRegion& reg = *r.region;
            if (reg.ref_id >= refs.size()) {
                throw Error("PAF: result for " + r.read_id + " names an unknown reference");
            }
            const RefMeta& ref = refs[reg.ref_id];
            out << r.read_start << '\t' << r.read_end << '\t' << strand_char(reg.strand) << '\t'
                << ref.name << '\t' << ref.length << '\t' << reg.start << '\t' << reg.end << '\t'
                << r.matches << '\t' << r.block_len << "\t255\tAS:i:" << r.alignment_score.value_or(0)
                << '\t';
        } else {
            out << "0\t0\t*\t*\t0\t0\t0\t0\t0\t255\t";
        }
        out << "st:Z:" << status_name(r.status) << '\n';
    }
    if (!out) {
        throw IoError("failed writing PAF output");
    }
}

void write_paf(const std::filesystem::path& path, std::span<const MappingResult> results,
               std::span<const RefMeta> refs) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    write_paf(out, results, refs);
}

} // namespace genpip
