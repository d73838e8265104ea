#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>

#include "genpip/mapdp.hpp"
#include "genpip/refindex.hpp"

namespace genpip {

/// One tab-separated line per result. Mapped reads carry the twelve PAF
/// columns plus AS:i and st:Z tags; every other status writes '*' for the
/// strand and target fields and only the st:Z tag.
void write_paf(std::ostream& out, std::span<const MappingResult> results, std::span<const RefMeta> refs);
void write_paf(const std::filesystem::path& path, std::span<const MappingResult> results,
               std::span<const RefMeta> refs);

} // namespace genpip
