#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "genpip/chunkqc.hpp"
#include "genpip/genio.hpp"

namespace genpip {

enum class Strand : uint8_t { forward = 0, reverse = 1 };

inline char strand_char(Strand s) { return s == Strand::forward ? '+' : '-'; }
inline Strand operator^(Strand a, Strand b) {
    return static_cast<Strand>(static_cast<uint8_t>(a) ^ static_cast<uint8_t>(b));
}

struct IndexParams {
    int k = 15;
    int w = 10;
    bool canonical = true;

    void validate() const;
    friend bool operator==(const IndexParams&, const IndexParams&) = default;
};

struct Minimizer {
    uint64_t code = 0;
    uint32_t pos = 0;
    /// Orientation in which the stored code was read: reverse means the
    /// reverse complement of seq[pos, pos+k) gave the smaller code.
    Strand strand = Strand::forward;

    friend bool operator==(const Minimizer&, const Minimizer&) = default;
};

/// (w,k)-minimizers of `seq`, ordered by position. Windows of w consecutive
/// k-mers each contribute their smallest code (leftmost on ties); repeats
/// of the same (code, pos) are emitted once. Returns an empty list when the
/// sequence is shorter than k + w - 1.
std::vector<Minimizer> minimizers(std::string_view seq, const IndexParams& params);

struct Location {
    uint32_t ref_id = 0;
    uint32_t pos = 0;
    Strand strand = Strand::forward;

    friend bool operator==(const Location&, const Location&) = default;
};

struct RefMeta {
    std::string name;
    uint64_t length = 0;

    friend bool operator==(const RefMeta&, const RefMeta&) = default;
};

/// Minimizer code -> reference locations. Immutable once built; lookups are
/// safe from any number of threads.
class MinimizerIndex {
public:
    MinimizerIndex() = default;

    const IndexParams& params() const { return params_; }
    const std::vector<RefMeta>& refs() const { return refs_; }

    /// Locations sorted by (ref_id, pos); empty when the code is absent.
    std::span<const Location> lookup(uint64_t code) const;

    size_t num_codes() const { return codes_.size(); }
    size_t num_locations() const { return locations_.size(); }
    double load_factor() const { return slot_of_.load_factor(); }

    /// Codes in ascending order, parallel to slot ranges.
    const std::vector<uint64_t>& codes() const { return codes_; }

    friend bool operator==(const MinimizerIndex& a, const MinimizerIndex& b);

private:
    friend MinimizerIndex build_index(std::span<const Reference>, const IndexParams&);
    friend MinimizerIndex read_index(std::istream&);

    void finalize_lookup();

    IndexParams params_;
    std::vector<RefMeta> refs_;
    std::vector<uint64_t> codes_;
    std::vector<uint32_t> offsets_; // codes_.size() + 1 entries into locations_
    std::vector<Location> locations_;
    std::unordered_map<uint64_t, uint32_t> slot_of_;
};

MinimizerIndex build_index(std::span<const Reference> refs, const IndexParams& params);

/// Binary layout documented in docs/index_format.md.
void write_index(std::ostream& out, const MinimizerIndex& index);
MinimizerIndex read_index(std::istream& in);
void save_index(const std::filesystem::path& path, const MinimizerIndex& index);
MinimizerIndex load_index(const std::filesystem::path& path);

struct Anchor {
    uint32_t read_pos = 0; // offset within the read (chunk offset + in-chunk position)
    uint32_t ref_id = 0;
    uint32_t ref_pos = 0;
    Strand strand = Strand::forward;

    friend bool operator==(const Anchor&, const Anchor&) = default;
};

/// Canonical anchor order: (strand, ref_id, ref_pos, read_pos).
bool anchor_less(const Anchor& a, const Anchor& b);
void sort_anchors(std::vector<Anchor>& anchors);

struct SeedConfig {
    IndexParams params;
    /// Minimizers with more reference hits than this are skipped as repeats.
    uint32_t max_occ = 500;
};

/// Seeds one chunk against the index. Throws ConfigError when the index was
/// built with different parameters than `cfg.params`.
std::vector<Anchor> seed_chunk(const Chunk& chunk, const MinimizerIndex& index, const SeedConfig& cfg);

} // namespace genpip
