#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "genpip/genio.hpp"
#include "genpip/refindex.hpp"

namespace genpip {

struct ChainParams {
    double match_weight = 15.0;
    /// Penalty per base of diagonal deviation between consecutive anchors.
    double gap_coef = 0.1;
    uint32_t max_gap = 5000;
    uint32_t min_chain_anchors = 3;
    /// Seed length, used for chain spans.
    uint32_t seed_len = 15;

    void validate() const;
};

/// Colinear anchor chain on one (strand, ref_id). On the reverse strand the
/// read positions decrease while reference positions increase.
struct Chain {
    std::vector<Anchor> anchors;
    double score = 0;
    Strand strand = Strand::forward;
    uint32_t ref_id = 0;
    uint32_t ref_start = 0; // [ref_start, ref_end)
    uint32_t ref_end = 0;
    uint32_t read_start = 0; // forward-read coordinates
    uint32_t read_end = 0;
    uint32_t seed_len = 0;
};

/// DP chaining. For each anchor i,
///   f(i) = max(w, max_j f(j) + min(w, dread, dref) - gap_coef * |dref - dread|)
/// over predecessors j with 0 < dread <= G and 0 < dref <= G. Chains are
/// backtracked from the highest f without reusing anchors and returned best
/// first. Input order does not matter.
std::vector<Chain> chain(std::span<const Anchor> anchors, const ChainParams& params);

/// Exhaustive reference scorer: best score over every admissible anchor
/// subsequence (min_chain_anchors is ignored). Limited to 14 anchors.
double chain_bruteforce(std::span<const Anchor> anchors, const ChainParams& params);

inline constexpr size_t kBruteforceMaxAnchors = 14;

struct ChunkAnchors {
    std::string read_id;
    uint32_t chunk_index = 0;
    std::vector<Anchor> anchors;
};

/// Concatenates per-chunk anchors of one read in canonical anchor order.
/// Throws when the chunks come from different reads.
std::vector<Anchor> merge_chunk_anchors(std::span<const ChunkAnchors> chunks);

struct CmrDecision {
    bool reject = false;
    double per_base_score = 0;
};

/// Chunk-mapping rejection: reject when score / bases < theta_cm.
CmrDecision cmr_decide(double large_chunk_chain_score, uint64_t bases_so_far, double theta_cm);

enum class GateOutcome { pass, stop };

/// Read-level chaining gate, same normalization and strict comparison as
/// cmr_decide.
GateOutcome read_gate(double read_chain_best, uint64_t read_len, double theta_cm);

struct AlignParams {
    int match = 2;
    int mismatch = -4;
    int gap_open = -4;
    int gap_extend = -2;
    uint32_t band = 500;
    uint32_t flank = 100;

    void validate() const;
};

struct AlignmentResult {
    int score = 0;
    uint32_t read_start = 0; // [read_start, read_end) in the aligned orientation
    uint32_t read_end = 0;
    uint32_t ref_start = 0; // [ref_start, ref_end)
    uint32_t ref_end = 0;
    uint32_t matches = 0;
    uint32_t block_len = 0;
};

/// Diagonal band: target index ~= query index + diagonal, within half_width.
struct Band {
    int64_t diagonal = 0;
    uint32_t half_width = 0;
};

/// Local affine-gap alignment (gap of length L costs gap_open + L*gap_extend).
/// Coordinates of the result are relative to `query` and `target`. Score 0
/// (and empty extents) when no cell is positive.
AlignmentResult smith_waterman(std::string_view query, std::string_view target,
                               const AlignParams& params, std::optional<Band> band = std::nullopt);

/// Aligns the read (reverse-complemented for reverse-strand chains) to the
/// chain's reference span widened by the unanchored read ends and the flank.
/// Reference coordinates in the result are absolute.
AlignmentResult align(const Read& read, const Chain& chain, const Reference& ref,
                      const AlignParams& params);

enum class ReadStatus : uint8_t { rej_qsr, rej_cmr, qc_fail, unmapped, mapped };

/// PAF tag spelling, e.g. "REJ_QSR".
std::string_view status_name(ReadStatus s);

struct MappedRegion {
    uint32_t ref_id = 0;
    uint32_t start = 0;
    uint32_t end = 0;
    Strand strand = Strand::forward;

    friend bool operator==(const MappedRegion&, const MappedRegion&) = default;
};

struct MappingResult {
    std::string read_id;
    uint32_t read_len = 0;
    ReadStatus status = ReadStatus::unmapped;
    double best_chain_score = 0;
    std::optional<int> alignment_score; // present iff mapped
    std::optional<MappedRegion> region;  // present iff mapped
    /// Aligned query interval in forward-read coordinates.
    uint32_t read_start = 0;
    uint32_t read_end = 0;
    uint32_t matches = 0;
    uint32_t block_len = 0;
};

} // namespace genpip
