#include "genpip/refindex.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "genpip/error.hpp"

namespace genpip {

namespace {

constexpr std::array<char, 6> kMagic = {'G', 'P', 'I', 'D', 'X', '1'};
constexpr uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr uint64_t kFnvPrime = 1099511628211ULL;

class ChecksumWriter {
public:
    explicit ChecksumWriter(std::ostream& out) : out_(out) {}

    void bytes(const void* data, size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (size_t i = 0; i < n; ++i) {
            hash_ = (hash_ ^ p[i]) * kFnvPrime;
        }
        out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
    }
    template <typename T>
    void le(T v) {
        unsigned char buf[sizeof(T)];
        for (size_t i = 0; i < sizeof(T); ++i) {
            buf[i] = static_cast<unsigned char>((static_cast<uint64_t>(v) >> (8 * i)) & 0xffu);
        }
        bytes(buf, sizeof(T));
    }
    uint64_t hash() const { return hash_; }

private:
    std::ostream& out_;
    uint64_t hash_ = kFnvOffset;
};

class ChecksumReader {
public:
    explicit ChecksumReader(std::istream& in) : in_(in) {}

    void bytes(void* data, size_t n) {
        if (!in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n))) {
            throw FormatError("truncated index file");
        }
        const auto* p = static_cast<const unsigned char*>(data);
        for (size_t i = 0; i < n; ++i) {
            hash_ = (hash_ ^ p[i]) * kFnvPrime;
        }
    }
    template <typename T>
    T le() {
        unsigned char buf[sizeof(T)];
        bytes(buf, sizeof(T));
        uint64_t v = 0;
        for (size_t i = 0; i < sizeof(T); ++i) {
            v |= static_cast<uint64_t>(buf[i]) << (8 * i);
        }
        return static_cast<T>(v);
    }
    uint64_t hash() const { return hash_; }

private:
    std::istream& in_;
    uint64_t hash_ = kFnvOffset;
};

} // namespace

void write_index(std::ostream& out, const MinimizerIndex& index) {
    ChecksumWriter w(out);
    w.bytes(kMagic.data(), kMagic.size());
    const IndexParams& p = index.params();
    w.le<uint32_t>(static_cast<uint32_t>(p.k));
    w.le<uint32_t>(static_cast<uint32_t>(p.w));
    w.le<uint8_t>(p.canonical ? 1 : 0);
    w.le<uint32_t>(static_cast<uint32_t>(index.refs().size()));
    for (const RefMeta& m : index.refs()) {
        w.le<uint32_t>(static_cast<uint32_t>(m.name.size()));
        w.bytes(m.name.data(), m.name.size());
        w.le<uint64_t>(m.length);
    }
    w.le<uint64_t>(index.codes().size());
    for (uint64_t code : index.codes()) {
        auto locs = index.lookup(code);
        w.le<uint64_t>(code);
        w.le<uint32_t>(static_cast<uint32_t>(locs.size()));
        for (const Location& l : locs) {
            w.le<uint32_t>(l.ref_id);
            w.le<uint32_t>(l.pos);
            w.le<uint8_t>(static_cast<uint8_t>(l.strand));
        }
    }
    const uint64_t sum = w.hash();
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) {
        buf[i] = static_cast<unsigned char>((sum >> (8 * i)) & 0xffu);
    }
    out.write(reinterpret_cast<const char*>(buf), 8);
    if (!out) {
        throw IoError("failed to write index");
    }
}

MinimizerIndex read_index(std::istream& in) {
    ChecksumReader r(in);
    std::array<char, 6> magic{};
    try {
        r.bytes(magic.data(), magic.size());
    } catch (const FormatError&) {
        throw FormatError("not a genpip index");
    }
    if (magic != kMagic) {
        if (std::memcmp(magic.data(), kMagic.data(), 5) == 0) {
            throw FormatError("unsupported genpip index version '" + std::string(1, magic[5]) + "'");
        }
        throw FormatError("not a genpip index");
    }
    MinimizerIndex idx;
    idx.params_.k = static_cast<int>(r.le<uint32_t>());
    idx.params_.w = static_cast<int>(r.le<uint32_t>());
    idx.params_.canonical = r.le<uint8_t>() != 0;
    try {
        idx.params_.validate();
    } catch (const ConfigError& e) {
        throw FormatError(std::string("corrupt index parameters: ") + e.what());
    }
    const uint32_t n_refs = r.le<uint32_t>();
    for (uint32_t i = 0; i < n_refs; ++i) {
        const uint32_t len = r.le<uint32_t>();
        if (len > (1u << 20)) {
            throw FormatError("corrupt index: reference name too long");
        }
        std::string name(len, '\0');
        r.bytes(name.data(), len);
        idx.refs_.push_back(RefMeta{std::move(name), r.le<uint64_t>()});
    }
    const uint64_t n_codes = r.le<uint64_t>();
    for (uint64_t i = 0; i < n_codes; ++i) {
        const uint64_t code = r.le<uint64_t>();
        if (!idx.codes_.empty() && code <= idx.codes_.back()) {
            throw FormatError("corrupt index: codes out of order");
        }
        idx.codes_.push_back(code);
        idx.offsets_.push_back(static_cast<uint32_t>(idx.locations_.size()));
        const uint32_t count = r.le<uint32_t>();
        for (uint32_t j = 0; j < count; ++j) {
            Location l;
            l.ref_id = r.le<uint32_t>();
            l.pos = r.le<uint32_t>();
            l.strand = r.le<uint8_t>() ? Strand::reverse : Strand::forward;
            if (l.ref_id >= n_refs) {
                throw FormatError("corrupt index: location references unknown sequence");
            }
            idx.locations_.push_back(l);
        }
    }
    idx.offsets_.push_back(static_cast<uint32_t>(idx.locations_.size()));
    const uint64_t expected = r.hash();
    unsigned char buf[8];
    if (!in.read(reinterpret_cast<char*>(buf), 8)) {
        throw FormatError("truncated index file (missing checksum)");
    }
    uint64_t stored = 0;
    for (int i = 0; i < 8; ++i) {
        stored |= static_cast<uint64_t>(buf[i]) << (8 * i);
    }
    if (stored != expected) {
        throw FormatError("index checksum mismatch");
    }
    idx.finalize_lookup();
    return idx;
}

void save_index(const std::filesystem::path& path, const MinimizerIndex& index) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write index " + path.string());
    }
    write_index(out, index);
}

MinimizerIndex load_index(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open index " + path.string());
    }
    return read_index(in);
}

} // namespace genpip
