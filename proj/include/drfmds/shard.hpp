#pragma once

// On-disk shard format. Every shard of an encoding starts with the same
// 64-byte header (differing only in the node index):
//
//   offset  size  field
//   0       4     magic "DRF1"
//   4       1     format version (1)
//   5       1     field id length L (<= 16)
//   6       16    field id characters, zero padded
//   22      1     family byte (1 = c1, 2 = c2, 3 = c2gen)
//   23      2     n
//   25      2     k
//   27      2     m (c1/c2) or l1 (c2gen)
//   29      2     l2 (0 for c1/c2)
//   31      2     l3 (0 for c1/c2)
//   33      2     node index
//   35      8     stripe count
//   43      8     original file length in bytes
//   51      13    zero padding
//
// All integers little-endian. The payload is the node's two symbols per
// stripe, row 0 then row 1, in stripe order, each packed to the field's
// byte width. Lambda values are not part of the header; they travel in the
// code config file that every command takes alongside the shards.

#include <array>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "drfmds/code.hpp"
#include "drfmds/errors.hpp"
#include "drfmds/gf.hpp"

namespace drfmds {

constexpr std::size_t kShardHeaderSize = 64;
constexpr std::array<char, 4> kShardMagic{'D', 'R', 'F', '1'};
constexpr std::uint8_t kShardVersion = 1;

struct ShardHeader {
    std::string field_id;
    Family family = Family::C1;
    std::uint16_t n = 0;
    std::uint16_t k = 0;
    std::uint16_t l1 = 0;  // m for c1/c2
    std::uint16_t l2 = 0;
    std::uint16_t l3 = 0;
    std::uint16_t node = 0;
    std::uint64_t stripes = 0;
    std::uint64_t original_len = 0;

    bool same_encoding(const ShardHeader& o) const {
        return field_id == o.field_id && family == o.family && n == o.n && k == o.k && l1 == o.l1 &&
               l2 == o.l2 && l3 == o.l3 && stripes == o.stripes && original_len == o.original_len;
    }
};

namespace detail {
inline void put16(std::uint8_t* p, std::uint16_t v) {
    p[0] = std::uint8_t(v & 0xff);
    p[1] = std::uint8_t(v >> 8);
}
inline void put64(std::uint8_t* p, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) p[i] = std::uint8_t(v >> (8 * i));
}
inline std::uint16_t get16(const std::uint8_t* p) {
    return std::uint16_t(p[0]) | std::uint16_t(p[1]) << 8;
}
inline std::uint64_t get64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
    return v;
}
}  // namespace detail

inline std::array<std::uint8_t, kShardHeaderSize> pack(const ShardHeader& h) {
    if (h.field_id.size() > 16) throw ValidationError("BadParameters: field id longer than 16 bytes");
    std::array<std::uint8_t, kShardHeaderSize> out{};
    std::memcpy(out.data(), kShardMagic.data(), 4);
    out[4] = kShardVersion;
    out[5] = std::uint8_t(h.field_id.size());
    std::memcpy(out.data() + 6, h.field_id.data(), h.field_id.size());
    out[22] = std::uint8_t(h.family);
    detail::put16(out.data() + 23, h.n);
    detail::put16(out.data() + 25, h.k);
    detail::put16(out.data() + 27, h.l1);
    detail::put16(out.data() + 29, h.l2);
    detail::put16(out.data() + 31, h.l3);
    detail::put16(out.data() + 33, h.node);
    detail::put64(out.data() + 35, h.stripes);
    detail::put64(out.data() + 43, h.original_len);
    return out;
}

inline ShardHeader unpack(const std::array<std::uint8_t, kShardHeaderSize>& raw) {
    if (std::memcmp(raw.data(), kShardMagic.data(), 4) != 0)
        throw IntegrityError("BadShardHeader: magic mismatch");
    if (raw[4] != kShardVersion)
        throw IntegrityError("BadShardHeader: unsupported version " + std::to_string(raw[4]));
    const std::size_t len = raw[5];
    if (len > 16) throw IntegrityError("BadShardHeader: field id length " + std::to_string(len));
    ShardHeader h;
    h.field_id.assign(reinterpret_cast<const char*>(raw.data() + 6), len);
    switch (raw[22]) {
        case 1: h.family = Family::C1; break;
        case 2: h.family = Family::C2; break;
        case 3: h.family = Family::C2Gen; break;
        default: throw IntegrityError("BadShardHeader: family byte " + std::to_string(raw[22]));
    }
    h.n = detail::get16(raw.data() + 23);
    h.k = detail::get16(raw.data() + 25);
    h.l1 = detail::get16(raw.data() + 27);
    h.l2 = detail::get16(raw.data() + 29);
    h.l3 = detail::get16(raw.data() + 31);
    h.node = detail::get16(raw.data() + 33);
    h.stripes = detail::get64(raw.data() + 35);
    h.original_len = detail::get64(raw.data() + 43);
    return h;
}

inline ShardHeader header_for(const Code& code, unsigned node, std::uint64_t stripes,
                              std::uint64_t original_len) {
    ShardHeader h;
    h.field_id = code.field().id();
    h.family = code.family();
    h.n = std::uint16_t(code.n());
    h.k = std::uint16_t(code.k());
    if (code.family() == Family::C2Gen) {
        h.l1 = std::uint16_t(code.l1());
        h.l2 = std::uint16_t(code.l2());
        h.l3 = std::uint16_t(code.l3());
    } else {
        h.l1 = std::uint16_t(code.m());
    }
    h.node = std::uint16_t(node);
    h.stripes = stripes;
    h.original_len = original_len;
    return h;
}

inline void check_matches(const ShardHeader& h, const Code& code) {
    ShardHeader want = header_for(code, h.node, h.stripes, h.original_len);
    if (!want.same_encoding(h))
        throw IntegrityError("HeaderMismatch: shard does not belong to this code config");
}

// ---- symbol packing -----------------------------------------------------
//
// gf2^e with e <= 8: one symbol per byte (high bits zero). Larger binary
// fields and prime fields: two bytes little-endian. Encoding therefore
// accepts arbitrary byte streams only for gf2^8 and gf2^16; for smaller
// fields every input unit must already be a valid element.

inline unsigned symbol_bytes(const Field& f) {
    return (f.kind() == FieldKind::BinaryExtension && f.degree() <= 8) ? 1 : 2;
}

inline std::vector<Elem> bytes_to_symbols(const Field& f, const std::vector<std::uint8_t>& bytes) {
    const unsigned width = symbol_bytes(f);
    if (bytes.size() % width != 0)
        throw ValidationError("BadParameters: byte length not a multiple of symbol width");
    std::vector<Elem> out;
    out.reserve(bytes.size() / width);
    for (std::size_t i = 0; i < bytes.size(); i += width) {
        Elem v = width == 1 ? bytes[i] : Elem(bytes[i] | unsigned(bytes[i + 1]) << 8);
        if (unsigned(v) >= f.order())
            throw ValidationError("SymbolOutOfRange: byte value " + std::to_string(v) +
                                  " is not an element of " + f.id());
        out.push_back(v);
    }
    return out;
}

inline std::vector<std::uint8_t> symbols_to_bytes(const Field& f, const std::vector<Elem>& symbols) {
    const unsigned width = symbol_bytes(f);
    std::vector<std::uint8_t> out;
    out.reserve(symbols.size() * width);
    for (Elem s : symbols) {
        out.push_back(std::uint8_t(s & 0xff));
        if (width == 2) out.push_back(std::uint8_t(s >> 8));
    }
    return out;
}

// ---- stripe layout ------------------------------------------------------
//
// Data symbol index s*2k + 2j + r lives at (stripe s, node j, row r) for
// j < k; the mapping is a bijection on the padded symbol stream.

struct StripeLayout {
    unsigned k = 0;

    std::size_t symbols_per_stripe() const { return 2ull * k; }

    std::size_t position(std::uint64_t stripe, unsigned node, unsigned row) const {
        return stripe * symbols_per_stripe() + 2ull * node + row;
    }

    struct Location {
        std::uint64_t stripe;
        unsigned node;
        unsigned row;
    };

    Location locate(std::size_t index) const {
        const std::size_t per = symbols_per_stripe();
        return {index / per, unsigned(index % per / 2), unsigned(index % 2)};
    }

    std::uint64_t stripes_for(std::size_t symbol_count) const {
        const std::size_t per = symbols_per_stripe();
        return (symbol_count + per - 1) / per;
    }
};

}  // namespace drfmds
