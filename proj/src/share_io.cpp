#include "pmrc/share_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace pmrc::io {

namespace {

constexpr size_t kHeaderSize = 44;

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v));
    out.push_back(static_cast<uint8_t>(v >> 8));
}
void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<uint8_t>& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}
uint16_t get_u16(std::span<const uint8_t> b, size_t off) {
    return static_cast<uint16_t>(b[off] | (static_cast<uint16_t>(b[off + 1]) << 8));
}
uint32_t get_u32(std::span<const uint8_t> b, size_t off) {
    uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[off + static_cast<size_t>(i)];
    return v;
}
uint64_t get_u64(std::span<const uint8_t> b, size_t off) {
    uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[off + static_cast<size_t>(i)];
    return v;
}

} // namespace

std::vector<uint8_t> serialize(const ShareFile& sf) {
    const ShareFileHeader& h = sf.header;
    std::vector<uint8_t> out;
    out.reserve(kHeaderSize + sf.share.stripes.size() * static_cast<size_t>(h.alpha_unit()) * 8);
    out.insert(out.end(), kMagic, kMagic + 4);
    put_u16(out, h.version);
    out.push_back(static_cast<uint8_t>(h.regime));
    out.push_back(h.fill_order);
    put_u16(out, h.n);
    put_u16(out, h.k);
    put_u16(out, h.d);
    put_u16(out, h.beta);
    put_u16(out, h.ell);
    put_u16(out, h.m);
    put_u32(out, h.modulus);
    put_u32(out, h.node);
    put_u64(out, h.stripes);
    put_u64(out, h.original_length);
    for (const auto& stripe : sf.share.stripes)
        for (uint32_t v : stripe) put_u64(out, v);
    return out;
}

ShareFile parse(std::span<const uint8_t> bytes) {
    if (bytes.size() < kHeaderSize) throw MalformedShareFile("truncated header");
    if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw MalformedShareFile("bad magic");
    ShareFileHeader h;
    h.version = get_u16(bytes, 4);
    if (h.version != kFormatVersion) throw MalformedShareFile("unsupported format version");
    const uint8_t regime = bytes[6];
    if (regime > 1) throw MalformedShareFile("unknown regime tag");
    h.regime = static_cast<Regime>(regime);
    h.fill_order = bytes[7];
    if (h.fill_order != kFillOrderVersion) throw MalformedShareFile("unsupported fill order");
    h.n = get_u16(bytes, 8);
    h.k = get_u16(bytes, 10);
    h.d = get_u16(bytes, 12);
    h.beta = get_u16(bytes, 14);
    h.ell = get_u16(bytes, 16);
    h.m = get_u16(bytes, 18);
    h.modulus = get_u32(bytes, 20);
    h.node = get_u32(bytes, 24);
    h.stripes = get_u64(bytes, 28);
    h.original_length = get_u64(bytes, 36);

    if (h.n == 0 || h.k == 0 || h.d == 0 || h.node == 0 || h.node > h.n)
        throw MalformedShareFile("header parameters out of range");
    if (h.modulus < 2 || h.modulus > PrimeField::kMaxModulus || !is_prime(h.modulus))
        throw MalformedShareFile("header modulus is not a usable prime");

    const size_t alpha = static_cast<size_t>(h.alpha_unit());
    const size_t want = kHeaderSize + h.stripes * alpha * 8;
    if (bytes.size() != want) throw MalformedShareFile("payload length mismatch");

    ShareFile sf;
    sf.header = h;
    sf.share.node = static_cast<int>(h.node);
    size_t off = kHeaderSize;
    for (uint64_t s = 0; s < h.stripes; ++s) {
        FeVec stripe(alpha);
        for (size_t j = 0; j < alpha; ++j, off += 8) {
            const uint64_t v = get_u64(bytes, off);
            if (v >= h.modulus) throw MalformedShareFile("payload element >= modulus");
            stripe[j] = static_cast<uint32_t>(v);
        }
        sf.share.stripes.push_back(std::move(stripe));
    }
    return sf;
}

void write_file(const std::filesystem::path& path, const ShareFile& sf) {
    const auto bytes = serialize(sf);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to " + path.string());
}

ShareFile read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    return parse(bytes);
}

int bytes_per_element(uint32_t modulus) {
    const int bits = std::bit_width(modulus);
    return (bits - 1) / 8;
}

FeVec pack_bytes(std::span<const uint8_t> data, uint32_t modulus) {
    const int b = bytes_per_element(modulus);
    if (b < 1) throw InvalidParams("byte packing needs a field larger than 2^8");
    FeVec out;
    out.reserve((data.size() + static_cast<size_t>(b) - 1) / static_cast<size_t>(b));
    for (size_t off = 0; off < data.size(); off += static_cast<size_t>(b)) {
        uint32_t v = 0;
        for (int j = 0; j < b; ++j) {
            const size_t idx = off + static_cast<size_t>(j);
            v |= static_cast<uint32_t>(idx < data.size() ? data[idx] : 0) << (8 * j);
        }
        out.push_back(v);
    }
    return out;
}

std::vector<uint8_t> unpack_bytes(std::span<const uint32_t> symbols, uint32_t modulus,
                                  uint64_t original_length) {
    const int b = bytes_per_element(modulus);
    if (b < 1) throw InvalidParams("byte packing needs a field larger than 2^8");
    std::vector<uint8_t> out;
    out.reserve(symbols.size() * static_cast<size_t>(b));
    for (uint32_t v : symbols)
        for (int j = 0; j < b; ++j) out.push_back(static_cast<uint8_t>(v >> (8 * j)));
    if (out.size() < original_length) throw InvalidParams("decoded data shorter than original");
    out.resize(original_length);
    return out;
}

} // namespace pmrc::io
