#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "pmrc/code.hpp"

namespace pmrc::io {

inline constexpr char kMagic[4] = {'P', 'M', 'R', 'C'};
inline constexpr uint16_t kFormatVersion = 1;
inline constexpr uint8_t kFillOrderVersion = 1;

enum class Regime : uint8_t { mbr = 0, msr = 1 };

// Fixed 44-byte little-endian header followed by stripe-major payload of
// 64-bit little-endian field elements (stripes x alpha of them).
struct ShareFileHeader {
    uint16_t version = kFormatVersion;
    Regime regime = Regime::mbr;
    uint8_t fill_order = kFillOrderVersion;
    uint16_t n = 0, k = 0, d = 0, beta = 1, ell = 0, m = 0;
    uint32_t modulus = 0;
    uint32_t node = 0;          // 1-based
    uint64_t stripes = 0;
    uint64_t original_length = 0; // bytes in byte mode, symbols in symbol mode

    int alpha_unit() const {
        return regime == Regime::mbr ? d : d - k + 1;
    }
    bool operator==(const ShareFileHeader&) const = default;
};

struct ShareFile {
    ShareFileHeader header;
    Share share; // node + stripes x alpha payload
};

std::vector<uint8_t> serialize(const ShareFile& sf);
ShareFile parse(std::span<const uint8_t> bytes); // throws MalformedShareFile

void write_file(const std::filesystem::path& path, const ShareFile& sf);
ShareFile read_file(const std::filesystem::path& path);

// Byte packing: floor((bits(q) - 1) / 8) bytes per field element, so every
// packed value is strictly below the modulus. Requires q > 2^8.
int bytes_per_element(uint32_t modulus);
FeVec pack_bytes(std::span<const uint8_t> data, uint32_t modulus);
std::vector<uint8_t> unpack_bytes(std::span<const uint32_t> symbols, uint32_t modulus,
                                  uint64_t original_length);

} // namespace pmrc::io
