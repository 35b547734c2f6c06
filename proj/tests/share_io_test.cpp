#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "pmrc/share_io.hpp"

using namespace pmrc;
using namespace pmrc::io;

namespace {

ShareFile sample() {
    ShareFile sf;
    sf.header.regime = Regime::msr;
    sf.header.n = 7;
    sf.header.k = 3;
    sf.header.d = 4;
    sf.header.beta = 1;
    sf.header.ell = 1;
    sf.header.m = 0;
    sf.header.modulus = 13;
    sf.header.node = 4;
    sf.header.stripes = 3;
    sf.header.original_length = 17;
    sf.share.node = 4;
    sf.share.stripes = {{1, 2}, {3, 4}, {5, 12}};
    return sf;
}

} // namespace

TEST_CASE("header and payload round-trip bit-exactly") {
    const ShareFile sf = sample();
    const auto bytes = serialize(sf);
    const ShareFile back = parse(bytes);
    CHECK(back.header == sf.header);
    CHECK(back.share == sf.share);
    CHECK(serialize(back) == bytes);
}

TEST_CASE("file round-trip") {
    const auto path = std::filesystem::temp_directory_path() / "pmrc_io_test.pmrc";
    const ShareFile sf = sample();
    write_file(path, sf);
    const ShareFile back = read_file(path);
    CHECK(back.header == sf.header);
    CHECK(back.share == sf.share);
    std::filesystem::remove(path);
}

TEST_CASE("parser rejects every header/payload mutation that breaks an invariant") {
    const auto bytes = serialize(sample());

    auto mutate = [&](size_t off, uint8_t v) {
        auto b = bytes;
        b[off] = v;
        return b;
    };

    CHECK_THROWS_AS(parse(mutate(0, 'X')), MalformedShareFile);   // magic
    CHECK_THROWS_AS(parse(mutate(4, 99)), MalformedShareFile);    // version
    CHECK_THROWS_AS(parse(mutate(6, 7)), MalformedShareFile);     // regime tag
    CHECK_THROWS_AS(parse(mutate(7, 9)), MalformedShareFile);     // fill order
    CHECK_THROWS_AS(parse(mutate(20, 12)), MalformedShareFile);   // modulus not prime
    CHECK_THROWS_AS(parse(mutate(24, 9)), MalformedShareFile);    // node > n

    // truncated payload
    auto shorter = bytes;
    shorter.pop_back();
    CHECK_THROWS_AS(parse(shorter), MalformedShareFile);
    // trailing garbage
    auto longer = bytes;
    longer.push_back(0);
    CHECK_THROWS_AS(parse(longer), MalformedShareFile);

    // payload element >= modulus (first element lives at offset 44)
    CHECK_THROWS_AS(parse(mutate(44, 13)), MalformedShareFile);

    // empty / tiny buffers
    CHECK_THROWS_AS(parse(std::vector<uint8_t>{}), MalformedShareFile);
    CHECK_THROWS_AS(parse(std::vector<uint8_t>(10, 0)), MalformedShareFile);
}

TEST_CASE("byte packing round-trips arbitrary data") {
    const uint32_t q = 65521;
    CHECK(bytes_per_element(q) == 1);
    CHECK(bytes_per_element(257) == 1);
    CHECK(bytes_per_element(2147483647u) == 3);
    CHECK_THROWS_AS(pack_bytes(std::vector<uint8_t>{1}, 251), InvalidParams);

    RandomSource rng(PrimeField(q), 8);
    for (size_t len : {0u, 1u, 2u, 3u, 7u, 64u, 1000u}) {
        std::vector<uint8_t> data(len);
        for (auto& b : data) b = static_cast<uint8_t>(rng.draw_u64());
        for (uint32_t modulus : {65521u, 2147483647u}) {
            const FeVec packed = pack_bytes(data, modulus);
            for (uint32_t v : packed) CHECK(v < modulus);
            CHECK(unpack_bytes(packed, modulus, len) == data);
        }
    }
}
