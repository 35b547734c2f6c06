#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pmrc/mds.hpp"

using namespace pmrc;

namespace {

// Independent oracle: enumerate all q^w candidate messages and keep those
// whose encoding is within Hamming distance p of the received word.
std::vector<FeVec> brute_force_candidates(const Matrix& gen, const FeVec& recv, int p) {
    const PrimeField& f = gen.field();
    const uint32_t q = f.modulus();
    const int w = gen.cols();
    std::vector<FeVec> found;
    FeVec msg(static_cast<size_t>(w), 0);
    while (true) {
        int bad = 0;
        for (int i = 0; i < gen.rows(); ++i)
            if (dot(f, gen.row(i), msg) != recv[static_cast<size_t>(i)]) ++bad;
        if (bad <= p) found.push_back(msg);
        size_t i = 0;
        while (i < msg.size() && ++msg[i] == q) msg[i++] = 0;
        if (i == msg.size()) break;
    }
    return found;
}

FeVec encode_msg(const EncodingMatrix& gen, const FeVec& msg) { return gen.psi().mul_vec(msg); }

} // namespace

TEST_CASE("exhaustive decoder recovers the corrupted repair stream") {
    // Fig. 4/5 repair of node 1 with (a,b,c) = (1,2,3): helpers 2..5 pass
    // (2,3,0,2); the third symbol is corrupted 0 -> 1.
    PrimeField f5(5);
    const auto gen = EncodingMatrix::from_rows(f5, {{0, 1}, {1, 1}, {1, 2}, {1, 3}});
    const FeVec received{2, 3, 1, 2};

    const auto cands = brute_force_candidates(gen.psi(), received, 1);
    REQUIRE(cands.size() == 1);
    CHECK(cands[0] == FeVec{1, 2});

    const Observation obs{gen, received, {}};
    CHECK(decode_exhaustive(obs, 1) == FeVec{1, 2});
    CHECK(decode(obs, 1) == FeVec{1, 2}); // custom flavor routes here
}

TEST_CASE("BW decoder: zero errors and zero vector") {
    PrimeField f5(5);
    const auto gen = EncodingMatrix::vandermonde_from_points(f5, {0, 1, 2, 3}, 2);
    const FeVec msg{1, 2};
    CHECK(decode_bw({gen, encode_msg(gen, msg), {}}, 0) == msg);
    CHECK(decode_bw({gen, {0, 0, 0, 0}, {}}, 0) == FeVec{0, 0});
    CHECK(decode_exhaustive({gen, encode_msg(gen, msg), {}}, 0) == msg);
}

TEST_CASE("BW corrects every weight-<=p pattern (exhaustive, small field)") {
    PrimeField f7(7);
    const auto gen = EncodingMatrix::vandermonde(f7, 6, 2); // p = 2 budget
    const FeVec msg{3, 5};
    const FeVec clean = encode_msg(gen, msg);
    for (int i = 0; i < 6; ++i) {
        for (uint32_t di = 1; di < 7; ++di) {
            FeVec r1 = clean;
            r1[static_cast<size_t>(i)] = f7.add(r1[static_cast<size_t>(i)], di);
            CHECK(decode_bw({gen, r1, {}}, 2) == msg);
            for (int j = i + 1; j < 6; ++j) {
                for (uint32_t dj = 1; dj < 7; ++dj) {
                    FeVec r2 = r1;
                    r2[static_cast<size_t>(j)] = f7.add(r2[static_cast<size_t>(j)], dj);
                    CHECK(decode_bw({gen, r2, {}}, 2) == msg);
                }
            }
        }
    }
}

TEST_CASE("radius tightness: some weight-(p+1) pattern defeats decoding") {
    PrimeField f5(5);
    const auto gen = EncodingMatrix::vandermonde_from_points(f5, {0, 1, 2, 3}, 2);
    const FeVec msg{1, 2};
    // corrupt two of four symbols toward another codeword: decoding with
    // p = 1 must not return the original message everywhere
    const FeVec other{2, 3};
    FeVec r = encode_msg(gen, msg);
    const FeVec enc_other = encode_msg(gen, other);
    r[0] = enc_other[0];
    r[1] = enc_other[1];
    bool defeated = false;
    try {
        defeated = decode_bw({gen, r, {}}, 1) != msg;
    } catch (const DecodeFailure&) {
        defeated = true;
    }
    CHECK(defeated);
}

TEST_CASE("decoder agreement: BW == exhaustive on randomized instances") {
    RandomSource seeds(PrimeField(2147483647u), 2024);
    int checked = 0;
    for (int t = 0; t < 1500; ++t) {
        const uint32_t qs[] = {5, 7, 11, 13};
        PrimeField f(qs[seeds.draw_u64() % 4]);
        RandomSource rng(f, seeds.draw_u64());
        const int w = 2 + static_cast<int>(rng.draw_u64() % 3);        // 2..4
        const int p = static_cast<int>(rng.draw_u64() % 3);            // 0..2
        const int n = w + 2 * p + static_cast<int>(rng.draw_u64() % 2);
        if (n > static_cast<int>(f.modulus()) || n > 9) continue;
        const auto gen = EncodingMatrix::vandermonde(f, n, w);
        FeVec msg(static_cast<size_t>(w));
        for (auto& v : msg) v = rng.draw();
        FeVec recv = encode_msg(gen, msg);
        // corrupt up to p positions
        const int weight = p == 0 ? 0 : static_cast<int>(rng.draw_u64() % (p + 1));
        for (int e = 0; e < weight; ++e) {
            const size_t pos = rng.draw_u64() % recv.size();
            recv[pos] = f.add(recv[pos], 1 + static_cast<uint32_t>(rng.draw_u64() % (f.modulus() - 1)));
        }
        const Observation obs{gen, recv, {}};
        const FeVec a = decode_bw(obs, p);
        const FeVec b = decode_exhaustive(obs, p);
        CHECK(a == b);
        CHECK(a == msg);
        ++checked;
    }
    CHECK(checked > 1000);
}

TEST_CASE("erasure handling") {
    PrimeField f7(7);
    const auto gen = EncodingMatrix::vandermonde(f7, 5, 2); // d + 2p + p' = 5
    const FeVec msg{4, 6};
    FeVec recv = encode_msg(gen, msg);
    recv[1] = f7.add(recv[1], 3);          // one error
    Observation obs{gen, recv, {4}};       // one erasure
    CHECK(decode_with_erasures(obs, 1, 1) == msg);

    // p' erasures, zero errors: solve from any d survivors
    Observation clean{gen, encode_msg(gen, msg), {0, 2}};
    CHECK(decode_with_erasures(clean, 0, 2) == msg);

    // more erasures than declared
    Observation over{gen, encode_msg(gen, msg), {0, 1, 2}};
    CHECK_THROWS_AS(decode_with_erasures(over, 0, 2), TooManyErasures);
}

TEST_CASE("detection contract") {
    PrimeField f5(5);
    const auto gen = EncodingMatrix::vandermonde_from_points(f5, {0, 1, 2}, 2); // d + p = 3
    const FeVec msg{1, 2};
    const FeVec clean = encode_msg(gen, msg);
    CHECK(detect({gen, clean, {}}, 1) == DetectResult::clean);
    CHECK(detect({gen, {0, 0, 0}, {}}, 1) == DetectResult::clean); // zero codeword

    for (size_t i = 0; i < 3; ++i) {
        for (uint32_t dd = 1; dd < 5; ++dd) {
            FeVec r = clean;
            r[i] = f5.add(r[i], dd);
            CHECK(detect({gen, r, {}}, 1) == DetectResult::corrupted);
        }
    }
}

TEST_CASE("decode failure signals corruption beyond p") {
    PrimeField f13(13);
    const auto gen = EncodingMatrix::vandermonde(f13, 4, 2);
    CHECK_THROWS_AS(decode_bw({gen, {1, 0, 0, 1}, {}}, 0), DecodeFailure);
    // too few rows for the budget
    CHECK_THROWS_AS(decode_bw({gen, {1, 0, 0, 1}, {}}, 2), InvalidParams);
}
