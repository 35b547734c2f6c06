#pragma once

#include <set>

#include "pmrc/encoding.hpp"

namespace pmrc {

// A length-n' view of a width-d MDS codeword: generator rows correspond 1:1
// to received symbols; rows listed in `erased` carry no usable value.
struct Observation {
    EncodingMatrix generator; // n' x d, restricted to the contacted rows
    FeVec received;           // n' symbols
    std::set<int> erased;     // 0-based row indices marked unavailable

    int width() const { return generator.d(); }
    int usable() const { return generator.n() - static_cast<int>(erased.size()); }
    void validate() const;
};

enum class DetectResult { clean, corrupted };

// Berlekamp-Welch over the generator's evaluation points. Requires the
// vandermonde flavor and at least width + 2p non-erased rows. Returns the
// unique message whose encoding differs from the non-erased received symbols
// in at most p positions; throws DecodeFailure when no such codeword exists.
FeVec decode_bw(const Observation& obs, int p);

// Error-set enumeration decoder for any MDS generator: drop candidate error
// sets of size <= p (lowest-index set first), solve, accept iff every other
// non-erased row agrees.
FeVec decode_exhaustive(const Observation& obs, int p);

// Flavor dispatch: BW for vandermonde generators, exhaustive otherwise.
FeVec decode(const Observation& obs, int p);

// Drops up to p_prime erased rows, then decodes with error budget p.
FeVec decode_with_erasures(const Observation& obs, int p, int p_prime);

// Consistency test with d + p rows: clean iff the received symbols agree
// with a single codeword. Correct whenever at most p symbols are corrupted.
DetectResult detect(const Observation& obs, int p);

} // namespace pmrc
