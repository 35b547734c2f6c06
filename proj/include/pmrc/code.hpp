#pragma once

#include <memory>

#include "pmrc/mds.hpp"

namespace pmrc {

// One node's stored data: one alpha-symbol vector per stripe. Striping for
// beta > 1 (and for long messages) concatenates independent beta = 1 code
// instances, so `alpha` here is always the beta = 1 value.
struct Share {
    int node = 0;                   // 1-based node index
    std::vector<FeVec> stripes;

    bool operator==(const Share&) const = default;
};

// One helper's contribution to a repair: one projected symbol per stripe.
struct HelperSymbols {
    int node = 0;
    FeVec symbols;
};

// Common surface of the product-matrix codes; the audit oracles and the
// cluster simulator drive codes through this interface.
class RegeneratingCode {
public:
    virtual ~RegeneratingCode() = default;

    virtual const PrimeField& field() const = 0;
    virtual const EncodingMatrix& psi() const = 0;
    virtual int n() const = 0;
    virtual int k() const = 0;
    virtual int d() const = 0;
    virtual int ell() const = 0;
    virtual int m() const = 0;
    virtual int alpha() const = 0;           // per stripe (beta = 1)
    virtual int message_len() const = 0;     // B* per stripe
    virtual int randomness_len() const = 0;  // R per stripe

    // message.size() = B* x stripes, randomness.size() = R x stripes.
    virtual std::vector<Share> encode(std::span<const uint32_t> message,
                                      std::span<const uint32_t> randomness) const = 0;
    std::vector<Share> encode(std::span<const uint32_t> message, RandomSource& rng) const;

    // The symbol a helper passes for the repair of `failed`, one per stripe.
    // Depends only on the helper's content and the failed node's identity.
    virtual FeVec helper_symbol(const Share& helper, int failed) const = 0;

    // Hook for the helper-independence audit: a conforming scheme ignores the
    // helper-set context. Mock schemes override this to model violations.
    virtual FeVec helper_symbol_in_context(const Share& helper, int failed,
                                           std::span<const int> helper_set) const {
        (void)helper_set;
        return helper_symbol(helper, failed);
    }

    virtual Share repair(int failed, const std::vector<HelperSymbols>& helpers, int p) const = 0;
    virtual std::vector<uint32_t> reconstruct(const std::vector<Share>& shares, int p) const = 0;

    // Corruption detection (d + p helpers / k + p shares).
    virtual DetectResult repair_detect(int failed, const std::vector<HelperSymbols>& helpers,
                                       int p) const = 0;
    virtual DetectResult reconstruct_detect(const std::vector<Share>& shares, int p) const = 0;

    int stripes_of(std::span<const uint32_t> message) const;
};

} // namespace pmrc
