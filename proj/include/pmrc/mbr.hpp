#pragma once

#include "pmrc/code.hpp"

namespace pmrc {

// Minimum-bandwidth-regenerating parameters. Derived quantities are per the
// regime identities alpha = d*beta, B = (kd - k(k-1)/2)*beta, and the
// secrecy loss R = (ld - l(l-1)/2)*beta, B* = B - R.
struct MbrParams {
    int n = 0, k = 0, d = 0;
    int beta = 1;
    int ell = 0, m = 0;

    long alpha() const { return static_cast<long>(d) * beta; }
    long B() const { return (static_cast<long>(k) * d - static_cast<long>(k) * (k - 1) / 2) * beta; }
    long R() const {
        return (static_cast<long>(ell) * d - static_cast<long>(ell) * (ell - 1) / 2) * beta;
    }
    long B_star() const { return B() - R(); }
};

MbrParams mbr_derive(int n, int k, int d, int beta, int ell, int m);

// Product-matrix MBR code: C = Psi * M with M = [[S, V], [V^T, 0]], S
// symmetric. The first-l-rows cells of M hold the random symbols when l > 0.
class MbrCode : public RegeneratingCode {
public:
    MbrCode(MbrParams params, EncodingMatrix psi);

    const MbrParams& params() const noexcept { return params_; }
    const PrimeField& field() const override { return psi_.field(); }
    const EncodingMatrix& psi() const override { return psi_; }
    int n() const override { return params_.n; }
    int k() const override { return params_.k; }
    int d() const override { return params_.d; }
    int ell() const override { return params_.ell; }
    int m() const override { return params_.m; }
    int alpha() const override { return params_.d; }                       // beta = 1 stripe
    int message_len() const override { return static_cast<int>(params_.B_star() / params_.beta); }
    int randomness_len() const override { return static_cast<int>(params_.R() / params_.beta); }

    using RegeneratingCode::encode;
    std::vector<Share> encode(std::span<const uint32_t> message,
                              std::span<const uint32_t> randomness) const override;

    FeVec helper_symbol(const Share& helper, int failed) const override;
    Share repair(int failed, const std::vector<HelperSymbols>& helpers, int p) const override;
    std::vector<uint32_t> reconstruct(const std::vector<Share>& shares, int p) const override;
    DetectResult repair_detect(int failed, const std::vector<HelperSymbols>& helpers,
                               int p) const override;
    DetectResult reconstruct_detect(const std::vector<Share>& shares, int p) const override;

    // Message matrix for one stripe (exposed for the audit oracles).
    Matrix message_matrix(std::span<const uint32_t> message,
                          std::span<const uint32_t> randomness) const;

private:
    MbrParams params_;
    EncodingMatrix psi_;
};

} // namespace pmrc
