#pragma once

#include "pmrc/code.hpp"

namespace pmrc {

// Minimum-storage-regenerating parameters for d >= 2k-2. Codes with
// d = 2k-2+i, i > 0 are realized by shortening a base [n+i, k+i, d+i] code.
struct MsrParams {
    int n = 0, k = 0, d = 0;
    int beta = 1;
    int ell = 0, m = 0;

    int alpha_unit() const { return d - k + 1; }    // per beta = 1 stripe
    long alpha() const { return static_cast<long>(alpha_unit()) * beta; }
    long B() const { return static_cast<long>(k) * alpha(); }
    long B_star() const { return static_cast<long>(k - ell) * (alpha() - static_cast<long>(m) * beta); }
    long R() const { return static_cast<long>(m) * (k - ell) * beta + static_cast<long>(ell) * alpha(); }

    int shorten_i() const { return d - (2 * k - 2); }
    int base_n() const { return n + shorten_i(); }
    int base_k() const { return k + shorten_i(); }
    int base_d() const { return d + shorten_i(); }
    int base_ell() const { return ell == 0 ? 0 : ell + shorten_i(); }
};

MsrParams msr_derive(int n, int k, int d, int beta, int ell, int m);

// How message symbols are arranged in (and read back from) the message
// matrix. Plain d = 2k-2 codes fill the S1/S2 cells directly; systematic
// codes (which is also how plain shortened codes are built) solve
// Psi_k' M = U and read the message as U rows.
enum class MsrLayout { canonical, systematic };

// Product-matrix MSR code: C = Psi * M with M = [S1; S2], S1 and S2
// symmetric alpha x alpha. Psi = [Phi, Lambda*Phi] comes from a Vandermonde
// matrix whose points have pairwise-distinct alpha-th powers.
class MsrCode : public RegeneratingCode {
public:
    // Ordinary construction (the encode operation's semantics): canonical
    // fill, except that plain shortened codes are systematic by construction.
    MsrCode(MsrParams params, EncodingMatrix base_psi);
    // Systematic variant; rejects ell > 0.
    static MsrCode systematic(MsrParams params, EncodingMatrix base_psi);

    const MsrParams& params() const noexcept { return params_; }
    MsrLayout layout() const noexcept { return layout_; }
    const EncodingMatrix& base_psi() const noexcept { return base_psi_; }

    const PrimeField& field() const override { return base_psi_.field(); }
    const EncodingMatrix& psi() const override { return base_psi_; }
    int n() const override { return params_.n; }
    int k() const override { return params_.k; }
    int d() const override { return params_.d; }
    int ell() const override { return params_.ell; }
    int m() const override { return params_.m; }
    int alpha() const override { return params_.alpha_unit(); }
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

    // Base message matrix [S1; S2] for one stripe (exposed for the audits
    // and the shortening tests).
    Matrix message_matrix(std::span<const uint32_t> message,
                          std::span<const uint32_t> randomness) const;

private:
    MsrCode(MsrParams params, EncodingMatrix base_psi, MsrLayout layout);

    // Recover S1 and S2 from base-code rows (two-stage decode; tolerates
    // up to p corrupt rows, with first-stage failures demoted to erasures).
    std::pair<Matrix, Matrix> recover_message_matrix(const std::vector<int>& base_rows,
                                                     const Matrix& data, int p) const;
    FeVec phi_row(int base_row) const;
    uint32_t lambda_of(int base_row) const;

    MsrParams params_;
    EncodingMatrix base_psi_;
    MsrLayout layout_;
    FeVec lambda_; // x_i^alpha per base row
};

} // namespace pmrc
