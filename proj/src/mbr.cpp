#include "pmrc/mbr.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace pmrc {

namespace {

// Canonical distinct-cell order of the MBR message matrix: S upper triangle
// row-major, then V row-major. A cell belongs to the random region iff it
// lies in the first l rows (equivalently first l columns) of M.
template <typename Fn>
void walk_cells(int k, int d, Fn&& fn) {
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) fn(i, j);
    for (int i = 0; i < k; ++i)
        for (int j = k; j < d; ++j) fn(i, j);
}

void check_share_shape(const Share& s, int n, int alpha, int stripes) {
    if (s.node < 1 || s.node > n) throw InvalidParams("share node index out of range");
    if (static_cast<int>(s.stripes.size()) != stripes)
        throw DimensionMismatch("share stripe count mismatch");
    for (const auto& v : s.stripes)
        if (static_cast<int>(v.size()) != alpha)
            throw DimensionMismatch("share stripe length != alpha");
}

} // namespace

MbrParams mbr_derive(int n, int k, int d, int beta, int ell, int m) {
    if (k < 1 || k > d || d > n - 1) throw InvalidParams("MBR needs 1 <= k <= d <= n-1");
    if (beta < 1) throw InvalidParams("beta must be >= 1");
    if (m < 0 || ell < m || ell >= k) throw InvalidParams("secrecy needs 0 <= m <= ell < k");
    MbrParams p{n, k, d, beta, ell, m};
    // alpha = B/k + (k-1)beta/2 must hold exactly: 2*k*alpha == 2B + k(k-1)beta.
    if (2 * p.k * p.alpha() != 2 * p.B() + static_cast<long>(p.k) * (p.k - 1) * p.beta)
        throw InvalidParams("MBR identity violated"); // unreachable for integer beta
    return p;
}

MbrCode::MbrCode(MbrParams params, EncodingMatrix psi)
    : params_(params), psi_(std::move(psi)) {
    if (psi_.n() != params_.n || psi_.d() != params_.d)
        throw InvalidParams("encoding matrix shape does not match (n, d)");
    if (params_.ell > 0 && psi_.flavor() == PsiFlavor::systematic_mbr)
        throw InvalidParams("a systematic code cannot provide eavesdropper secrecy");
    if (psi_.flavor() == PsiFlavor::custom) {
        // Vandermonde/Cauchy constructions carry these properties; arbitrary
        // rows are checked exhaustively (desk scale).
        if (!psi_.all_minors_nonsingular(params_.k))
            throw InvalidParams("some k rows of Phi are linearly dependent");
        if (params_.ell > 0 && !psi_.all_minors_nonsingular(params_.ell))
            throw InvalidParams("some l rows of the first l columns are dependent");
    }
}

Matrix MbrCode::message_matrix(std::span<const uint32_t> message,
                               std::span<const uint32_t> randomness) const {
    const int k = params_.k, d = params_.d, ell = params_.ell;
    if (static_cast<int>(message.size()) != message_len())
        throw ShortMessage("stripe message length != B*");
    if (static_cast<int>(randomness.size()) != randomness_len())
        throw InvalidParams("stripe randomness length != R");
    Matrix m(field(), d, d);
    size_t mi = 0, ri = 0;
    walk_cells(k, d, [&](int i, int j) {
        const uint32_t v = i < ell ? randomness[ri++] : message[mi++];
        m.set(i, j, v);
        m.set(j, i, v);
    });
    return m;
}

std::vector<Share> MbrCode::encode(std::span<const uint32_t> message,
                                   std::span<const uint32_t> randomness) const {
    const int stripes = stripes_of(message);
    if (randomness.size() != static_cast<size_t>(stripes) * static_cast<size_t>(randomness_len()))
        throw InvalidParams("randomness length != R x stripes");

    std::vector<Share> shares(static_cast<size_t>(params_.n));
    for (int i = 0; i < params_.n; ++i) shares[static_cast<size_t>(i)].node = i + 1;
    const size_t bstar = static_cast<size_t>(message_len());
    const size_t r = static_cast<size_t>(randomness_len());
    for (int s = 0; s < stripes; ++s) {
        const Matrix m = message_matrix(message.subspan(s * bstar, bstar),
                                        randomness.subspan(s * r, r));
        const Matrix c = psi_.psi().mul(m);
        for (int i = 0; i < params_.n; ++i)
            shares[static_cast<size_t>(i)].stripes.emplace_back(c.row(i).begin(), c.row(i).end());
    }
    return shares;
}

FeVec MbrCode::helper_symbol(const Share& helper, int failed) const {
    if (failed < 1 || failed > params_.n) throw InvalidParams("failed node out of range");
    const auto psi_f = psi_.psi().row(failed - 1);
    FeVec out;
    out.reserve(helper.stripes.size());
    for (const auto& stripe : helper.stripes) out.push_back(dot(field(), stripe, psi_f));
    return out;
}

namespace {

std::vector<int> helper_row_indices(int n, int d2p, int failed,
                                    const std::vector<HelperSymbols>& helpers, int stripes_hint) {
    if (static_cast<int>(helpers.size()) < d2p)
        throw NotEnoughHelpers("need " + std::to_string(d2p) + " helpers, have " +
                               std::to_string(helpers.size()));
    std::set<int> seen;
    std::vector<int> idx;
    for (const auto& h : helpers) {
        if (h.node < 1 || h.node > n) throw InvalidParams("helper index out of range");
        if (h.node == failed) throw InvalidParams("failed node cannot help its own repair");
        if (!seen.insert(h.node).second) throw InvalidParams("duplicate helper");
        if (stripes_hint >= 0 && static_cast<int>(h.symbols.size()) != stripes_hint)
            throw DimensionMismatch("helper symbol count mismatch");
        idx.push_back(h.node - 1);
    }
    return idx;
}

} // namespace

Share MbrCode::repair(int failed, const std::vector<HelperSymbols>& helpers, int p) const {
    if (failed < 1 || failed > params_.n) throw InvalidParams("failed node out of range");
    if (p < 0 || params_.d + 2 * p > params_.n - 1) throw InvalidParams("infeasible p");
    const int stripes = helpers.empty() ? 0 : static_cast<int>(helpers[0].symbols.size());
    const auto idx = helper_row_indices(params_.n, params_.d + 2 * p, failed, helpers, stripes);
    const EncodingMatrix gen = psi_.restrict_rows(idx);

    Share out;
    out.node = failed;
    for (int s = 0; s < stripes; ++s) {
        Observation obs{gen, {}, {}};
        for (const auto& h : helpers) obs.received.push_back(h.symbols[static_cast<size_t>(s)]);
        // decode gives mu = M psi_f; by symmetry of M this row IS psi_f^T M.
        out.stripes.push_back(decode(obs, p));
    }
    return out;
}

DetectResult MbrCode::repair_detect(int failed, const std::vector<HelperSymbols>& helpers,
                                    int p) const {
    if (failed < 1 || failed > params_.n) throw InvalidParams("failed node out of range");
    const int stripes = helpers.empty() ? 0 : static_cast<int>(helpers[0].symbols.size());
    const auto idx = helper_row_indices(params_.n, params_.d + p, failed, helpers, stripes);
    const EncodingMatrix gen = psi_.restrict_rows(idx);
    for (int s = 0; s < stripes; ++s) {
        Observation obs{gen, {}, {}};
        for (const auto& h : helpers) obs.received.push_back(h.symbols[static_cast<size_t>(s)]);
        if (detect(obs, p) == DetectResult::corrupted) return DetectResult::corrupted;
    }
    return DetectResult::clean;
}

namespace {

std::vector<int> share_row_indices(int n, int need, const std::vector<Share>& shares,
                                   int alpha) {
    if (static_cast<int>(shares.size()) < need)
        throw NotEnoughShares("need " + std::to_string(need) + " shares, have " +
                              std::to_string(shares.size()));
    const int stripes = static_cast<int>(shares[0].stripes.size());
    std::set<int> seen;
    std::vector<int> idx;
    for (const auto& s : shares) {
        check_share_shape(s, n, alpha, stripes);
        if (!seen.insert(s.node).second) throw InvalidParams("duplicate share");
        idx.push_back(s.node - 1);
    }
    return idx;
}

} // namespace

std::vector<uint32_t> MbrCode::reconstruct(const std::vector<Share>& shares, int p) const {
    const int k = params_.k, d = params_.d, ell = params_.ell;
    if (p < 0) throw InvalidParams("negative p");
    const auto idx = share_row_indices(params_.n, k + 2 * p, shares, d);
    const int stripes = static_cast<int>(shares[0].stripes.size());
    const EncodingMatrix phi = psi_.restrict_rows(idx).restrict_width(k);
    const Matrix sigma = psi_.psi().select_rows(idx).col_slice(k, d);

    std::vector<uint32_t> out;
    for (int s = 0; s < stripes; ++s) {
        std::vector<FeVec> rows;
        for (const auto& sh : shares) rows.push_back(sh.stripes[static_cast<size_t>(s)]);
        const Matrix c = Matrix::from_rows(field(), rows);

        // Phase 1: each of the last d-k columns encodes a column of V.
        Matrix v(field(), k, d - k);
        for (int j = k; j < d; ++j) {
            Observation obs{phi, {}, {}};
            for (int i = 0; i < c.rows(); ++i) obs.received.push_back(c.at(i, j));
            const FeVec col = decode(obs, p);
            for (int i = 0; i < k; ++i) v.set(i, j - k, col[static_cast<size_t>(i)]);
        }
        // Phase 2: subtract Sigma_I V^T, then the first k columns encode S.
        const Matrix cs = c.left_cols(k).sub(sigma.mul(v.transpose()));
        Matrix smat(field(), k, k);
        for (int j = 0; j < k; ++j) {
            Observation obs{phi, {}, {}};
            for (int i = 0; i < cs.rows(); ++i) obs.received.push_back(cs.at(i, j));
            const FeVec col = decode(obs, p);
            for (int i = 0; i < k; ++i) smat.set(i, j, col[static_cast<size_t>(i)]);
        }
        if (!smat.is_symmetric())
            throw DecodeFailure("recovered S is not symmetric (corruption beyond p)");

        walk_cells(k, d, [&](int i, int j) {
            if (i >= ell) out.push_back(j < k ? smat.at(i, j) : v.at(i, j - k));
        });
    }
    return out;
}

DetectResult MbrCode::reconstruct_detect(const std::vector<Share>& shares, int p) const {
    const int k = params_.k, d = params_.d;
    if (p < 0) throw InvalidParams("negative p");
    const auto idx = share_row_indices(params_.n, k + p, shares, d);
    const int stripes = static_cast<int>(shares[0].stripes.size());
    const EncodingMatrix phi = psi_.restrict_rows(idx).restrict_width(k);
    const Matrix phi_m = phi.psi();

    for (int s = 0; s < stripes; ++s) {
        std::vector<FeVec> rows;
        for (const auto& sh : shares) rows.push_back(sh.stripes[static_cast<size_t>(s)]);
        const Matrix c = Matrix::from_rows(field(), rows);

        // Every column of C_I must be consistent; with <= p corrupt rows any
        // effective corruption breaks some column (min distance p+1).
        Matrix v(field(), k, d - k);
        for (int j = k; j < d; ++j) {
            FeVec col;
            for (int i = 0; i < c.rows(); ++i) col.push_back(c.at(i, j));
            auto sol = phi_m.try_solve(col);
            if (!sol) return DetectResult::corrupted;
            for (int i = 0; i < k; ++i) v.set(i, j - k, (*sol)[static_cast<size_t>(i)]);
        }
        const Matrix sigma = psi_.psi().select_rows(idx).col_slice(k, d);
        const Matrix cs = c.left_cols(k).sub(sigma.mul(v.transpose()));
        Matrix smat(field(), k, k);
        for (int j = 0; j < k; ++j) {
            FeVec col;
            for (int i = 0; i < cs.rows(); ++i) col.push_back(cs.at(i, j));
            auto sol = phi_m.try_solve(col);
            if (!sol) return DetectResult::corrupted;
            for (int i = 0; i < k; ++i) smat.set(i, j, (*sol)[static_cast<size_t>(i)]);
        }
        if (!smat.is_symmetric()) return DetectResult::corrupted;
    }
    return DetectResult::clean;
}

} // namespace pmrc
