#include "pmrc/msr.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace pmrc {

namespace {

// One distinct cell of the stacked message matrix [S1; S2], row <= col.
struct Cell {
    int mat;     // 1 or 2
    int row, col;
};

} // namespace

MsrParams msr_derive(int n, int k, int d, int beta, int ell, int m) {
    if (k < 2) throw InvalidParams("MSR needs k >= 2");
    if (d < 2 * k - 2) throw InvalidParams("unsupported regime: d < 2k-2");
    if (d > n - 1) throw InvalidParams("MSR needs d <= n-1");
    if (beta < 1) throw InvalidParams("beta must be >= 1");
    if (m < 0 || ell < m || ell >= k) throw InvalidParams("secrecy needs 0 <= m <= ell < k");
    MsrParams p{n, k, d, beta, ell, m};
    // d*beta = alpha + (k-1)*beta must hold exactly.
    if (static_cast<long>(d) * beta != p.alpha() + static_cast<long>(k - 1) * beta)
        throw InvalidParams("MSR identity violated"); // unreachable
    return p;
}

MsrCode::MsrCode(MsrParams params, EncodingMatrix base_psi)
    : MsrCode(params, std::move(base_psi),
              (params.ell == 0 && params.shorten_i() > 0) ? MsrLayout::systematic
                                                          : MsrLayout::canonical) {}

MsrCode MsrCode::systematic(MsrParams params, EncodingMatrix base_psi) {
    if (params.ell > 0) throw InvalidParams("a secure code cannot be systematic");
    return MsrCode(params, std::move(base_psi), MsrLayout::systematic);
}

MsrCode::MsrCode(MsrParams params, EncodingMatrix base_psi, MsrLayout layout)
    : params_(params), base_psi_(std::move(base_psi)), layout_(layout) {
    const int alpha = params_.alpha_unit();
    if (base_psi_.n() != params_.base_n() || base_psi_.d() != params_.base_d())
        throw InvalidParams("encoding matrix shape does not match the base (n+i, d+i) code");
    if (base_psi_.flavor() != PsiFlavor::vandermonde || !base_psi_.points())
        throw InvalidParams("MSR needs a vandermonde encoding matrix");
    std::set<uint32_t> lam_seen;
    for (uint32_t x : *base_psi_.points()) {
        const uint32_t lam = field().pow(x, static_cast<uint64_t>(alpha));
        if (!lam_seen.insert(lam).second)
            throw InvalidParams("evaluation points must have distinct alpha-th powers");
        lambda_.push_back(lam);
    }
}

FeVec MsrCode::phi_row(int base_row) const {
    const int alpha = params_.alpha_unit();
    FeVec phi(static_cast<size_t>(alpha));
    const uint32_t x = (*base_psi_.points())[static_cast<size_t>(base_row)];
    uint32_t p = 1;
    for (int j = 0; j < alpha; ++j) {
        phi[static_cast<size_t>(j)] = p;
        p = field().mul(p, x);
    }
    return phi;
}

uint32_t MsrCode::lambda_of(int base_row) const { return lambda_[static_cast<size_t>(base_row)]; }

namespace {

// Enumerate the distinct cells of [S1; S2] in canonical order (S1 upper
// triangle row-major, then S2), tagging each as message / random /
// deterministic. The random regions are those of the base {l+i, m} secure
// construction; the deterministic subset is the one re-solved so that the
// first i base node rows vanish.
struct CellPlan {
    std::vector<Cell> message, random, deterministic;
};

CellPlan plan_cells(int alpha, int ell_base, int m, int i) {
    CellPlan plan;
    for (int r = 0; r < alpha; ++r) {
        for (int c = r; c < alpha; ++c) {
            const Cell cell{1, r, c};
            if (r < i)
                plan.deterministic.push_back(cell);
            else if (r < ell_base)
                plan.random.push_back(cell);
            else
                plan.message.push_back(cell);
        }
    }
    for (int r = 0; r < alpha; ++r) {
        for (int c = r; c < alpha; ++c) {
            const Cell cell{2, r, c};
            if (c < i - 1)
                plan.deterministic.push_back(cell);
            else if (c < ell_base - 1 || r < m)
                plan.random.push_back(cell);
            else
                plan.message.push_back(cell);
        }
    }
    return plan;
}

void set_cell(Matrix& m1, Matrix& m2, const Cell& c, uint32_t v) {
    Matrix& m = c.mat == 1 ? m1 : m2;
    m.set(c.row, c.col, v);
    m.set(c.col, c.row, v);
}

uint32_t get_cell(const Matrix& s1, const Matrix& s2, const Cell& c) {
    return (c.mat == 1 ? s1 : s2).at(c.row, c.col);
}

Matrix stack(const Matrix& s1, const Matrix& s2) {
    Matrix m(s1.field(), s1.rows() + s2.rows(), s1.cols());
    for (int i = 0; i < s1.rows(); ++i)
        for (int j = 0; j < s1.cols(); ++j) m.set(i, j, s1.at(i, j));
    for (int i = 0; i < s2.rows(); ++i)
        for (int j = 0; j < s2.cols(); ++j) m.set(s1.rows() + i, j, s2.at(i, j));
    return m;
}

} // namespace

Matrix MsrCode::message_matrix(std::span<const uint32_t> message,
                               std::span<const uint32_t> randomness) const {
    const int alpha = params_.alpha_unit();
    const int i = params_.shorten_i();
    const PrimeField& f = field();
    if (static_cast<int>(message.size()) != message_len())
        throw ShortMessage("stripe message length != B*");
    if (static_cast<int>(randomness.size()) != randomness_len())
        throw InvalidParams("stripe randomness length != R");

    Matrix s1(f, alpha, alpha), s2(f, alpha, alpha);

    if (layout_ == MsrLayout::systematic) {
        // Solve Psi_k' M = U with the first i systematic rows zeroed; the
        // p = 0 reconstruction path computes M.
        const int bk = params_.base_k();
        Matrix u(f, bk, alpha);
        size_t mi = 0;
        for (int r = i; r < bk; ++r)
            for (int c = 0; c < alpha; ++c) u.set(r, c, message[mi++]);
        std::vector<int> rows(static_cast<size_t>(bk));
        for (int r = 0; r < bk; ++r) rows[static_cast<size_t>(r)] = r;
        auto [rs1, rs2] = recover_message_matrix(rows, u, 0);
        return stack(rs1, rs2);
    }

    const CellPlan plan = plan_cells(alpha, params_.base_ell(), params_.m, i);
    size_t mi = 0, ri = 0;
    for (const Cell& c : plan.message) set_cell(s1, s2, c, message[mi++]);
    for (const Cell& c : plan.random) set_cell(s1, s2, c, randomness[ri++]);

    if (i > 0) {
        // Choose the i*alpha deterministic cells so that Psi'_i [S1; S2] = 0.
        const int nunk = static_cast<int>(plan.deterministic.size());
        Matrix sys(f, i * alpha, nunk);
        FeVec rhs(static_cast<size_t>(i * alpha), 0);
        for (int t = 0; t < i; ++t) {
            const FeVec phi = phi_row(t);
            const uint32_t lam = lambda_of(t);
            for (int c = 0; c < alpha; ++c) {
                const int eq = t * alpha + c;
                // sum_r phi[r] * S1[r][c] + lam * sum_r phi[r] * S2[r][c] = 0
                auto add_term = [&](int mat, int r, uint32_t coeff) {
                    const Cell key{mat, std::min(r, c), std::max(r, c)};
                    for (int u = 0; u < nunk; ++u) {
                        const Cell& uc = plan.deterministic[static_cast<size_t>(u)];
                        if (uc.mat == key.mat && uc.row == key.row && uc.col == key.col) {
                            sys.set(eq, u, f.add(sys.at(eq, u), coeff));
                            return;
                        }
                    }
                    // Known cell: move its contribution to the rhs.
                    const uint32_t v = get_cell(s1, s2, key);
                    rhs[static_cast<size_t>(eq)] =
                        f.sub(rhs[static_cast<size_t>(eq)], f.mul(coeff, v));
                };
                for (int r = 0; r < alpha; ++r) {
                    add_term(1, r, phi[static_cast<size_t>(r)]);
                    add_term(2, r, f.mul(lam, phi[static_cast<size_t>(r)]));
                }
            }
        }
        const FeVec sol = sys.solve(rhs);
        for (int u = 0; u < nunk; ++u)
            set_cell(s1, s2, plan.deterministic[static_cast<size_t>(u)], sol[static_cast<size_t>(u)]);
    }
    return stack(s1, s2);
}

std::vector<Share> MsrCode::encode(std::span<const uint32_t> message,
                                   std::span<const uint32_t> randomness) const {
    const int stripes = stripes_of(message);
    if (randomness.size() != static_cast<size_t>(stripes) * static_cast<size_t>(randomness_len()))
        throw InvalidParams("randomness length != R x stripes");

    const int i = params_.shorten_i();
    std::vector<Share> shares(static_cast<size_t>(params_.n));
    for (int j = 0; j < params_.n; ++j) shares[static_cast<size_t>(j)].node = j + 1;
    const size_t bstar = static_cast<size_t>(message_len());
    const size_t rlen = static_cast<size_t>(randomness_len());
    for (int s = 0; s < stripes; ++s) {
        const Matrix m = message_matrix(message.subspan(s * bstar, bstar),
                                        randomness.subspan(s * rlen, rlen));
        const Matrix c = base_psi_.psi().mul(m);
        for (int j = 0; j < params_.n; ++j) {
            const auto row = c.row(i + j);
            shares[static_cast<size_t>(j)].stripes.emplace_back(row.begin(), row.end());
        }
    }
    return shares;
}

FeVec MsrCode::helper_symbol(const Share& helper, int failed) const {
    if (failed < 1 || failed > params_.n) throw InvalidParams("failed node out of range");
    const FeVec phi_f = phi_row(failed - 1 + params_.shorten_i());
    FeVec out;
    out.reserve(helper.stripes.size());
    for (const auto& stripe : helper.stripes) out.push_back(dot(field(), stripe, phi_f));
    return out;
}

namespace {

void check_helpers(int n, int need, int failed, const std::vector<HelperSymbols>& helpers,
                   int stripes) {
    if (static_cast<int>(helpers.size()) < need)
        throw NotEnoughHelpers("need " + std::to_string(need) + " helpers, have " +
                               std::to_string(helpers.size()));
    std::set<int> seen;
    for (const auto& h : helpers) {
        if (h.node < 1 || h.node > n) throw InvalidParams("helper index out of range");
        if (h.node == failed) throw InvalidParams("failed node cannot help its own repair");
        if (!seen.insert(h.node).second) throw InvalidParams("duplicate helper");
        if (static_cast<int>(h.symbols.size()) != stripes)
            throw DimensionMismatch("helper symbol count mismatch");
    }
}

} // namespace

Share MsrCode::repair(int failed, const std::vector<HelperSymbols>& helpers, int p) const {
    if (failed < 1 || failed > params_.n) throw InvalidParams("failed node out of range");
    if (p < 0 || params_.d + 2 * p > params_.n - 1) throw InvalidParams("infeasible p");
    const int stripes = helpers.empty() ? 0 : static_cast<int>(helpers[0].symbols.size());
    check_helpers(params_.n, params_.d + 2 * p, failed, helpers, stripes);

    const int i = params_.shorten_i();
    const int alpha = params_.alpha_unit();
    // Operate in the base code: the i virtual nodes hold all-zero data and
    // pass zeros; they are never corrupt.
    std::vector<int> rows;
    for (int t = 0; t < i; ++t) rows.push_back(t);
    for (const auto& h : helpers) rows.push_back(h.node - 1 + i);
    const EncodingMatrix gen = base_psi_.restrict_rows(rows);
    const uint32_t lam_f = lambda_of(failed - 1 + i);

    Share out;
    out.node = failed;
    for (int s = 0; s < stripes; ++s) {
        Observation obs{gen, FeVec(static_cast<size_t>(i), 0), {}};
        for (const auto& h : helpers) obs.received.push_back(h.symbols[static_cast<size_t>(s)]);
        const FeVec mu = decode(obs, p); // [S1 phi_f ; S2 phi_f]
        FeVec stored(static_cast<size_t>(alpha));
        for (int c = 0; c < alpha; ++c)
            stored[static_cast<size_t>(c)] = field().add(
                mu[static_cast<size_t>(c)], field().mul(lam_f, mu[static_cast<size_t>(alpha + c)]));
        out.stripes.push_back(std::move(stored));
    }
    return out;
}

DetectResult MsrCode::repair_detect(int failed, const std::vector<HelperSymbols>& helpers,
                                    int p) const {
    if (failed < 1 || failed > params_.n) throw InvalidParams("failed node out of range");
    if (p < 0) throw InvalidParams("negative detection budget");
    const int stripes = helpers.empty() ? 0 : static_cast<int>(helpers[0].symbols.size());
    check_helpers(params_.n, params_.d + p, failed, helpers, stripes);
    const int i = params_.shorten_i();
    std::vector<int> rows;
    for (int t = 0; t < i; ++t) rows.push_back(t);
    for (const auto& h : helpers) rows.push_back(h.node - 1 + i);
    const EncodingMatrix gen = base_psi_.restrict_rows(rows);
    for (int s = 0; s < stripes; ++s) {
        Observation obs{gen, FeVec(static_cast<size_t>(i), 0), {}};
        for (const auto& h : helpers) obs.received.push_back(h.symbols[static_cast<size_t>(s)]);
        if (detect(obs, p) == DetectResult::corrupted) return DetectResult::corrupted;
    }
    return DetectResult::clean;
}

std::pair<Matrix, Matrix> MsrCode::recover_message_matrix(const std::vector<int>& base_rows,
                                                          const Matrix& data, int p) const {
    const PrimeField& f = field();
    const int alpha = params_.alpha_unit();
    const int kap = static_cast<int>(base_rows.size());

    std::vector<FeVec> phis;
    for (int r : base_rows) phis.push_back(phi_row(r));
    const Matrix phi_m = Matrix::from_rows(f, phis);
    FeVec pts;
    for (int r : base_rows) pts.push_back((*base_psi_.points())[static_cast<size_t>(r)]);

    // G = C_I Phi_I^T; row corruption is preserved, columns mix.
    const Matrix g = data.mul(phi_m.transpose());

    // Solve the off-diagonal entries of P = Phi S1 Phi^T and Q = Phi S2 Phi^T
    // from the symmetry pairs; lambda_i != lambda_j makes each pair regular.
    Matrix pm(f, kap, kap), qm(f, kap, kap);
    for (int i = 0; i < kap; ++i) {
        for (int j = i + 1; j < kap; ++j) {
            const uint32_t li = lambda_of(base_rows[static_cast<size_t>(i)]);
            const uint32_t lj = lambda_of(base_rows[static_cast<size_t>(j)]);
            const uint32_t det = f.sub(li, lj);
            const uint32_t qij = f.mul(f.sub(g.at(i, j), g.at(j, i)), f.inv(det));
            const uint32_t pij = f.sub(g.at(i, j), f.mul(li, qij));
            pm.set(i, j, pij);
            pm.set(j, i, pij);
            qm.set(i, j, qij);
            qm.set(j, i, qij);
        }
    }

    auto recover_one = [&](const Matrix& mat) {
        // First stage: column j (diagonal excluded) encodes S phi_j under the
        // generator Phi restricted to I \ {j}. A column that fails to decode
        // is demoted to an erasure for the second stage.
        std::vector<std::optional<FeVec>> cols(static_cast<size_t>(kap));
        int bad = 0;
        for (int j = 0; j < kap; ++j) {
            FeVec pts_j, recv;
            for (int i = 0; i < kap; ++i) {
                if (i == j) continue;
                pts_j.push_back(pts[static_cast<size_t>(i)]);
                recv.push_back(mat.at(i, j));
            }
            const EncodingMatrix gen = EncodingMatrix::vandermonde_from_points(f, pts_j, alpha);
            try {
                cols[static_cast<size_t>(j)] = decode_bw(Observation{gen, recv, {}}, p);
            } catch (const DecodeFailure&) {
                ++bad;
            }
        }
        if (bad > p) throw DecodeFailure("more than p corrupt columns in the first stage");

        // Second stage: row r of [S phi_j]_j is an encoding of S row r under
        // the surviving phi_j rows, with budget reduced by the erasures.
        Matrix s(f, alpha, alpha);
        FeVec good_pts;
        for (int j = 0; j < kap; ++j)
            if (cols[static_cast<size_t>(j)]) good_pts.push_back(pts[static_cast<size_t>(j)]);
        const EncodingMatrix gen = EncodingMatrix::vandermonde_from_points(f, good_pts, alpha);
        for (int r = 0; r < alpha; ++r) {
            FeVec recv;
            for (int j = 0; j < kap; ++j)
                if (cols[static_cast<size_t>(j)])
                    recv.push_back((*cols[static_cast<size_t>(j)])[static_cast<size_t>(r)]);
            const FeVec row = decode_bw(Observation{gen, recv, {}}, p - bad);
            for (int c = 0; c < alpha; ++c) s.set(r, c, row[static_cast<size_t>(c)]);
        }
        if (!s.is_symmetric())
            throw DecodeFailure("recovered message matrix is not symmetric (corruption beyond p)");
        return s;
    };

    return {recover_one(pm), recover_one(qm)};
}

std::vector<uint32_t> MsrCode::reconstruct(const std::vector<Share>& shares, int p) const {
    const int alpha = params_.alpha_unit();
    const int i = params_.shorten_i();
    if (p < 0) throw InvalidParams("negative p");
    if (static_cast<int>(shares.size()) < params_.k + 2 * p)
        throw NotEnoughShares("need " + std::to_string(params_.k + 2 * p) + " shares, have " +
                              std::to_string(shares.size()));
    const int stripes = static_cast<int>(shares[0].stripes.size());
    std::set<int> seen;
    for (const auto& s : shares) {
        if (s.node < 1 || s.node > params_.n) throw InvalidParams("share node index out of range");
        if (!seen.insert(s.node).second) throw InvalidParams("duplicate share");
        if (static_cast<int>(s.stripes.size()) != stripes)
            throw DimensionMismatch("share stripe count mismatch");
        for (const auto& v : s.stripes)
            if (static_cast<int>(v.size()) != alpha)
                throw DimensionMismatch("share stripe length != alpha");
    }

    std::vector<int> rows;
    for (int t = 0; t < i; ++t) rows.push_back(t);
    for (const auto& s : shares) rows.push_back(s.node - 1 + i);

    std::vector<uint32_t> out;
    for (int s = 0; s < stripes; ++s) {
        std::vector<FeVec> data(static_cast<size_t>(i), FeVec(static_cast<size_t>(alpha), 0));
        for (const auto& sh : shares) data.push_back(sh.stripes[static_cast<size_t>(s)]);
        auto [s1, s2] = recover_message_matrix(rows, Matrix::from_rows(field(), data), p);

        if (layout_ == MsrLayout::systematic) {
            const Matrix m = stack(s1, s2);
            const int bk = params_.base_k();
            std::vector<int> head(static_cast<size_t>(bk));
            for (int r = 0; r < bk; ++r) head[static_cast<size_t>(r)] = r;
            const Matrix u = base_psi_.psi().select_rows(head).mul(m);
            for (int r = i; r < bk; ++r)
                for (int c = 0; c < alpha; ++c) out.push_back(u.at(r, c));
        } else {
            const CellPlan plan = plan_cells(alpha, params_.base_ell(), params_.m, i);
            for (const Cell& c : plan.message) out.push_back(get_cell(s1, s2, c));
        }
    }
    return out;
}

DetectResult MsrCode::reconstruct_detect(const std::vector<Share>& shares, int p) const {
    const PrimeField& f = field();
    const int alpha = params_.alpha_unit();
    const int i = params_.shorten_i();
    if (p < 0) throw InvalidParams("negative detection budget");
    if (static_cast<int>(shares.size()) < params_.k + p)
        throw NotEnoughShares("detection needs k + p shares");
    const int stripes = static_cast<int>(shares[0].stripes.size());

    std::vector<int> rows;
    for (int t = 0; t < i; ++t) rows.push_back(t);
    for (const auto& s : shares) rows.push_back(s.node - 1 + i);
    const int kap = static_cast<int>(rows.size());
    std::vector<FeVec> phis;
    for (int r : rows) phis.push_back(phi_row(r));
    const Matrix phi_m = Matrix::from_rows(f, phis);

    for (int s = 0; s < stripes; ++s) {
        std::vector<FeVec> data(static_cast<size_t>(i), FeVec(static_cast<size_t>(alpha), 0));
        for (const auto& sh : shares) data.push_back(sh.stripes[static_cast<size_t>(s)]);
        const Matrix g = Matrix::from_rows(f, data).mul(phi_m.transpose());
        for (int j = 0; j < kap; ++j) {
            Matrix sub(f, kap - 1, alpha);
            FeVec pcol, qcol;
            int idx2 = 0;
            for (int r = 0; r < kap; ++r) {
                if (r == j) continue;
                const uint32_t lr = lambda_of(rows[static_cast<size_t>(r)]);
                const uint32_t lj = lambda_of(rows[static_cast<size_t>(j)]);
                const uint32_t det = f.sub(lr, lj);
                const uint32_t qrj = f.mul(f.sub(g.at(r, j), g.at(j, r)), f.inv(det));
                const uint32_t prj = f.sub(g.at(r, j), f.mul(lr, qrj));
                for (int c = 0; c < alpha; ++c) sub.set(idx2, c, phi_m.at(r, c));
                pcol.push_back(prj);
                qcol.push_back(qrj);
                ++idx2;
            }
            if (!sub.consistent(pcol) || !sub.consistent(qcol)) return DetectResult::corrupted;
        }
    }
    return DetectResult::clean;
}

} // namespace pmrc
