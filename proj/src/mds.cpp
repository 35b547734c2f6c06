#include "pmrc/mds.hpp"

#include <algorithm>
#include <string>

namespace pmrc {

void Observation::validate() const {
    if (static_cast<int>(received.size()) != generator.n())
        throw DimensionMismatch("received symbols do not match generator rows");
    for (int e : erased) {
        if (e < 0 || e >= generator.n()) throw DimensionMismatch("erased index out of range");
    }
}

namespace {

struct Rows {
    Matrix gen;     // usable generator rows
    FeVec recv;     // usable received symbols
    FeVec points;   // evaluation points (vandermonde only)
};

Rows usable_rows(const Observation& obs) {
    std::vector<int> keep;
    for (int i = 0; i < obs.generator.n(); ++i) {
        if (!obs.erased.count(i)) keep.push_back(i);
    }
    Rows r{obs.generator.psi().select_rows(keep), {}, {}};
    for (int i : keep) r.recv.push_back(obs.received[static_cast<size_t>(i)]);
    if (obs.generator.points()) {
        for (int i : keep) r.points.push_back((*obs.generator.points())[static_cast<size_t>(i)]);
    }
    return r;
}

void require_budget_rows(const Observation& obs, int p) {
    obs.validate();
    if (p < 0) throw InvalidParams("negative error budget");
    if (obs.usable() < obs.width() + 2 * p)
        throw InvalidParams("need at least d + 2p non-erased rows, have " +
                            std::to_string(obs.usable()));
}

int mismatches(const Matrix& gen, const FeVec& recv, const FeVec& msg) {
    int bad = 0;
    for (int i = 0; i < gen.rows(); ++i) {
        if (dot(gen.field(), gen.row(i), msg) != recv[static_cast<size_t>(i)]) ++bad;
    }
    return bad;
}

// Remainder-checked polynomial long division; poly coefficients ascending.
std::optional<FeVec> poly_divide_exact(const PrimeField& f, FeVec num, const FeVec& den) {
    int dd = static_cast<int>(den.size()) - 1;
    while (dd >= 0 && den[static_cast<size_t>(dd)] == 0) --dd;
    if (dd < 0) return std::nullopt; // division by zero polynomial
    const uint32_t lead_inv = f.inv(den[static_cast<size_t>(dd)]);
    const int nn = static_cast<int>(num.size()) - 1;
    if (nn < dd) {
        for (uint32_t c : num)
            if (c != 0) return std::nullopt;
        return FeVec{0};
    }
    FeVec quot(static_cast<size_t>(nn - dd + 1), 0);
    for (int i = nn - dd; i >= 0; --i) {
        const uint32_t c = f.mul(num[static_cast<size_t>(i + dd)], lead_inv);
        quot[static_cast<size_t>(i)] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dd; ++j)
            num[static_cast<size_t>(i + j)] =
                f.sub(num[static_cast<size_t>(i + j)], f.mul(c, den[static_cast<size_t>(j)]));
    }
    for (uint32_t c : num)
        if (c != 0) return std::nullopt; // nonzero remainder
    return quot;
}

} // namespace

FeVec decode_bw(const Observation& obs, int p) {
    require_budget_rows(obs, p);
    if (obs.generator.flavor() != PsiFlavor::vandermonde)
        throw InvalidParams("decode_bw requires a vandermonde generator");

    const PrimeField& f = obs.generator.field();
    const Rows r = usable_rows(obs);
    const int n = r.gen.rows();
    const int w = r.gen.cols();

    // Fast path: interpolate from the first w rows and verify the rest.
    // A fully consistent fit is THE codeword within radius p (min distance
    // 2p+1), and this also covers p = 0 entirely.
    {
        std::vector<int> head(static_cast<size_t>(w));
        for (int i = 0; i < w; ++i) head[static_cast<size_t>(i)] = i;
        const Matrix a = r.gen.select_rows(head);
        FeVec y(r.recv.begin(), r.recv.begin() + w);
        if (auto cand = a.try_solve(y); cand && mismatches(r.gen, r.recv, *cand) == 0)
            return *cand;
    }
    if (p == 0) throw DecodeFailure("received word is not a codeword (p = 0)");

    // Berlekamp-Welch: find polynomials Q (deg < w + p) and E (deg <= p, not
    // both zero) with Q(x_i) = y_i * E(x_i) for every usable row. Any nonzero
    // solution of the linear system yields the message as Q / E when a
    // codeword lies within radius p.
    const int qlen = w + p;
    const int elen = p + 1;
    Matrix sys(f, n, qlen + elen);
    for (int i = 0; i < n; ++i) {
        const uint32_t x = r.points[static_cast<size_t>(i)];
        uint32_t xp = 1;
        for (int j = 0; j < qlen; ++j) {
            sys.set(i, j, xp);
            xp = f.mul(xp, x);
        }
        xp = 1;
        const uint32_t y = r.recv[static_cast<size_t>(i)];
        for (int j = 0; j < elen; ++j) {
            sys.set(i, qlen + j, f.neg(f.mul(y, xp)));
            xp = f.mul(xp, x);
        }
    }
    for (const FeVec& v : sys.nullspace()) {
        FeVec qpoly(v.begin(), v.begin() + qlen);
        FeVec epoly(v.begin() + qlen, v.end());
        auto quot = poly_divide_exact(f, qpoly, epoly);
        if (!quot) continue;
        bool high = false; // message polynomial must have degree < w
        for (size_t j = static_cast<size_t>(w); j < quot->size(); ++j) high |= (*quot)[j] != 0;
        if (high) continue;
        quot->resize(static_cast<size_t>(w), 0);
        if (mismatches(r.gen, r.recv, *quot) <= p) return *quot;
    }
    throw DecodeFailure("no codeword within radius " + std::to_string(p));
}

FeVec decode_exhaustive(const Observation& obs, int p) {
    require_budget_rows(obs, p);
    const Rows r = usable_rows(obs);
    const int n = r.gen.rows();

    std::vector<int> subset;
    // Candidate error sets by size, lexicographic within a size, so ties are
    // deterministic (uniqueness makes the order irrelevant to the value).
    auto attempt = [&](const std::vector<int>& drop) -> std::optional<FeVec> {
        std::vector<int> keep;
        size_t di = 0;
        for (int i = 0; i < n; ++i) {
            if (di < drop.size() && drop[di] == i) { ++di; continue; }
            keep.push_back(i);
        }
        FeVec y;
        for (int i : keep) y.push_back(r.recv[static_cast<size_t>(i)]);
        return r.gen.select_rows(keep).try_solve(y);
    };

    for (int sz = 0; sz <= p; ++sz) {
        subset.resize(static_cast<size_t>(sz));
        for (int i = 0; i < sz; ++i) subset[static_cast<size_t>(i)] = i;
        while (true) {
            if (auto sol = attempt(subset); sol && mismatches(r.gen, r.recv, *sol) <= p)
                return *sol;
            if (sz == 0) break;
            int i = sz - 1;
            while (i >= 0 && subset[static_cast<size_t>(i)] == n - sz + i) --i;
            if (i < 0) break;
            ++subset[static_cast<size_t>(i)];
            for (int j = i + 1; j < sz; ++j)
                subset[static_cast<size_t>(j)] = subset[static_cast<size_t>(j - 1)] + 1;
        }
    }
    throw DecodeFailure("no consistent candidate within radius " + std::to_string(p));
}

FeVec decode(const Observation& obs, int p) {
    return obs.generator.flavor() == PsiFlavor::vandermonde ? decode_bw(obs, p)
                                                            : decode_exhaustive(obs, p);
}

FeVec decode_with_erasures(const Observation& obs, int p, int p_prime) {
    obs.validate();
    if (static_cast<int>(obs.erased.size()) > p_prime)
        throw TooManyErasures(std::to_string(obs.erased.size()) + " erasures exceed declared " +
                              std::to_string(p_prime));
    return decode(obs, p);
}

DetectResult detect(const Observation& obs, int p) {
    obs.validate();
    if (p < 0) throw InvalidParams("negative detection budget");
    if (obs.usable() < obs.width() + p)
        throw InvalidParams("detection needs at least d + p non-erased rows");
    const Rows r = usable_rows(obs);
    return r.gen.consistent(r.recv) ? DetectResult::clean : DetectResult::corrupted;
}

} // namespace pmrc
