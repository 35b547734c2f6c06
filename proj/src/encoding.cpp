#include "pmrc/encoding.hpp"

#include <set>
#include <string>

namespace pmrc {

namespace {

Matrix vandermonde_rows(const PrimeField& f, const FeVec& points, int d) {
    Matrix m(f, static_cast<int>(points.size()), d);
    for (int i = 0; i < m.rows(); ++i) {
        uint32_t p = 1;
        for (int j = 0; j < d; ++j) {
            m.set(i, j, p);
            p = f.mul(p, points[static_cast<size_t>(i)]);
        }
    }
    return m;
}

void check_vandermonde_points(const PrimeField& f, const FeVec& points, int d,
                              std::optional<int> alpha_distinct) {
    std::set<uint32_t> seen;
    for (uint32_t x : points) {
        if (x >= f.modulus()) throw InvalidParams("evaluation point not a field element");
        if (!seen.insert(x).second) throw InvalidParams("repeated evaluation point");
    }
    if (static_cast<int>(points.size()) < d)
        throw InvalidParams("need at least d evaluation points");
    if (alpha_distinct) {
        std::set<uint32_t> powers;
        for (uint32_t x : points) {
            if (!powers.insert(f.pow(x, static_cast<uint64_t>(*alpha_distinct))).second)
                throw InvalidParams("evaluation points with equal alpha-th powers");
        }
    }
}

} // namespace

EncodingMatrix EncodingMatrix::vandermonde(const PrimeField& field, int n, int d,
                                           std::optional<int> alpha_distinct) {
    if (n < 1 || d < 1) throw InvalidParams("vandermonde needs n >= 1, d >= 1");
    FeVec points;
    std::set<uint32_t> powers;
    for (uint32_t x = 0; x < field.modulus() && static_cast<int>(points.size()) < n; ++x) {
        if (alpha_distinct) {
            if (!powers.insert(field.pow(x, static_cast<uint64_t>(*alpha_distinct))).second)
                continue;
        }
        points.push_back(x);
    }
    if (static_cast<int>(points.size()) < n)
        throw FieldTooSmall("only " + std::to_string(points.size()) + " admissible points in GF(" +
                            std::to_string(field.modulus()) + "), need " + std::to_string(n));
    if (n < d) throw InvalidParams("vandermonde needs n >= d");
    Matrix rows = vandermonde_rows(field, points, d);
    return EncodingMatrix(std::move(rows), PsiFlavor::vandermonde, std::move(points));
}

EncodingMatrix EncodingMatrix::vandermonde_from_points(const PrimeField& field, const FeVec& points,
                                                       int d, std::optional<int> alpha_distinct) {
    check_vandermonde_points(field, points, d, alpha_distinct);
    return EncodingMatrix(vandermonde_rows(field, points, d), PsiFlavor::vandermonde, points);
}

EncodingMatrix EncodingMatrix::systematic_mbr(const PrimeField& field, int n, int k, int d) {
    if (k < 1 || d < k || n <= d) throw InvalidParams("systematic-mbr needs 1 <= k <= d < n");
    // Bottom block is Cauchy: 1/(x_i - y_j) with y_j = j and x_i = d + i.
    if (field.modulus() < static_cast<uint32_t>(n - k + d))
        throw FieldTooSmall("GF(" + std::to_string(field.modulus()) + ") cannot host a " +
                            std::to_string(n - k) + "x" + std::to_string(d) + " Cauchy block");
    Matrix m(field, n, d);
    for (int i = 0; i < k; ++i) m.set(i, i, 1);
    for (int i = 0; i < n - k; ++i) {
        const uint32_t x = static_cast<uint32_t>(d + i);
        for (int j = 0; j < d; ++j) {
            m.set(k + i, j, field.inv(field.sub(x, static_cast<uint32_t>(j))));
        }
    }
    return EncodingMatrix(std::move(m), PsiFlavor::systematic_mbr, std::nullopt);
}

EncodingMatrix EncodingMatrix::from_rows(const PrimeField& field, const std::vector<FeVec>& rows) {
    Matrix m = Matrix::from_rows(field, rows);
    if (m.rows() < m.cols()) throw InvalidParams("need at least d rows");
    EncodingMatrix em(std::move(m), PsiFlavor::custom, std::nullopt);
    if (!em.all_minors_nonsingular(em.d()))
        throw InvalidParams("some d rows are linearly dependent");
    return em;
}

EncodingMatrix EncodingMatrix::restrict_rows(std::span<const int> idx) const {
    std::optional<FeVec> pts;
    if (points_) {
        pts.emplace();
        pts->reserve(idx.size());
        for (int i : idx) {
            if (i < 0 || i >= n()) throw DimensionMismatch("row index out of range");
            pts->push_back((*points_)[static_cast<size_t>(i)]);
        }
    }
    return EncodingMatrix(psi_.select_rows(idx), flavor_, std::move(pts));
}

EncodingMatrix EncodingMatrix::restrict_width(int w) const {
    return EncodingMatrix(psi_.left_cols(w), flavor_, points_);
}

bool EncodingMatrix::all_minors_nonsingular(int w) const {
    if (w < 1 || w > d()) throw InvalidParams("minor width out of range");
    const Matrix phi = psi_.left_cols(w);
    std::vector<int> idx(static_cast<size_t>(w));
    for (int i = 0; i < w; ++i) idx[static_cast<size_t>(i)] = i;
    // Enumerate all w-subsets of rows in lexicographic order.
    while (true) {
        if (phi.select_rows(idx).rank() != w) return false;
        int i = w - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n() - w + i) --i;
        if (i < 0) break;
        ++idx[static_cast<size_t>(i)];
        for (int j = i + 1; j < w; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
    return true;
}

} // namespace pmrc
