#include "pmrc/matrix.hpp"

#include <utility>

namespace pmrc {

Matrix::Matrix(const PrimeField& field, int rows, int cols)
    : rows_(rows), cols_(cols), field_(field),
      a_(static_cast<size_t>(rows) * static_cast<size_t>(cols), 0) {
    if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
}

Matrix Matrix::identity(const PrimeField& field, int n) {
    Matrix m(field, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::from_rows(const PrimeField& field, const std::vector<FeVec>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Matrix m(field, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw DimensionMismatch("ragged rows");
        for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

Matrix Matrix::mul(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionMismatch("matrix product shape");
    if (!(field_ == rhs.field_)) throw FieldMismatch();
    const uint64_t q = field_.modulus();
    Matrix out(field_, rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < rhs.cols_; ++j) {
            uint64_t acc = 0;
            for (int t = 0; t < cols_; ++t) {
                acc += static_cast<uint64_t>(at(i, t)) * rhs.at(t, j) % q;
            }
            out.set(i, j, static_cast<uint32_t>(acc % q));
        }
    }
    return out;
}

FeVec Matrix::mul_vec(std::span<const uint32_t> v) const {
    if (static_cast<int>(v.size()) != cols_) throw DimensionMismatch("matrix-vector shape");
    FeVec out(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) out[i] = dot(field_, row(i), v);
    return out;
}

Matrix Matrix::add(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix sum shape");
    Matrix out(field_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.add(a_[i], rhs.a_[i]);
    return out;
}

Matrix Matrix::sub(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix difference shape");
    Matrix out(field_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.sub(a_[i], rhs.a_[i]);
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
    return out;
}

Matrix Matrix::select_rows(std::span<const int> idx) const {
    Matrix out(field_, static_cast<int>(idx.size()), cols_);
    for (int i = 0; i < out.rows_; ++i) {
        if (idx[i] < 0 || idx[i] >= rows_) throw DimensionMismatch("row index out of range");
        for (int j = 0; j < cols_; ++j) out.set(i, j, at(idx[i], j));
    }
    return out;
}

Matrix Matrix::left_cols(int w) const {
    return col_slice(0, w);
}

Matrix Matrix::col_slice(int from, int to) const {
    if (from < 0 || to < from || to > cols_) throw DimensionMismatch("column slice bounds");
    Matrix out(field_, rows_, to - from);
    for (int i = 0; i < rows_; ++i)
        for (int j = from; j < to; ++j) out.set(i, j - from, at(i, j));
    return out;
}

bool Matrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

namespace {

// In-place reduction to row echelon form of an augmented system [A | Y].
// Returns the pivot column of each eliminated row.
std::vector<int> echelon(std::vector<FeVec>& m, const PrimeField& f, int lhs_cols) {
    std::vector<int> pivots;
    const int rows = static_cast<int>(m.size());
    int r = 0;
    for (int c = 0; c < lhs_cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i) {
            if (m[i][c] != 0) { piv = i; break; }
        }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        const uint32_t iv = f.inv(m[r][c]);
        for (auto& x : m[r]) x = f.mul(x, iv);
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const uint32_t factor = m[i][c];
            for (size_t j = 0; j < m[i].size(); ++j)
                m[i][j] = f.sub(m[i][j], f.mul(factor, m[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

int Matrix::rank() const {
    std::vector<FeVec> m(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) m[i].assign(row(i).begin(), row(i).end());
    return static_cast<int>(echelon(m, field_, cols_).size());
}

std::optional<FeVec> Matrix::try_solve(std::span<const uint32_t> y) const {
    if (static_cast<int>(y.size()) != rows_) throw DimensionMismatch("rhs length");
    std::vector<FeVec> m(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) {
        m[i].assign(row(i).begin(), row(i).end());
        m[i].push_back(y[i] % field_.modulus());
    }
    const auto pivots = echelon(m, field_, cols_);
    if (static_cast<int>(pivots.size()) != cols_) return std::nullopt; // rank-deficient
    for (int i = static_cast<int>(pivots.size()); i < rows_; ++i) {
        if (m[i][static_cast<size_t>(cols_)] != 0) return std::nullopt; // inconsistent
    }
    FeVec x(static_cast<size_t>(cols_));
    for (int i = 0; i < cols_; ++i) x[pivots[i]] = m[i][static_cast<size_t>(cols_)];
    return x;
}

FeVec Matrix::solve(std::span<const uint32_t> y) const {
    auto x = try_solve(y);
    if (!x) throw SingularSystem("no unique solution");
    return *x;
}

bool Matrix::consistent(std::span<const uint32_t> y) const {
    if (static_cast<int>(y.size()) != rows_) throw DimensionMismatch("rhs length");
    std::vector<FeVec> m(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) {
        m[i].assign(row(i).begin(), row(i).end());
        m[i].push_back(y[i] % field_.modulus());
    }
    const auto pivots = echelon(m, field_, cols_);
    for (int i = static_cast<int>(pivots.size()); i < rows_; ++i) {
        if (m[i][static_cast<size_t>(cols_)] != 0) return false;
    }
    return true;
}

std::vector<FeVec> Matrix::nullspace() const {
    std::vector<FeVec> m(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) m[i].assign(row(i).begin(), row(i).end());
    const auto pivots = echelon(m, field_, cols_);
    std::vector<bool> is_pivot(static_cast<size_t>(cols_), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;

    std::vector<FeVec> basis;
    for (int free = 0; free < cols_; ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        FeVec v(static_cast<size_t>(cols_), 0);
        v[static_cast<size_t>(free)] = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<size_t>(pivots[r])] = field_.neg(m[r][static_cast<size_t>(free)]);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && a_ == o.a_;
}

uint32_t dot(const PrimeField& f, std::span<const uint32_t> a, std::span<const uint32_t> b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot product length");
    const uint64_t q = f.modulus();
    uint64_t acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc += static_cast<uint64_t>(a[i]) * b[i] % q;
    return static_cast<uint32_t>(acc % q);
}

} // namespace pmrc
