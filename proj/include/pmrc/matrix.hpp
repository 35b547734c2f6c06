#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pmrc/field.hpp"

namespace pmrc {

using FeVec = std::vector<uint32_t>;

// Dense row-major matrix over one prime field. Values are kept reduced.
class Matrix {
public:
    Matrix(const PrimeField& field, int rows, int cols);
    static Matrix identity(const PrimeField& field, int n);
    static Matrix from_rows(const PrimeField& field, const std::vector<FeVec>& rows);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    const PrimeField& field() const noexcept { return field_; }

    uint32_t at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
    void set(int r, int c, uint32_t v) { a_[static_cast<size_t>(r) * cols_ + c] = v % field_.modulus(); }

    std::span<const uint32_t> row(int r) const {
        return {a_.data() + static_cast<size_t>(r) * cols_, static_cast<size_t>(cols_)};
    }

    Matrix mul(const Matrix& rhs) const;
    FeVec mul_vec(std::span<const uint32_t> v) const;
    Matrix add(const Matrix& rhs) const;
    Matrix sub(const Matrix& rhs) const;
    Matrix transpose() const;

    Matrix select_rows(std::span<const int> idx) const;  // 0-based
    Matrix left_cols(int w) const;
    Matrix col_slice(int from, int to) const;  // columns [from, to)

    int rank() const;
    bool is_symmetric() const;

    // Unique exact solution of (*this) x = y over all rows; throws
    // SingularSystem when the system is rank-deficient or inconsistent.
    FeVec solve(std::span<const uint32_t> y) const;
    // Same contract without the throw.
    std::optional<FeVec> try_solve(std::span<const uint32_t> y) const;
    // True iff some x satisfies every row exactly (rank may be anything).
    bool consistent(std::span<const uint32_t> y) const;
    // Basis of { x : (*this) x = 0 }.
    std::vector<FeVec> nullspace() const;

    bool operator==(const Matrix& o) const;

private:
    int rows_, cols_;
    PrimeField field_;
    std::vector<uint32_t> a_;
};

uint32_t dot(const PrimeField& f, std::span<const uint32_t> a, std::span<const uint32_t> b);

} // namespace pmrc
