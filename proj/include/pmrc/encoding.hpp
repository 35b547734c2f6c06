#pragma once

#include <optional>

#include "pmrc/matrix.hpp"

namespace pmrc {

enum class PsiFlavor { vandermonde, systematic_mbr, custom };

// Fixed n x d encoding matrix. Vandermonde rows are [1, x, ..., x^(d-1)];
// the evaluation points are kept so the Berlekamp-Welch decoder can run on
// row subsets. Non-Vandermonde flavors decode through the exhaustive MDS
// decoder only.
class EncodingMatrix {
public:
    static EncodingMatrix vandermonde(const PrimeField& field, int n, int d,
                                      std::optional<int> alpha_distinct = std::nullopt);
    static EncodingMatrix vandermonde_from_points(const PrimeField& field, const FeVec& points,
                                                  int d,
                                                  std::optional<int> alpha_distinct = std::nullopt);
    static EncodingMatrix systematic_mbr(const PrimeField& field, int n, int k, int d);
    // Arbitrary rows; runs the exhaustive MDS check (desk scale).
    static EncodingMatrix from_rows(const PrimeField& field, const std::vector<FeVec>& rows);

    const Matrix& psi() const noexcept { return psi_; }
    PsiFlavor flavor() const noexcept { return flavor_; }
    int n() const noexcept { return psi_.rows(); }
    int d() const noexcept { return psi_.cols(); }
    const PrimeField& field() const noexcept { return psi_.field(); }

    // Evaluation points; only present for the vandermonde flavor.
    const std::optional<FeVec>& points() const noexcept { return points_; }

    // Row restriction (0-based indices). Keeps flavor and points.
    EncodingMatrix restrict_rows(std::span<const int> idx) const;
    // Column prefix of width w; Vandermonde prefixes stay Vandermonde.
    EncodingMatrix restrict_width(int w) const;

    // True iff every w x w minor over the first w columns is nonsingular.
    // Exhaustive over row subsets, so intended for desk-scale n.
    bool all_minors_nonsingular(int w) const;

private:
    EncodingMatrix(Matrix psi, PsiFlavor flavor, std::optional<FeVec> points)
        : psi_(std::move(psi)), flavor_(flavor), points_(std::move(points)) {}

    Matrix psi_;
    PsiFlavor flavor_;
    std::optional<FeVec> points_;
};

} // namespace pmrc
