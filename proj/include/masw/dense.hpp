#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "masw/stiffness.hpp"

namespace masw {

/// Row-major dense complex matrix; only used as an O(n^3) reference.
struct DenseMatrix {
    std::size_t order = 0;
    std::vector<Complex> entries;

    explicit DenseMatrix(std::size_t n = 0) : order(n), entries(n * n) {}
    Complex& operator()(std::size_t i, std::size_t j) { return entries[i * order + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries[i * order + j]; }
};

DenseMatrix to_dense(const BandedStiffnessMatrix& banded);

/// LU with partial pivoting over the full matrix. `flops` counts the same
/// complex operations as EliminationStats.
Complex dense_determinant(DenseMatrix matrix, std::uint64_t* flops = nullptr);

}  // namespace masw
