#include "masw/dense.hpp"

#include <cmath>
#include <utility>

namespace masw {

DenseMatrix to_dense(const BandedStiffnessMatrix& banded) {
    DenseMatrix dense(banded.order());
    for (std::size_t i = 0; i < banded.order(); ++i)
        for (std::size_t j = 0; j < banded.order(); ++j) dense(i, j) = banded.at(i, j);
    return dense;
}

Complex dense_determinant(DenseMatrix a, std::uint64_t* flops) {
    const std::size_t n = a.order;
    std::uint64_t count = 0;
    Complex det = 1.0;
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t best = p;
        for (std::size_t i = p + 1; i < n; ++i)
            if (std::abs(a(i, p)) > std::abs(a(best, p))) best = i;
        if (a(best, p) == Complex{}) {
            if (flops) *flops += count;
            return Complex{};
        }
        if (best != p) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(best, j));
            det = -det;
        }
        const Complex pivot = a(p, p);
        det *= pivot;
        ++count;
        for (std::size_t i = p + 1; i < n; ++i) {
            const Complex factor = a(i, p) / pivot;
            ++count;
            for (std::size_t j = p + 1; j < n; ++j) a(i, j) -= factor * a(p, j);
            count += 2 * (n - p - 1);
        }
    }
    if (flops) *flops += count;
    return det;
}

}  // namespace masw
