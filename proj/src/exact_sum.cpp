#include "masw/exact_sum.hpp"

#include <cmath>
#include <utility>

namespace masw {

void ExactSum::add(double x) {
    std::size_t kept = 0;
    for (double y : partials_) {
        if (std::abs(x) < std::abs(y)) std::swap(x, y);
        const double hi = x + y;
        const double lo = y - (hi - x);
        if (lo != 0.0) partials_[kept++] = lo;
        x = hi;
    }
    partials_.resize(kept);
    partials_.push_back(x);
}

void ExactSum::merge(const ExactSum& other) {
    for (double p : other.partials_) add(p);
}

double ExactSum::value() const {
    std::size_t n = partials_.size();
    if (n == 0) return 0.0;
    double hi = partials_[--n];
    double lo = 0.0;
    while (n > 0) {
        const double x = hi;
        const double y = partials_[--n];
        hi = x + y;
        const double yr = hi - x;
        lo = y - yr;
        if (lo != 0.0) break;
    }
    // Round-half-even correction when the remaining partials push the
    // discarded tail past the halfway point.
    if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
        const double y = lo * 2.0;
        const double x = hi + y;
        const double yr = x - hi;
        if (y == yr) hi = x;
    }
    return hi;
}

}  // namespace masw
