#pragma once

#include <span>
#include <vector>

namespace masw {

/// Error-free floating-point accumulator (Shewchuk expansion, as in Python's
/// math.fsum). The rounded result is the correctly rounded exact sum, so it
/// does not depend on the order values were added or on how partial sums
/// were grouped before merging. Finite inputs only.
class ExactSum {
public:
    void add(double x);
    void merge(const ExactSum& other);
    double value() const;

    std::span<const double> partials() const { return partials_; }

private:
    std::vector<double> partials_;
};

}  // namespace masw
