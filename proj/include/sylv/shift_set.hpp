#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "sylv/errors.hpp"

namespace sylv {

/// Ordered list of complex shifts. Construction enforces the two admissibility
/// rules: every shift has strictly positive real part, and the list is closed
/// under complex conjugation (as a multiset).
class ShiftSet {
public:
    ShiftSet() = default;
    explicit ShiftSet(std::vector<std::complex<double>> shifts);
    ShiftSet(std::initializer_list<std::complex<double>> shifts);

    static ShiftSet from_real(const std::vector<double>& shifts);

    const std::vector<std::complex<double>>& values() const noexcept { return shifts_; }
    std::size_t size() const noexcept { return shifts_.size(); }
    bool empty() const noexcept { return shifts_.empty(); }
    std::complex<double> operator[](std::size_t i) const { return shifts_[i]; }

    /// Element-wise conjugate; the same multiset, possibly reordered.
    ShiftSet conjugated() const;

    /// Values sorted lexicographically by (Re, Im); the canonical order used
    /// for matched comparisons.
    std::vector<std::complex<double>> sorted_values() const;

private:
    void validate() const;
    std::vector<std::complex<double>> shifts_;
};

/// Max matched distance between two equally sized lists after sorting each by
/// (Re, Im). Returns +inf for mismatched sizes.
double matched_shift_distance(const std::vector<std::complex<double>>& a,
                              const std::vector<std::complex<double>>& b);

}  // namespace sylv
