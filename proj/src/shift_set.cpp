#include "sylv/shift_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sylv {

ShiftSet::ShiftSet(std::vector<std::complex<double>> shifts) : shifts_(std::move(shifts)) {
    validate();
}

ShiftSet::ShiftSet(std::initializer_list<std::complex<double>> shifts) : shifts_(shifts) {
    validate();
}

ShiftSet ShiftSet::from_real(const std::vector<double>& shifts) {
    std::vector<std::complex<double>> v(shifts.begin(), shifts.end());
    return ShiftSet(std::move(v));
}

void ShiftSet::validate() const {
    for (const auto& s : shifts_) {
        if (!(s.real() > 0.0)) {
            throw InvalidArgumentError("shift " + format_complex(s) +
                                       " does not have positive real part");
        }
    }
    // Conjugate closure as a multiset: pair every non-real shift with an
    // unmatched conjugate partner.
    std::vector<bool> matched(shifts_.size(), false);
    for (std::size_t i = 0; i < shifts_.size(); ++i) {
        if (matched[i] || shifts_[i].imag() == 0.0) continue;
        const double tol = 1e-12 * std::max(1.0, std::abs(shifts_[i]));
        bool found = false;
        for (std::size_t j = 0; j < shifts_.size(); ++j) {
            if (j == i || matched[j]) continue;
            if (std::abs(shifts_[j] - std::conj(shifts_[i])) <= tol) {
                matched[i] = matched[j] = true;
                found = true;
                break;
            }
        }
        if (!found) {
            throw InvalidArgumentError("shift list is not closed under conjugation: no partner for " +
                                       format_complex(shifts_[i]));
        }
    }
}

ShiftSet ShiftSet::conjugated() const {
    std::vector<std::complex<double>> v(shifts_.size());
    std::transform(shifts_.begin(), shifts_.end(), v.begin(),
                   [](const std::complex<double>& s) { return std::conj(s); });
    return ShiftSet(std::move(v));
}

namespace {
void sort_lex(std::vector<std::complex<double>>& v) {
    std::sort(v.begin(), v.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}
}  // namespace

std::vector<std::complex<double>> ShiftSet::sorted_values() const {
    auto v = shifts_;
    sort_lex(v);
    return v;
}

double matched_shift_distance(const std::vector<std::complex<double>>& a,
                              const std::vector<std::complex<double>>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    auto sa = a;
    auto sb = b;
    sort_lex(sa);
    sort_lex(sb);
    double d = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i) d = std::max(d, std::abs(sa[i] - sb[i]));
    return d;
}

}  // namespace sylv
