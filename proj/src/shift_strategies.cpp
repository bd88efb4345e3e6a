#include "sylv/shift_strategies.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "sylv/krylov.hpp"

namespace sylv {

namespace {

using Complex = std::complex<double>;

// Ritz values from a k-step Arnoldi run; stops early at breakdown.
std::vector<Complex> arnoldi_ritz(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& op,
                                  const Eigen::VectorXd& b, Eigen::Index k) {
    const Eigen::Index n = b.size();
    k = std::min(k, n);
    if (b.norm() == 0.0) throw DegenerateSubspaceError("arnoldi: b = 0");

    Eigen::MatrixXd Q(n, k + 1);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(k + 1, k);
    Q.col(0) = b / b.norm();
    Eigen::Index steps = k;
    for (Eigen::Index j = 0; j < k; ++j) {
        Eigen::VectorXd w = op(Q.col(j));
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index i = 0; i <= j; ++i) {
                const double h = Q.col(i).dot(w);
                H(i, j) += h;
                w -= h * Q.col(i);
            }
        }
        const double beta = w.norm();
        H(j + 1, j) = beta;
        if (beta <= 1e-14 * (1.0 + H.col(j).head(j + 1).norm())) {
            steps = j + 1;
            break;
        }
        Q.col(j + 1) = w / beta;
    }

    Eigen::EigenSolver<Eigen::MatrixXd> eig(H.topLeftCorner(steps, steps), false);
    std::vector<Complex> out(static_cast<std::size_t>(steps));
    for (Eigen::Index i = 0; i < steps; ++i) out[static_cast<std::size_t>(i)] = eig.eigenvalues()(i);
    return out;
}

std::vector<Complex> sorted_lex(std::vector<Complex> v) {
    std::sort(v.begin(), v.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return v;
}

// log of |prod (x - s)/(x + s)| over the selected shifts; -inf at a selected
// candidate, which keeps it out of future argmax picks.
double log_rational_magnitude(Complex x, const std::vector<Complex>& selected) {
    double acc = 0.0;
    for (const Complex& s : selected) {
        const double num = std::abs(x - s);
        if (num == 0.0) return -std::numeric_limits<double>::infinity();
        acc += std::log(num) - std::log(std::abs(x + s));
    }
    return acc;
}

}  // namespace

ShiftSet default_h2_seed_shifts(std::shared_ptr<const LinearOperator> A,
                                const Eigen::VectorXd& b, Eigen::Index r) {
    const auto ritz = arnoldi_ritz([&](const Eigen::VectorXd& x) { return A->apply(x); }, b, 10);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const Complex& t : ritz) {
        const double mag = std::abs(t);
        if (mag <= 0.0) continue;
        lo = std::min(lo, mag);
        hi = std::max(hi, mag);
    }
    if (!(hi > 0.0)) throw DegenerateSubspaceError("all Ritz values vanished; cannot seed shifts");

    std::vector<double> pts(static_cast<std::size_t>(r));
    if (r == 1) {
        pts[0] = std::sqrt(lo * hi);
    } else {
        const double llo = std::log(lo);
        const double lhi = std::log(hi);
        for (Eigen::Index i = 0; i < r; ++i)
            pts[static_cast<std::size_t>(i)] =
                std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(r - 1));
    }
    return ShiftSet::from_real(pts);
}

PseudoH2Result pseudo_h2_shifts(std::shared_ptr<const LinearOperator> A,
                                const Eigen::VectorXd& b, Eigen::Index r,
                                std::optional<ShiftSet> sigma0, double tol, int max_sweeps) {
    if (r < 1) throw InvalidArgumentError("pseudo_h2_shifts: r must be positive");
    if (r > A->dim())
        throw InvalidArgumentError("pseudo_h2_shifts: r exceeds the operator dimension");

    PseudoH2Result res;
    res.shifts = sigma0 ? *sigma0 : default_h2_seed_shifts(A, b, r);

    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        const OrthonormalBasis Q = rational_krylov_basis(A, b, res.shifts);
        const Eigen::MatrixXd A_r = Q.Q.transpose() * A->apply_columns(Q.Q);
        Eigen::EigenSolver<Eigen::MatrixXd> eig(A_r, false);

        std::vector<Complex> cand(static_cast<std::size_t>(A_r.rows()));
        for (Eigen::Index i = 0; i < A_r.rows(); ++i) {
            Complex s = -eig.eigenvalues()(i);
            if (!(s.real() > 0.0)) {
                s = Complex(std::abs(s.real()) + tol, s.imag());
                ++res.stabilized;
            }
            cand[static_cast<std::size_t>(i)] = s;
        }

        ShiftSet next(sorted_lex(std::move(cand)));
        const double change = matched_shift_distance(next.values(), res.shifts.values());
        res.history.push_back(change);
        res.shifts = std::move(next);
        res.sweeps = sweep;
        if (change <= tol) {
            res.converged = true;
            break;
        }
    }
    return res;
}

PenzlResult penzl_shifts(std::shared_ptr<const LinearOperator> A, const Eigen::VectorXd& b,
                         int k_plus, int k_minus, int r) {
    if (r < 1) throw InvalidArgumentError("penzl_shifts: r must be positive");
    if (k_plus < 0 || k_minus < 0 || k_plus + k_minus < r)
        throw InvalidArgumentError("penzl_shifts: need k_plus + k_minus >= r");

    std::vector<Complex> ritz;
    if (k_plus > 0) {
        auto rp = arnoldi_ritz([&](const Eigen::VectorXd& x) { return A->apply(x); }, b, k_plus);
        ritz.insert(ritz.end(), rp.begin(), rp.end());
    }
    if (k_minus > 0) {
        auto rm = arnoldi_ritz(
            [&](const Eigen::VectorXd& x) {
                return Eigen::VectorXd(-A->solve_shifted(0.0, x.cast<Complex>()).real());
            },
            b, k_minus);
        for (Complex t : rm) {
            if (t == Complex(0.0)) continue;  // a zero Ritz value of A^{-1} carries no estimate
            ritz.push_back(1.0 / t);
        }
    }

    PenzlResult res;
    std::vector<Complex> cands;
    cands.reserve(ritz.size());
    for (Complex t : ritz) {
        if (t.real() >= 0.0) {
            t = Complex(-t.real(), t.imag());
            res.reflected_unstable_ritz = true;
        }
        Complex s = -t;
        if (!(s.real() > 0.0)) {
            // purely imaginary Ritz value; nudge into the open half plane
            s = Complex(1e-12 * (1.0 + std::abs(s)), s.imag());
            res.reflected_unstable_ritz = true;
        }
        cands.push_back(s);
    }
    if (cands.empty()) throw DegenerateSubspaceError("penzl_shifts: no usable Ritz values");

    std::vector<Complex> selected;
    const auto push_with_conjugate = [&](Complex s) {
        selected.push_back(s);
        if (s.imag() != 0.0) selected.push_back(std::conj(s));
    };

    // first shift: minimax over the candidate set
    double best_val = std::numeric_limits<double>::infinity();
    Complex best = cands.front();
    for (const Complex& p : cands) {
        double worst = -std::numeric_limits<double>::infinity();
        for (const Complex& x : cands) worst = std::max(worst, log_rational_magnitude(x, {p}));
        if (worst < best_val) {
            best_val = worst;
            best = p;
        }
    }
    push_with_conjugate(best);

    while (selected.size() < static_cast<std::size_t>(r)) {
        double worst = -std::numeric_limits<double>::infinity();
        Complex pick = cands.front();
        for (const Complex& x : cands) {
            const double v = log_rational_magnitude(x, selected);
            if (v > worst) {
                worst = v;
                pick = x;
            }
        }
        if (worst == -std::numeric_limits<double>::infinity()) break;  // every candidate selected
        push_with_conjugate(pick);
    }

    res.shifts = ShiftSet(std::move(selected));
    return res;
}

ShiftSet mirrored_spectrum_shifts(const LinearOperator& A) {
    if (!A.has_dense())
        throw InvalidArgumentError("mirrored_spectrum_shifts needs a dense operator");
    Eigen::EigenSolver<Eigen::MatrixXd> eig(A.dense(), false);
    std::vector<Complex> shifts(static_cast<std::size_t>(A.dim()));
    for (Eigen::Index i = 0; i < A.dim(); ++i) {
        const Complex lambda = eig.eigenvalues()(i);
        if (!(lambda.real() < 0.0))
            throw InvalidArgumentError("operator is not stable: eigenvalue " +
                                       format_complex(lambda));
        shifts[static_cast<std::size_t>(i)] = -lambda;
    }
    return ShiftSet(std::move(shifts));
}

}  // namespace sylv
