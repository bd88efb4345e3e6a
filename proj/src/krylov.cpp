#include "sylv/krylov.hpp"

#include <cmath>
#include <vector>

namespace sylv {

namespace detail {

BasisBuilder::BasisBuilder(Eigen::Index rows, Eigen::Index max_cols, double deflation_tol)
    : Q_(rows, max_cols), tol_(deflation_tol) {}

bool BasisBuilder::add(Eigen::VectorXd v) {
    const double incoming = v.norm();
    if (incoming == 0.0) return false;
    for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index j = 0; j < cols_; ++j) {
            v.noalias() -= Q_.col(j) * (Q_.col(j).dot(v));
        }
    }
    const double remaining = v.norm();
    if (remaining <= tol_ * incoming) return false;
    Q_.col(cols_++) = v / remaining;
    return true;
}

Eigen::MatrixXd BasisBuilder::take() { return Q_.leftCols(cols_).eval(); }

}  // namespace detail

OrthonormalBasis rational_krylov_basis(std::shared_ptr<const LinearOperator> A,
                                       const Eigen::VectorXd& b, const ShiftSet& shifts) {
    if (!A) throw InvalidArgumentError("rational_krylov_basis: null operator");
    if (b.size() != A->dim())
        throw InvalidArgumentError("rational_krylov_basis: b does not match the operator");
    if (b.norm() == 0.0)
        throw DegenerateSubspaceError("rational_krylov_basis: b = 0 spans nothing");

    const auto& sigma = shifts.values();
    detail::BasisBuilder builder(A->dim(), static_cast<Eigen::Index>(sigma.size()));
    const Eigen::VectorXcd bc = b.cast<std::complex<double>>();

    std::vector<bool> used(sigma.size(), false);
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        const std::complex<double> s = sigma[i];
        if (s.imag() == 0.0) {
            Eigen::VectorXcd x = A->solve_shifted(s, bc);
            builder.add(x.real());
            continue;
        }
        // Mark the conjugate partner as consumed, solve once at the member
        // with positive imaginary part, and keep both real parts.
        const double tol = 1e-12 * std::max(1.0, std::abs(s));
        bool paired = false;
        for (std::size_t j = i + 1; j < sigma.size(); ++j) {
            if (!used[j] && std::abs(sigma[j] - std::conj(s)) <= tol) {
                used[j] = true;
                paired = true;
                break;
            }
        }
        if (!paired)
            throw InvalidArgumentError("rational_krylov_basis: unpaired complex shift " +
                                       format_complex(s));
        const std::complex<double> sp = s.imag() > 0.0 ? s : std::conj(s);
        Eigen::VectorXcd x = A->solve_shifted(sp, bc);
        builder.add(x.real());
        builder.add(x.imag());
    }

    return OrthonormalBasis{builder.take(), shifts, std::move(A), b};
}

OrthonormalBasis extended_krylov_basis(std::shared_ptr<const LinearOperator> A,
                                       const Eigen::VectorXd& b, Eigen::Index r) {
    if (!A) throw InvalidArgumentError("extended_krylov_basis: null operator");
    if (r < 1) throw InvalidArgumentError("extended_krylov_basis: r must be positive");
    if (b.size() != A->dim())
        throw InvalidArgumentError("extended_krylov_basis: b does not match the operator");
    if (b.norm() == 0.0)
        throw DegenerateSubspaceError("extended_krylov_basis: b = 0 spans nothing");

    detail::BasisBuilder builder(A->dim(), r);
    const auto inv_apply = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        // A^{-1} v = -(0 I - A)^{-1} v
        return -A->solve_shifted(0.0, v.cast<std::complex<double>>()).real();
    };

    // Each chain applies its operator to the latest column it produced, so
    // the span after k accepted columns equals the first k directions of
    // { A^{-1} b, b, A^{-2} b, A b, ... }.
    Eigen::VectorXd inv_src = b;
    Eigen::VectorXd fwd_src;  // set once the first forward column is accepted
    bool fwd_started = false;

    for (Eigen::Index step = 0; builder.cols() < r; ++step) {
        const bool inverse_turn = step % 2 == 0;
        Eigen::VectorXd cand;
        if (inverse_turn) {
            cand = inv_apply(inv_src);
        } else if (!fwd_started) {
            cand = b;
        } else {
            cand = A->apply(fwd_src);
        }
        if (!builder.add(cand)) break;  // breakdown: the space is exhausted
        if (inverse_turn) {
            inv_src = builder.column(builder.cols() - 1);
        } else {
            fwd_src = builder.column(builder.cols() - 1);
            fwd_started = true;
        }
    }

    return OrthonormalBasis{builder.take(), std::nullopt, std::move(A), b};
}

bool subspace_contains(const OrthonormalBasis& basis, const Eigen::VectorXd& v, double tol) {
    if (v.size() != basis.rows())
        throw InvalidArgumentError("subspace_contains: dimension mismatch");
    const double vnorm = v.norm();
    if (vnorm == 0.0) return true;
    const Eigen::VectorXd residual = v - basis.Q * (basis.Q.transpose() * v);
    return residual.norm() <= tol * vnorm;
}

}  // namespace sylv
