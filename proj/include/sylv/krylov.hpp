#pragma once

#include <memory>
#include <optional>

#include <Eigen/Dense>

#include "sylv/operators.hpp"
#include "sylv/shift_set.hpp"

namespace sylv {

/// Orthonormal basis of a Krylov-type subspace together with its generator.
/// Columns are real even for complex shift sets; `Q.cols()` may be smaller
/// than the requested dimension when directions deflated.
struct OrthonormalBasis {
    Eigen::MatrixXd Q;
    std::optional<ShiftSet> shifts;  // absent for extended (0 / infinity) bases
    std::shared_ptr<const LinearOperator> op;
    Eigen::VectorXd b;

    Eigen::Index rows() const { return Q.rows(); }
    Eigen::Index dimension() const { return Q.cols(); }
};

/// Orthonormal basis of span{ (sigma_i I - A)^{-1} b }. A conjugate shift
/// pair is handled with one complex solve whose real and imaginary parts
/// contribute two real columns, so the result is always real.
///
/// Orthogonalization is modified Gram-Schmidt with one full
/// reorthogonalization pass; a direction whose orthogonalized norm falls
/// below 1e-12 of its incoming norm is deflated.
OrthonormalBasis rational_krylov_basis(std::shared_ptr<const LinearOperator> A,
                                       const Eigen::VectorXd& b, const ShiftSet& shifts);

/// Orthonormal basis of span{ A^{-1} b, b, A^{-2} b, A b, ... } with r
/// directions, alternating one inverse-power and one forward-power step
/// starting from the inverse side. The first deflation ends the build and
/// the basis records the smaller dimension.
OrthonormalBasis extended_krylov_basis(std::shared_ptr<const LinearOperator> A,
                                       const Eigen::VectorXd& b, Eigen::Index r);

/// True iff || v - Q Q^T v || <= tol * || v ||; v = 0 is contained.
bool subspace_contains(const OrthonormalBasis& basis, const Eigen::VectorXd& v, double tol);

namespace detail {

/// Incremental MGS orthogonalizer shared by the basis builders.
class BasisBuilder {
public:
    BasisBuilder(Eigen::Index rows, Eigen::Index max_cols, double deflation_tol = 1e-12);

    /// Returns true when the column was accepted; false when it deflated.
    bool add(Eigen::VectorXd v);

    Eigen::Index cols() const { return cols_; }
    Eigen::MatrixXd take();
    Eigen::VectorXd column(Eigen::Index j) const { return Q_.col(j); }

private:
    Eigen::MatrixXd Q_;
    Eigen::Index cols_ = 0;
    double tol_;
};

}  // namespace detail
}  // namespace sylv
