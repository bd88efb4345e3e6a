#pragma once

#include <complex>
#include <memory>
#include <mutex>

#include <Eigen/Dense>

#include "sylv/errors.hpp"

namespace sylv {

/// Real square operator: matrix-vector products and shifted resolvent
/// solves (sigma I - A)^{-1} rhs, for A and for A^T. Implementations are
/// immutable after construction and safe to share across threads, so
/// user-supplied operators (e.g. sparse-backed) can be plugged in behind
/// this interface.
class LinearOperator {
public:
    virtual ~LinearOperator() = default;

    virtual Eigen::Index dim() const = 0;

    virtual Eigen::VectorXd apply(const Eigen::VectorXd& x) const = 0;
    virtual Eigen::VectorXd apply_transpose(const Eigen::VectorXd& x) const = 0;

    /// x = (sigma I - A)^{-1} rhs
    virtual Eigen::VectorXcd solve_shifted(std::complex<double> sigma,
                                           const Eigen::VectorXcd& rhs) const = 0;
    /// x = (sigma I - A^T)^{-1} rhs
    virtual Eigen::VectorXcd solve_shifted_transpose(std::complex<double> sigma,
                                                     const Eigen::VectorXcd& rhs) const = 0;

    /// Column-wise batched variants; overridden where one factorization
    /// can serve all columns.
    virtual Eigen::MatrixXcd solve_shifted_multi(std::complex<double> sigma,
                                                 const Eigen::MatrixXcd& rhs) const;
    virtual Eigen::MatrixXcd solve_shifted_transpose_multi(std::complex<double> sigma,
                                                           const Eigen::MatrixXcd& rhs) const;

    Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
    Eigen::VectorXcd apply_transpose(const Eigen::VectorXcd& x) const;
    Eigen::MatrixXd apply_columns(const Eigen::MatrixXd& X) const;
    Eigen::MatrixXcd apply_columns(const Eigen::MatrixXcd& X) const;

    /// Dense entries, when the implementation can provide them (needed by
    /// eigendecomposition-based checks; large matrix-free operators may not).
    virtual bool has_dense() const { return false; }
    virtual const Eigen::MatrixXd& dense() const;
};

/// Dense-backed operator. Shifted solves go through a one-time Hessenberg
/// reduction A = P H P^T, after which every (sigma I - A)^{-1} costs O(n^2)
/// via a Givens sweep on sigma I - H. Transposed solves reuse the same
/// reduction through an index-reversal of H^T.
class DenseOperator final : public LinearOperator {
public:
    explicit DenseOperator(Eigen::MatrixXd A);

    Eigen::Index dim() const override { return A_.rows(); }

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const override;
    Eigen::VectorXd apply_transpose(const Eigen::VectorXd& x) const override;

    Eigen::VectorXcd solve_shifted(std::complex<double> sigma,
                                   const Eigen::VectorXcd& rhs) const override;
    Eigen::VectorXcd solve_shifted_transpose(std::complex<double> sigma,
                                             const Eigen::VectorXcd& rhs) const override;
    Eigen::MatrixXcd solve_shifted(std::complex<double> sigma,
                                   const Eigen::MatrixXcd& rhs) const override;
    Eigen::MatrixXcd solve_shifted_transpose(std::complex<double> sigma,
                                             const Eigen::MatrixXcd& rhs) const override;

    bool has_dense() const override { return true; }
    const Eigen::MatrixXd& dense() const override { return A_; }

private:
    struct Reduction {
        Eigen::MatrixXd P;  // orthogonal
        Eigen::MatrixXd H;  // upper Hessenberg, A = P H P^T
    };

    const Reduction& reduction() const;
    const Eigen::MatrixXd& flipped_transpose_h() const;

    Eigen::MatrixXd A_;
    mutable std::once_flag reduction_once_, flip_once_;
    mutable std::unique_ptr<Reduction> reduction_;
    mutable std::unique_ptr<Eigen::MatrixXd> h_flip_;  // J H^T J, upper Hessenberg
};

std::shared_ptr<const LinearOperator> make_dense_operator(Eigen::MatrixXd A);

/// View of A^T. Applying it twice returns the original operator.
std::shared_ptr<const LinearOperator> transpose_of(std::shared_ptr<const LinearOperator> op);

}  // namespace sylv
