#include "sylv/operators.hpp"

#include <cmath>
#include <limits>

namespace sylv {

namespace {

using Complex = std::complex<double>;

Eigen::MatrixXcd real_times_complex(const Eigen::MatrixXd& R, const Eigen::MatrixXcd& C) {
    Eigen::MatrixXcd out(R.rows(), C.cols());
    out.real() = R * C.real();
    out.imag() = R * C.imag();
    return out;
}

// Solve (sigma I - H) X = Y for upper-Hessenberg H by a Givens sweep that
// eliminates the subdiagonal, then back substitution. O(n^2) per column.
Eigen::MatrixXcd hessenberg_shifted_solve(const Eigen::MatrixXd& H, Complex sigma,
                                          Eigen::MatrixXcd Y) {
    const Eigen::Index n = H.rows();
    Eigen::MatrixXcd M = (-H).cast<Complex>();
    M.diagonal().array() += sigma;

    const double scale = std::abs(sigma) + H.cwiseAbs().maxCoeff();
    const double pivot_tol =
        static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;

    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        const Complex a = M(k, k);
        const Complex b = M(k + 1, k);
        if (b == Complex(0.0)) continue;
        const double r = std::sqrt(std::norm(a) + std::norm(b));
        const Complex c = a / r;
        const Complex s = b / r;
        for (Eigen::Index j = k; j < n; ++j) {
            const Complex t1 = M(k, j);
            const Complex t2 = M(k + 1, j);
            M(k, j) = std::conj(c) * t1 + std::conj(s) * t2;
            M(k + 1, j) = -s * t1 + c * t2;
        }
        for (Eigen::Index j = 0; j < Y.cols(); ++j) {
            const Complex t1 = Y(k, j);
            const Complex t2 = Y(k + 1, j);
            Y(k, j) = std::conj(c) * t1 + std::conj(s) * t2;
            Y(k + 1, j) = -s * t1 + c * t2;
        }
    }

    for (Eigen::Index k = 0; k < n; ++k) {
        if (std::abs(M(k, k)) <= pivot_tol) throw ShiftCollisionError(sigma);
    }

    for (Eigen::Index j = 0; j < Y.cols(); ++j) {
        for (Eigen::Index k = n - 1; k >= 0; --k) {
            Complex acc = Y(k, j);
            for (Eigen::Index i = k + 1; i < n; ++i) acc -= M(k, i) * Y(i, j);
            Y(k, j) = acc / M(k, k);
        }
    }
    return Y;
}

class TransposeOperator final : public LinearOperator {
public:
    explicit TransposeOperator(std::shared_ptr<const LinearOperator> inner)
        : inner_(std::move(inner)) {}

    Eigen::Index dim() const override { return inner_->dim(); }

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const override {
        return inner_->apply_transpose(x);
    }
    Eigen::VectorXd apply_transpose(const Eigen::VectorXd& x) const override {
        return inner_->apply(x);
    }
    Eigen::VectorXcd solve_shifted(Complex sigma, const Eigen::VectorXcd& rhs) const override {
        return inner_->solve_shifted_transpose(sigma, rhs);
    }
    Eigen::VectorXcd solve_shifted_transpose(Complex sigma,
                                             const Eigen::VectorXcd& rhs) const override {
        return inner_->solve_shifted(sigma, rhs);
    }
    Eigen::MatrixXcd solve_shifted(Complex sigma, const Eigen::MatrixXcd& rhs) const override {
        return inner_->solve_shifted_transpose(sigma, rhs);
    }
    Eigen::MatrixXcd solve_shifted_transpose(Complex sigma,
                                             const Eigen::MatrixXcd& rhs) const override {
        return inner_->solve_shifted(sigma, rhs);
    }

    bool has_dense() const override { return inner_->has_dense(); }
    const Eigen::MatrixXd& dense() const override {
        std::call_once(dense_once_, [this] {
            dense_ = std::make_unique<Eigen::MatrixXd>(inner_->dense().transpose());
        });
        return *dense_;
    }

    std::shared_ptr<const LinearOperator> inner() const { return inner_; }

private:
    std::shared_ptr<const LinearOperator> inner_;
    mutable std::once_flag dense_once_;
    mutable std::unique_ptr<Eigen::MatrixXd> dense_;
};

}  // namespace

Eigen::MatrixXcd LinearOperator::solve_shifted(Complex sigma, const Eigen::MatrixXcd& rhs) const {
    Eigen::MatrixXcd out(rhs.rows(), rhs.cols());
    for (Eigen::Index j = 0; j < rhs.cols(); ++j) out.col(j) = solve_shifted(sigma, rhs.col(j));
    return out;
}

Eigen::MatrixXcd LinearOperator::solve_shifted_transpose(Complex sigma,
                                                         const Eigen::MatrixXcd& rhs) const {
    Eigen::MatrixXcd out(rhs.rows(), rhs.cols());
    for (Eigen::Index j = 0; j < rhs.cols(); ++j)
        out.col(j) = solve_shifted_transpose(sigma, rhs.col(j));
    return out;
}

Eigen::VectorXcd LinearOperator::apply(const Eigen::VectorXcd& x) const {
    Eigen::VectorXcd out(x.size());
    out.real() = apply(Eigen::VectorXd(x.real()));
    out.imag() = apply(Eigen::VectorXd(x.imag()));
    return out;
}

Eigen::VectorXcd LinearOperator::apply_transpose(const Eigen::VectorXcd& x) const {
    Eigen::VectorXcd out(x.size());
    out.real() = apply_transpose(Eigen::VectorXd(x.real()));
    out.imag() = apply_transpose(Eigen::VectorXd(x.imag()));
    return out;
}

Eigen::MatrixXd LinearOperator::apply_columns(const Eigen::MatrixXd& X) const {
    Eigen::MatrixXd out(X.rows(), X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) out.col(j) = apply(Eigen::VectorXd(X.col(j)));
    return out;
}

Eigen::MatrixXcd LinearOperator::apply_columns(const Eigen::MatrixXcd& X) const {
    Eigen::MatrixXcd out(X.rows(), X.cols());
    out.real() = apply_columns(Eigen::MatrixXd(X.real()));
    out.imag() = apply_columns(Eigen::MatrixXd(X.imag()));
    return out;
}

const Eigen::MatrixXd& LinearOperator::dense() const {
    throw InvalidArgumentError("operator has no dense representation");
}

DenseOperator::DenseOperator(Eigen::MatrixXd A) : A_(std::move(A)) {
    if (A_.rows() != A_.cols()) throw InvalidArgumentError("operator matrix must be square");
    if (A_.rows() < 1) throw InvalidArgumentError("operator dimension must be at least 1");
}

Eigen::VectorXd DenseOperator::apply(const Eigen::VectorXd& x) const { return A_ * x; }

Eigen::VectorXd DenseOperator::apply_transpose(const Eigen::VectorXd& x) const {
    return A_.transpose() * x;
}

const DenseOperator::Reduction& DenseOperator::reduction() const {
    std::call_once(reduction_once_, [this] {
        Eigen::HessenbergDecomposition<Eigen::MatrixXd> hd(A_);
        auto red = std::make_unique<Reduction>();
        red->P = hd.matrixQ();
        red->H = hd.matrixH();
        reduction_ = std::move(red);
    });
    return *reduction_;
}

const Eigen::MatrixXd& DenseOperator::flipped_transpose_h() const {
    // J H^T J (J = index reversal) is upper Hessenberg again, so transposed
    // solves reuse the same Givens routine.
    std::call_once(flip_once_, [this] {
        h_flip_ = std::make_unique<Eigen::MatrixXd>(reduction().H.transpose().reverse());
    });
    return *h_flip_;
}

Eigen::MatrixXcd DenseOperator::solve_shifted(Complex sigma, const Eigen::MatrixXcd& rhs) const {
    if (rhs.rows() != dim()) throw InvalidArgumentError("solve_shifted: dimension mismatch");
    const Reduction& red = reduction();
    Eigen::MatrixXcd w = real_times_complex(red.P.transpose(), rhs);
    Eigen::MatrixXcd x = hessenberg_shifted_solve(red.H, sigma, std::move(w));
    return real_times_complex(red.P, x);
}

Eigen::MatrixXcd DenseOperator::solve_shifted_transpose(Complex sigma,
                                                        const Eigen::MatrixXcd& rhs) const {
    if (rhs.rows() != dim()) throw InvalidArgumentError("solve_shifted_transpose: dimension mismatch");
    const Reduction& red = reduction();
    Eigen::MatrixXcd w = real_times_complex(red.P.transpose(), rhs);
    w = w.colwise().reverse().eval();
    Eigen::MatrixXcd z = hessenberg_shifted_solve(flipped_transpose_h(), sigma, std::move(w));
    z = z.colwise().reverse().eval();
    return real_times_complex(red.P, z);
}

Eigen::VectorXcd DenseOperator::solve_shifted(Complex sigma, const Eigen::VectorXcd& rhs) const {
    return solve_shifted(sigma, Eigen::MatrixXcd(rhs)).col(0);
}

Eigen::VectorXcd DenseOperator::solve_shifted_transpose(Complex sigma,
                                                        const Eigen::VectorXcd& rhs) const {
    return solve_shifted_transpose(sigma, Eigen::MatrixXcd(rhs)).col(0);
}

std::shared_ptr<const LinearOperator> make_dense_operator(Eigen::MatrixXd A) {
    return std::make_shared<DenseOperator>(std::move(A));
}

std::shared_ptr<const LinearOperator> transpose_of(std::shared_ptr<const LinearOperator> op) {
    if (auto t = std::dynamic_pointer_cast<const TransposeOperator>(op)) return t->inner();
    return std::make_shared<TransposeOperator>(std::move(op));
}

}  // namespace sylv
