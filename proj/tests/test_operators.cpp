#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sylv/operators.hpp"
#include "test_support.hpp"

using namespace sylv;
using Complex = std::complex<double>;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index n, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Eigen::MatrixXd A(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) A(i, j) = dist(gen);
    return A;
}

Eigen::VectorXcd lu_reference_solve(const Eigen::MatrixXd& A, Complex sigma,
                                    const Eigen::VectorXcd& rhs) {
    Eigen::MatrixXcd M = -A.cast<Complex>();
    M.diagonal().array() += sigma;
    return M.fullPivLu().solve(rhs);
}

}  // namespace

TEST_CASE("shifted solves agree with a direct LU on random operators") {
    for (unsigned seed : {1u, 2u, 3u}) {
        const Eigen::Index n = 13;
        const Eigen::MatrixXd A = random_matrix(n, seed);
        DenseOperator op(A);
        std::mt19937 gen(seed + 100);
        std::normal_distribution<double> dist(0.0, 1.0);
        Eigen::VectorXcd rhs(n);
        for (Eigen::Index i = 0; i < n; ++i) rhs(i) = Complex(dist(gen), dist(gen));

        for (Complex sigma : {Complex(2.5, 0.0), Complex(0.7, 1.3), Complex(-4.0, 0.25)}) {
            const Eigen::VectorXcd x = op.solve_shifted(sigma, rhs);
            const Eigen::VectorXcd x_ref = lu_reference_solve(A, sigma, rhs);
            CHECK((x - x_ref).norm() <= 1e-10 * x_ref.norm());

            const Eigen::VectorXcd xt = op.solve_shifted_transpose(sigma, rhs);
            const Eigen::VectorXcd xt_ref =
                lu_reference_solve(Eigen::MatrixXd(A.transpose()), sigma, rhs);
            CHECK((xt - xt_ref).norm() <= 1e-10 * xt_ref.norm());
        }
    }
}

TEST_CASE("batched solves match column-by-column solves") {
    const Eigen::MatrixXd A = random_matrix(9, 7);
    DenseOperator op(A);
    Eigen::MatrixXcd RHS = Eigen::MatrixXcd::Random(9, 4);
    const Complex sigma(1.5, -0.5);
    const Eigen::MatrixXcd X = op.solve_shifted(sigma, RHS);
    for (Eigen::Index j = 0; j < 4; ++j) {
        const Eigen::VectorXcd xj = op.solve_shifted(sigma, Eigen::VectorXcd(RHS.col(j)));
        CHECK((X.col(j) - xj).norm() <= 1e-12 * xj.norm());
    }
}

TEST_CASE("a shift equal to an eigenvalue is reported as a collision") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
    A(0, 0) = -1.0;
    A(1, 1) = -2.0;
    DenseOperator op(A);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Ones(2);
    CHECK_THROWS_AS(op.solve_shifted(Complex(-1.0, 0.0), rhs), ShiftCollisionError);
    CHECK_NOTHROW(op.solve_shifted(Complex(1.0, 0.0), rhs));
}

TEST_CASE("solve with zero shift inverts the operator") {
    const Eigen::MatrixXd A = random_matrix(6, 11);
    DenseOperator op(A);
    const Eigen::VectorXd b = Eigen::VectorXd::Ones(6);
    const Eigen::VectorXd x = -op.solve_shifted(0.0, b.cast<Complex>()).real();
    CHECK((A * x - b).norm() <= 1e-10 * b.norm());
}

TEST_CASE("transpose views swap the solve directions and unwrap") {
    auto op = make_dense_operator(random_matrix(5, 3));
    auto opT = transpose_of(op);
    CHECK(transpose_of(opT).get() == op.get());

    const Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(5, 1.0, 5.0);
    CHECK((opT->apply(v) - op->apply_transpose(v)).norm() == 0.0);
    CHECK((opT->dense() - op->dense().transpose()).norm() == 0.0);

    Eigen::VectorXcd rhs = v.cast<Complex>();
    const Complex sigma(2.0, 1.0);
    CHECK((opT->solve_shifted(sigma, rhs) - op->solve_shifted_transpose(sigma, rhs)).norm() ==
          0.0);
}

TEST_CASE("dimension validation") {
    CHECK_THROWS_AS(DenseOperator(Eigen::MatrixXd::Zero(2, 3)), InvalidArgumentError);
    DenseOperator op(Eigen::MatrixXd::Identity(3, 3) * -1.0);
    CHECK_THROWS_AS(op.solve_shifted(Complex(1.0), Eigen::VectorXcd::Ones(2)),
                    InvalidArgumentError);
}
