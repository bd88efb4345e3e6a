#include "sylv/verify.hpp"

#include <cmath>
#include <limits>

#include "sylv/galerkin.hpp"

namespace sylv {

Eigen::MatrixXd dense_sylvester_oracle(const SylvesterProblem& p, Eigen::Index cap) {
    const Eigen::Index n = p.n();
    const Eigen::Index m = p.m();
    if (n * m > cap)
        throw OracleTooLargeError("vectorized system of size " + std::to_string(n * m) +
                                  " exceeds the cap " + std::to_string(cap));
    if (!p.A->has_dense() || !p.B->has_dense())
        throw InvalidArgumentError("dense_sylvester_oracle needs dense operators");

    const Eigen::MatrixXd& A = p.A->dense();
    const Eigen::MatrixXd& B = p.B->dense();

    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n * m, n * m);
    for (Eigen::Index j = 0; j < m; ++j) K.block(j * n, j * n, n, n) = A;
    for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index k = 0; k < m; ++k)
            K.block(j * n, k * n, n, n).diagonal().array() += B(k, j);

    Eigen::MatrixXd Y = p.b * p.c.transpose();
    Eigen::VectorXd rhs = -Eigen::Map<Eigen::VectorXd>(Y.data(), n * m);
    Eigen::VectorXd x = Eigen::PartialPivLU<Eigen::MatrixXd>(K).solve(rhs);
    Eigen::MatrixXd X = Eigen::Map<Eigen::MatrixXd>(x.data(), n, m);

    const double resid = (A * X + X * B + Y).norm();
    const double bound =
        1e-10 * (A.norm() + B.norm()) * X.norm() + 1e-10 * p.b.norm() * p.c.norm();
    if (!(resid <= bound))
        throw SpectralCollisionError(0.0, 0.0);  // no unique solution at working precision
    return X;
}

ResidualReport lyapunov_residual(const LyapunovProblem& p, const LowRankApproximation& Xr,
                                 const OrthonormalBasis& Q) {
    const Eigen::Index n = p.n();
    if (Xr.L.rows() != n || Xr.M.rows() != n)
        throw InvalidArgumentError("lyapunov_residual: factor dimensions do not match");
    if (Q.rows() != n) throw InvalidArgumentError("lyapunov_residual: basis does not match");

    const Eigen::Index r = Xr.rank();
    // R = A L M^T + L (A M)^T + b b^T = F G^T
    Eigen::MatrixXd F(n, 2 * r + 1);
    Eigen::MatrixXd G(n, 2 * r + 1);
    F << p.A->apply_columns(Xr.L), Xr.L, p.b;
    G << Xr.M, p.A->apply_columns(Xr.M), p.b;

    const Eigen::Index k = std::min(n, F.cols());
    Eigen::HouseholderQR<Eigen::MatrixXd> qg(G);
    const Eigen::MatrixXd Rg =
        Eigen::MatrixXd(qg.matrixQR().topRows(k).triangularView<Eigen::Upper>());

    ResidualReport rep;
    rep.residual_2norm = factored_two_norm(F, G);
    const double b2 = p.b.squaredNorm();
    rep.residual_rel = b2 > 0.0 ? rep.residual_2norm / b2 : 0.0;

    const Eigen::MatrixXd QtF = Q.Q.transpose() * F;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(QtF * Rg.transpose());
    rep.subspace_orth = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    rep.subspace_orth_rel =
        rep.residual_2norm > 0.0 ? rep.subspace_orth / rep.residual_2norm : 0.0;
    return rep;
}

double check_mirror_condition(const LinearOperator& A, const OrthonormalBasis& Q,
                              const ShiftSet& sigma) {
    const Eigen::MatrixXd A_r = Q.Q.transpose() * A.apply_columns(Q.Q);
    Eigen::EigenSolver<Eigen::MatrixXd> eig(A_r, false);
    std::vector<std::complex<double>> lambdas(static_cast<std::size_t>(A_r.rows()));
    std::vector<std::complex<double>> mirrored(sigma.size());
    for (Eigen::Index i = 0; i < A_r.rows(); ++i)
        lambdas[static_cast<std::size_t>(i)] = eig.eigenvalues()(i);
    for (std::size_t i = 0; i < sigma.size(); ++i) mirrored[i] = -sigma[i];
    return matched_shift_distance(lambdas, mirrored);
}

double check_equivalence(const SylvesterProblem& p, const ShiftSet& sigma) {
    const LowRankApproximation x_adi = adi_lowrank(p, sigma, sigma);
    const LowRankApproximation x_rkpm = rkpm_solve(p, sigma);

    Eigen::MatrixXd F(p.n(), x_adi.rank() + x_rkpm.rank());
    Eigen::MatrixXd G(p.m(), x_adi.rank() + x_rkpm.rank());
    F << x_adi.L, x_rkpm.L;
    G << x_adi.M, -x_rkpm.M;
    const double denom = std::max(x_rkpm.norm2(), std::numeric_limits<double>::min());
    return factored_two_norm(F, G) / denom;
}

double svd_error_floor(const Eigen::VectorXd& singular_values, Eigen::Index r) {
    if (r < 0) throw InvalidArgumentError("svd_error_floor: negative rank");
    if (singular_values.size() == 0 || singular_values(0) <= 0.0) return 0.0;
    if (r >= singular_values.size()) return 0.0;
    return singular_values(r) / singular_values(0);
}

double svd_error_floor(const Eigen::MatrixXd& X, Eigen::Index r) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(X);
    return svd_error_floor(svd.singularValues(), r);
}

}  // namespace sylv
