#include "sylv/galerkin.hpp"

#include <cmath>
#include <limits>

namespace sylv {

namespace {
using Complex = std::complex<double>;
}

ProjectedEquation project(const SylvesterProblem& p, const OrthonormalBasis& Q,
                          const OrthonormalBasis& U) {
    if (Q.rows() != p.n() || U.rows() != p.m())
        throw InvalidArgumentError("project: basis row counts do not match the problem");
    ProjectedEquation e;
    e.A_r = Q.Q.transpose() * p.A->apply_columns(Q.Q);
    e.B_r = U.Q.transpose() * p.B->apply_columns(U.Q);
    e.b_r = Q.Q.transpose() * p.b;
    e.c_r = U.Q.transpose() * p.c;
    return e;
}

DirectSolveResult bartels_stewart(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                  const Eigen::MatrixXd& C) {
    if (A.rows() != A.cols() || B.rows() != B.cols())
        throw InvalidArgumentError("bartels_stewart: operators must be square");
    if (C.rows() != A.rows() || C.cols() != B.rows())
        throw InvalidArgumentError("bartels_stewart: right-hand side has wrong dimensions");

    const Eigen::Index n = A.rows();
    const Eigen::Index m = B.rows();

    Eigen::ComplexSchur<Eigen::MatrixXcd> sa(A.cast<Complex>());
    Eigen::ComplexSchur<Eigen::MatrixXcd> sb(B.cast<Complex>());
    const Eigen::MatrixXcd& Ta = sa.matrixT();
    const Eigen::MatrixXcd& Tb = sb.matrixT();
    const Eigen::MatrixXcd& Qa = sa.matrixU();
    const Eigen::MatrixXcd& Qb = sb.matrixU();

    const double warn_tol = 1e-12 * (A.norm() + B.norm());
    bool near_singular = false;

    Eigen::MatrixXcd Ct = Qa.adjoint() * C.cast<Complex>() * Qb;
    Eigen::MatrixXcd Y(n, m);
    Eigen::MatrixXcd T_shift = Ta;
    for (Eigen::Index j = 0; j < m; ++j) {
        Eigen::VectorXcd rhs = -Ct.col(j);
        for (Eigen::Index k = 0; k < j; ++k) rhs -= Tb(k, j) * Y.col(k);
        // (Ta + Tb(j,j) I) y_j = rhs, upper triangular
        T_shift.diagonal() = (Ta.diagonal().array() + Tb(j, j)).matrix();
        for (Eigen::Index i = 0; i < n; ++i) {
            const double d = std::abs(T_shift(i, i));
            if (d == 0.0) throw SpectralCollisionError(Ta(i, i), Tb(j, j));
            if (d < warn_tol) near_singular = true;
        }
        Y.col(j) = T_shift.triangularView<Eigen::Upper>().solve(rhs);
    }

    DirectSolveResult out;
    out.X = (Qa * Y * Qb.adjoint()).real();
    out.near_singular = near_singular;
    return out;
}

DirectSolveResult solve_small_sylvester(const ProjectedEquation& e) {
    return bartels_stewart(e.A_r, e.B_r, e.b_r * e.c_r.transpose());
}

LowRankApproximation rkpm_solve_with_bases(const SylvesterProblem& p, const OrthonormalBasis& Q,
                                           const OrthonormalBasis& U, double truncate_tol) {
    const ProjectedEquation e = project(p, Q, U);
    const Eigen::MatrixXd Xt = solve_small_sylvester(e).X;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Xt, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    Eigen::Index k = sv.size();
    if (truncate_tol > 0.0 && k > 0) {
        const double cutoff = truncate_tol * sv(0);
        while (k > 0 && sv(k - 1) <= cutoff) --k;
    }
    const Eigen::ArrayXd root = sv.head(k).array().sqrt();

    LowRankApproximation out;
    out.L = Q.Q * (svd.matrixU().leftCols(k) * root.matrix().asDiagonal());
    out.M = U.Q * (svd.matrixV().leftCols(k) * root.matrix().asDiagonal());
    return out;
}

LowRankApproximation rkpm_solve(const SylvesterProblem& p, const ShiftSet& sigma,
                                double truncate_tol) {
    OrthonormalBasis Q = rational_krylov_basis(p.A, p.b, sigma);
    OrthonormalBasis U = rational_krylov_basis(transpose_of(p.B), p.c, sigma.conjugated());
    return rkpm_solve_with_bases(p, Q, U, truncate_tol);
}

LowRankApproximation rkpm_solve(const SylvesterProblem& p, const ShiftSet& sigma,
                                const ShiftSet& mu, double truncate_tol) {
    OrthonormalBasis Q = rational_krylov_basis(p.A, p.b, mu);
    OrthonormalBasis U = rational_krylov_basis(transpose_of(p.B), p.c, sigma.conjugated());
    return rkpm_solve_with_bases(p, Q, U, truncate_tol);
}

std::complex<double> transfer_eval(const LtiSystem& sys, Complex s) {
    const Eigen::VectorXcd x = sys.A->solve_shifted(s, sys.b.cast<Complex>());
    return (sys.c.cast<Complex>().transpose() * x)(0);
}

InterpolationReport galerkin_interpolation_check(const LtiSystem& sys,
                                                 const OrthonormalBasis& Q) {
    if (!Q.shifts || Q.shifts->empty())
        throw InvalidArgumentError("interpolation check needs a rational basis with its shifts");
    if (Q.rows() != sys.n())
        throw InvalidArgumentError("interpolation check: basis does not match the system");

    const Eigen::MatrixXcd A_r =
        (Q.Q.transpose() * sys.A->apply_columns(Q.Q)).cast<Complex>();
    const Eigen::VectorXcd b_r = (Q.Q.transpose() * sys.b).cast<Complex>();
    const Eigen::VectorXcd c_r = (Q.Q.transpose() * sys.c).cast<Complex>();

    InterpolationReport rep;
    for (const Complex& s : Q.shifts->values()) {
        const Eigen::VectorXcd v_full = sys.A->solve_shifted(s, sys.b.cast<Complex>());

        Eigen::MatrixXcd Ms = -A_r;
        Ms.diagonal().array() += s;
        const Eigen::VectorXcd y = Eigen::PartialPivLU<Eigen::MatrixXcd>(Ms).solve(b_r);
        const Eigen::VectorXcd v_lift = Q.Q.cast<Complex>() * y;

        const double denom = v_full.norm();
        rep.max_resolvent_defect =
            std::max(rep.max_resolvent_defect, (v_lift - v_full).norm() / denom);

        const Complex h = (sys.c.cast<Complex>().transpose() * v_full)(0);
        const Complex h_r = (c_r.transpose() * y)(0);
        const double h_scale = std::max(std::abs(h), std::numeric_limits<double>::min());
        rep.max_transfer_defect = std::max(rep.max_transfer_defect, std::abs(h - h_r) / h_scale);
    }
    return rep;
}

}  // namespace sylv
