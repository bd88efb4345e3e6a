#pragma once

#include <Eigen/Dense>

#include "sylv/adi.hpp"
#include "sylv/krylov.hpp"
#include "sylv/problem.hpp"
#include "sylv/shift_set.hpp"

namespace sylv {

struct ResidualReport {
    double residual_2norm = 0.0;
    double residual_rel = 0.0;      // divided by ||b||^2
    double subspace_orth = 0.0;     // || Q^T R ||_2
    double subspace_orth_rel = 0.0; // || Q^T R ||_2 / || R ||_2, zero when R = 0
};

/// Direct ground-truth solve of A X + X B + b c^T = 0 through the
/// vectorized system (I (x) A + B^T (x) I) vec(X) = -vec(b c^T). Dense LU
/// on an (n m) x (n m) matrix; refuses problems with n*m above the cap.
Eigen::MatrixXd dense_sylvester_oracle(const SylvesterProblem& p, Eigen::Index cap = 62500);

/// Residual R = A X_r + X_r A^T + b b^T with X_r = L M^T. All norms are
/// exact, computed from a compound factor of 2r + 1 columns; the n x n
/// residual is never formed.
ResidualReport lyapunov_residual(const LyapunovProblem& p, const LowRankApproximation& Xr,
                                 const OrthonormalBasis& Q);

/// Max matched distance between lambda(Q^T A Q) and -sigma, matching by the
/// lexicographic (Re, Im) sort.
double check_mirror_condition(const LinearOperator& A, const OrthonormalBasis& Q,
                              const ShiftSet& sigma);

/// || X_adi - X_rkpm ||_2 / || X_rkpm ||_2 for the factored iteration (mu =
/// sigma) against the Galerkin solve at the same shifts.
double check_equivalence(const SylvesterProblem& p, const ShiftSet& sigma);

/// Best achievable relative 2-norm error of any rank-r approximation:
/// sigma_{r+1}(X) / sigma_1(X); zero once r exhausts the spectrum.
double svd_error_floor(const Eigen::MatrixXd& X, Eigen::Index r);
double svd_error_floor(const Eigen::VectorXd& singular_values, Eigen::Index r);

}  // namespace sylv
