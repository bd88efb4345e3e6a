#pragma once

#include <complex>

#include <Eigen/Dense>

#include "sylv/adi.hpp"
#include "sylv/krylov.hpp"
#include "sylv/problem.hpp"

namespace sylv {

/// Reduced data (Q^T A Q, U^T B U, Q^T b, U^T c) of the projected equation
///   A_r X + X B_r + b_r c_r^T = 0.
struct ProjectedEquation {
    Eigen::MatrixXd A_r;
    Eigen::MatrixXd B_r;
    Eigen::VectorXd b_r;
    Eigen::VectorXd c_r;
};

/// One operator application per basis column.
ProjectedEquation project(const SylvesterProblem& p, const OrthonormalBasis& Q,
                          const OrthonormalBasis& U);

struct DirectSolveResult {
    Eigen::MatrixXd X;
    bool near_singular = false;  // some |lambda_i(A) + lambda_j(B)| within 1e-12 of zero
};

/// Schur-decomposition back substitution for A X + X B + C = 0 (dense, any
/// size the Schur form affords). An exact spectral collision throws; a
/// collision within 1e-12 * (||A|| + ||B||) only sets the warning.
DirectSolveResult bartels_stewart(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                  const Eigen::MatrixXd& C);

DirectSolveResult solve_small_sylvester(const ProjectedEquation& e);

/// Project onto the given bases, solve the small equation, and lift:
/// L = Q F and M = U G with F G^T an SVD factorization of the small
/// solution (no truncation unless truncate_tol > 0).
LowRankApproximation rkpm_solve_with_bases(const SylvesterProblem& p, const OrthonormalBasis& Q,
                                           const OrthonormalBasis& U, double truncate_tol = 0.0);

/// Galerkin solve over the rational Krylov spaces built from (A, b, sigma)
/// and (B^T, c, conj(sigma)) -- one shift set on both sides.
LowRankApproximation rkpm_solve(const SylvesterProblem& p, const ShiftSet& sigma,
                                double truncate_tol = 0.0);

/// Two-set variant for the factored iteration's subspace structure (left
/// space from mu, right from conj(sigma)). Outside the single-set
/// equivalence contract; intended for containment experiments.
LowRankApproximation rkpm_solve(const SylvesterProblem& p, const ShiftSet& sigma,
                                const ShiftSet& mu, double truncate_tol);

/// H(s) = c^T (s I - A)^{-1} b via one shifted solve.
std::complex<double> transfer_eval(const LtiSystem& sys, std::complex<double> s);

struct InterpolationReport {
    double max_resolvent_defect = 0.0;  // relative, over the generating shifts
    double max_transfer_defect = 0.0;   // relative |H(s_i) - H_r(s_i)|
};

/// Measures, at every generating shift, how far the lifted reduced
/// resolvent direction Q (s I - A_r)^{-1} Q^T b is from (s I - A)^{-1} b,
/// plus the matching transfer-function defect.
InterpolationReport galerkin_interpolation_check(const LtiSystem& sys,
                                                 const OrthonormalBasis& Q);

}  // namespace sylv
