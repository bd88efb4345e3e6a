#pragma once

#include <complex>

#include <Eigen/Dense>

#include "sylv/problem.hpp"
#include "sylv/shift_set.hpp"

namespace sylv {

/// Shift pairs (alpha_i, beta_i) consumed by the dense iteration. Solver
/// entry points use alpha_i = -sigma_i, beta_i = -mu_i, so both sequences
/// have negative real parts for admissible sigma, mu.
struct AdiShiftPairs {
    std::vector<std::complex<double>> alpha;
    std::vector<std::complex<double>> beta;

    static AdiShiftPairs from_sigma_mu(const ShiftSet& sigma, const ShiftSet& mu);
    std::size_t steps() const { return alpha.size(); }
};

/// Rank-r approximation X = L M^T with real factors.
struct LowRankApproximation {
    Eigen::MatrixXd L;
    Eigen::MatrixXd M;

    Eigen::Index rank() const { return L.cols(); }
    Eigen::MatrixXd dense() const { return L * M.transpose(); }
    double norm2() const;
};

/// Exact || F G^T ||_2 computed from the factors alone (thin QR of each
/// factor, then the SVD of the small core).
double factored_two_norm(const Eigen::MatrixXd& F, const Eigen::MatrixXd& G);

/// One fixed-point step
///   X_i = (A - a I)(A + b I)^{-1} X_{i-1} (B - b I)(B + a I)^{-1}
///         - (a + b)(A + b I)^{-1} b c^T (B + a I)^{-1},
/// evaluated in exactly this algebraic form on dense operators. The exact
/// solution is a fixed point for every admissible shift pair.
Eigen::MatrixXcd adi_step_dense(const SylvesterProblem& p, const Eigen::MatrixXcd& X_prev,
                                std::complex<double> alpha, std::complex<double> beta);
Eigen::MatrixXcd adi_step_dense(const SylvesterProblem& p, const Eigen::MatrixXd& X_prev,
                                std::complex<double> alpha, std::complex<double> beta);

/// Composition of adi_step_dense over all pairs, starting from X0.
Eigen::MatrixXcd adi_dense_sweep(const SylvesterProblem& p, const Eigen::MatrixXcd& X0,
                                 const AdiShiftPairs& pairs);

/// Factored iteration from X_0 = 0 with alpha_i = -sigma_i, beta_i = -mu_i:
/// after step i the new column (mu_i + sigma_i)(A - mu_i I)^{-1} b is
/// appended on the left, prior left columns are multiplied by
/// (A + sigma_i I)(A - mu_i I)^{-1}, and the right factor mirrors this with
/// (B^T - conj(sigma_i) I)^{-1}(B^T + conj(mu_i) I). Conjugate pair
/// arithmetic is compressed to real factors of rank at most r, with column
/// norms balanced between L and M.
LowRankApproximation adi_lowrank(const SylvesterProblem& p, const ShiftSet& sigma,
                                 const ShiftSet& mu);

/// Lyapunov case (B = A^T, c = b, mu = sigma). The returned factors
/// represent an exactly symmetric matrix: M = L S for a diagonal sign
/// coupling S.
LowRankApproximation adi_lyapunov(const LyapunovProblem& p, const ShiftSet& sigma);

/// Single-factor form Z with X = Z Z^T for a symmetric positive
/// semidefinite approximation; eigenvalues below -clamp_tol * max are
/// clamped to zero.
Eigen::MatrixXd psd_factor(const LowRankApproximation& x, double clamp_tol = 1e-10);

}  // namespace sylv
