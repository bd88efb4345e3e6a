#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sylv/operators.hpp"
#include "sylv/shift_set.hpp"

namespace sylv {

struct PseudoH2Result {
    ShiftSet shifts;
    int sweeps = 0;
    std::vector<double> history;  // max matched shift change per sweep
    bool converged = false;
    int stabilized = 0;  // mirrored candidates whose real part needed the fix-up
};

/// Eigenvalue-mirroring fixed point: sigma <- -lambda(Q^T A Q) with Q the
/// rational Krylov basis of the current shifts. Stops when the matched
/// change (after sorting by real then imaginary part) drops below tol, or
/// at max_sweeps. A mirrored candidate with nonpositive real part has its
/// real part replaced by |Re| + tol. Non-convergence is reported in the
/// result, never thrown.
///
/// Without sigma0 the iteration starts from logarithmically spaced real
/// points between the smallest and largest Ritz-value magnitudes of a
/// 10-step Arnoldi run on (A, b).
PseudoH2Result pseudo_h2_shifts(std::shared_ptr<const LinearOperator> A,
                                const Eigen::VectorXd& b, Eigen::Index r,
                                std::optional<ShiftSet> sigma0 = std::nullopt,
                                double tol = 1e-8, int max_sweeps = 100);

/// The default initialization described above, exposed for reproducibility.
ShiftSet default_h2_seed_shifts(std::shared_ptr<const LinearOperator> A,
                                const Eigen::VectorXd& b, Eigen::Index r);

struct PenzlResult {
    ShiftSet shifts;
    bool reflected_unstable_ritz = false;
};

/// Heuristic shift selection: mirror the Ritz values of A (k_plus-step
/// Arnoldi from b) and the reciprocated Ritz values of A^{-1} (k_minus
/// steps) into the right half plane, then pick shifts greedily -- first the
/// candidate minimizing the worst value of |prod (x - s)/(x + s)| over the
/// candidate set, then repeatedly the candidate where the current product
/// attains its maximum. A selected complex shift brings its conjugate, so
/// the result may hold r + 1 shifts.
PenzlResult penzl_shifts(std::shared_ptr<const LinearOperator> A, const Eigen::VectorXd& b,
                         int k_plus, int k_minus, int r);

/// { -lambda_i(A) } for dense stable A.
ShiftSet mirrored_spectrum_shifts(const LinearOperator& A);

}  // namespace sylv
