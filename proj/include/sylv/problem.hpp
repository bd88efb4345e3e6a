#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <Eigen/Dense>

#include "sylv/operators.hpp"

namespace sylv {

/// A X + X B + b c^T = 0 for the unknown n-by-m matrix X. The data is
/// immutable and shared; all solver entry points take the problem by
/// const reference.
struct SylvesterProblem {
    std::shared_ptr<const LinearOperator> A;
    std::shared_ptr<const LinearOperator> B;
    Eigen::VectorXd b;
    Eigen::VectorXd c;

    SylvesterProblem(std::shared_ptr<const LinearOperator> A_,
                     std::shared_ptr<const LinearOperator> B_, Eigen::VectorXd b_,
                     Eigen::VectorXd c_);
    static SylvesterProblem from_dense(Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::VectorXd b,
                                       Eigen::VectorXd c);

    Eigen::Index n() const { return A->dim(); }
    Eigen::Index m() const { return B->dim(); }
};

/// A X + X A^T + b b^T = 0; the Sylvester special case B = A^T, c = b.
struct LyapunovProblem {
    std::shared_ptr<const LinearOperator> A;
    Eigen::VectorXd b;

    LyapunovProblem(std::shared_ptr<const LinearOperator> A_, Eigen::VectorXd b_);
    static LyapunovProblem from_dense(Eigen::MatrixXd A, Eigen::VectorXd b);

    Eigen::Index n() const { return A->dim(); }
    SylvesterProblem as_sylvester() const;
};

/// x' = A x + b u, y = c^T x; transfer function H(s) = c^T (sI - A)^{-1} b.
struct LtiSystem {
    std::shared_ptr<const LinearOperator> A;
    Eigen::VectorXd b;
    Eigen::VectorXd c;

    LtiSystem(std::shared_ptr<const LinearOperator> A_, Eigen::VectorXd b_, Eigen::VectorXd c_);

    Eigen::Index n() const { return A->dim(); }
    LyapunovProblem controllability() const { return LyapunovProblem(A, b); }
};

enum class SystemKind { diagonal, tridiagonal, random_stable };

SystemKind system_kind_from_string(const std::string& s);
std::string to_string(SystemKind k);

/// Deterministic stable test systems: all eigenvalues of A have strictly
/// negative real part, b = c = ones. "random_stable" draws a seeded
/// standard-normal W and forms A = -(W W^T / n + I), which is symmetric
/// negative definite with eigenvalues <= -1.
LtiSystem synth_stable_system(Eigen::Index n, SystemKind kind, std::uint64_t seed);

enum class CheckStatus { satisfied, violated, unchecked };

std::string to_string(CheckStatus s);

struct ValidationReport {
    CheckStatus solvable = CheckStatus::unchecked;
    double min_separation = 0.0;  // min_{i,j} |lambda_i(A) + lambda_j(B)|, NaN when unchecked
    CheckStatus a_stable = CheckStatus::unchecked;
    CheckStatus b_stable = CheckStatus::unchecked;
    double a_max_real = 0.0;  // NaN when unchecked
    double b_max_real = 0.0;
};

/// Dense eigendecomposition checks; operators above `dense_cap` (or without
/// dense entries) are reported unchecked rather than failing.
ValidationReport validate_problem(const SylvesterProblem& p, Eigen::Index dense_cap = 1024);
ValidationReport validate_problem(const LyapunovProblem& p, Eigen::Index dense_cap = 1024);

/// Problem bundle: a directory holding A.mtx, b.mtx and optionally B.mtx,
/// c.mtx. Without B.mtx and c.mtx the bundle is a Lyapunov problem. A
/// multi-column b.mtx is reduced to its first column.
struct ProblemBundle {
    SylvesterProblem problem;
    bool is_lyapunov = false;
    bool reduced_multi_input = false;
};

ProblemBundle load_problem_bundle(const std::string& dir);

}  // namespace sylv
