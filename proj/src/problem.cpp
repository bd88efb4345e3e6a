#include "sylv/problem.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "sylv/matrix_market.hpp"

namespace sylv {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

SylvesterProblem::SylvesterProblem(std::shared_ptr<const LinearOperator> A_,
                                   std::shared_ptr<const LinearOperator> B_, Eigen::VectorXd b_,
                                   Eigen::VectorXd c_)
    : A(std::move(A_)), B(std::move(B_)), b(std::move(b_)), c(std::move(c_)) {
    if (!A || !B) throw InvalidArgumentError("problem operators must be non-null");
    if (A->dim() < 1 || B->dim() < 1)
        throw InvalidArgumentError("problem dimensions must be at least 1");
    if (b.size() != A->dim())
        throw InvalidArgumentError("length of b does not match the dimension of A");
    if (c.size() != B->dim())
        throw InvalidArgumentError("length of c does not match the dimension of B");
}

SylvesterProblem SylvesterProblem::from_dense(Eigen::MatrixXd A, Eigen::MatrixXd B,
                                              Eigen::VectorXd b, Eigen::VectorXd c) {
    return SylvesterProblem(make_dense_operator(std::move(A)), make_dense_operator(std::move(B)),
                            std::move(b), std::move(c));
}

LyapunovProblem::LyapunovProblem(std::shared_ptr<const LinearOperator> A_, Eigen::VectorXd b_)
    : A(std::move(A_)), b(std::move(b_)) {
    if (!A) throw InvalidArgumentError("problem operator must be non-null");
    if (b.size() != A->dim())
        throw InvalidArgumentError("length of b does not match the dimension of A");
}

LyapunovProblem LyapunovProblem::from_dense(Eigen::MatrixXd A, Eigen::VectorXd b) {
    return LyapunovProblem(make_dense_operator(std::move(A)), std::move(b));
}

SylvesterProblem LyapunovProblem::as_sylvester() const {
    return SylvesterProblem(A, transpose_of(A), b, b);
}

LtiSystem::LtiSystem(std::shared_ptr<const LinearOperator> A_, Eigen::VectorXd b_,
                     Eigen::VectorXd c_)
    : A(std::move(A_)), b(std::move(b_)), c(std::move(c_)) {
    if (!A) throw InvalidArgumentError("system operator must be non-null");
    if (b.size() != A->dim() || c.size() != A->dim())
        throw InvalidArgumentError("b and c must match the dimension of A");
}

SystemKind system_kind_from_string(const std::string& s) {
    if (s == "diagonal") return SystemKind::diagonal;
    if (s == "tridiagonal") return SystemKind::tridiagonal;
    if (s == "random-stable") return SystemKind::random_stable;
    throw InvalidArgumentError("unknown system kind '" + s + "'");
}

std::string to_string(SystemKind k) {
    switch (k) {
        case SystemKind::diagonal: return "diagonal";
        case SystemKind::tridiagonal: return "tridiagonal";
        case SystemKind::random_stable: return "random-stable";
    }
    return "?";
}

LtiSystem synth_stable_system(Eigen::Index n, SystemKind kind, std::uint64_t seed) {
    if (n < 1) throw InvalidArgumentError("system dimension must be at least 1");
    Eigen::MatrixXd A;
    switch (kind) {
        case SystemKind::diagonal: {
            A = Eigen::MatrixXd::Zero(n, n);
            for (Eigen::Index i = 0; i < n; ++i) A(i, i) = -static_cast<double>(i + 1);
            break;
        }
        case SystemKind::tridiagonal: {
            // Discrete Laplacian: eigenvalues -2 + 2 cos(k pi / (n+1)) in (-4, 0).
            A = Eigen::MatrixXd::Zero(n, n);
            for (Eigen::Index i = 0; i < n; ++i) {
                A(i, i) = -2.0;
                if (i + 1 < n) {
                    A(i, i + 1) = 1.0;
                    A(i + 1, i) = 1.0;
                }
            }
            break;
        }
        case SystemKind::random_stable: {
            std::mt19937_64 gen(seed);
            std::normal_distribution<double> dist(0.0, 1.0);
            Eigen::MatrixXd W(n, n);
            for (Eigen::Index j = 0; j < n; ++j)
                for (Eigen::Index i = 0; i < n; ++i) W(i, j) = dist(gen);
            A = -(W * W.transpose() / static_cast<double>(n) +
                  Eigen::MatrixXd::Identity(n, n));
            break;
        }
    }
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    return LtiSystem(make_dense_operator(std::move(A)), ones, ones);
}

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::satisfied: return "satisfied";
        case CheckStatus::violated: return "violated";
        case CheckStatus::unchecked: return "unchecked";
    }
    return "?";
}

ValidationReport validate_problem(const SylvesterProblem& p, Eigen::Index dense_cap) {
    ValidationReport rep;
    rep.min_separation = kNaN;
    rep.a_max_real = kNaN;
    rep.b_max_real = kNaN;

    const bool checkable = p.A->has_dense() && p.B->has_dense() && p.n() <= dense_cap &&
                           p.m() <= dense_cap;
    if (!checkable) return rep;

    Eigen::EigenSolver<Eigen::MatrixXd> ea(p.A->dense(), false);
    Eigen::EigenSolver<Eigen::MatrixXd> eb(p.B->dense(), false);
    const Eigen::VectorXcd la = ea.eigenvalues();
    const Eigen::VectorXcd lb = eb.eigenvalues();

    rep.a_max_real = la.real().maxCoeff();
    rep.b_max_real = lb.real().maxCoeff();
    rep.a_stable = rep.a_max_real < 0.0 ? CheckStatus::satisfied : CheckStatus::violated;
    rep.b_stable = rep.b_max_real < 0.0 ? CheckStatus::satisfied : CheckStatus::violated;

    double sep = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < la.size(); ++i)
        for (Eigen::Index j = 0; j < lb.size(); ++j)
            sep = std::min(sep, std::abs(la(i) + lb(j)));
    rep.min_separation = sep;
    rep.solvable = sep > 0.0 ? CheckStatus::satisfied : CheckStatus::violated;
    return rep;
}

ValidationReport validate_problem(const LyapunovProblem& p, Eigen::Index dense_cap) {
    return validate_problem(p.as_sylvester(), dense_cap);
}

ProblemBundle load_problem_bundle(const std::string& dir) {
    namespace fs = std::filesystem;
    const fs::path base(dir);
    const auto opt = [&](const char* name) -> std::string {
        fs::path p = base / name;
        return fs::exists(p) ? p.string() : std::string();
    };

    const std::string a_path = opt("A.mtx");
    if (a_path.empty()) throw IngestionError((base / "A.mtx").string(), 0, "bundle is missing A.mtx");
    const std::string b_path = opt("b.mtx");
    if (b_path.empty()) throw IngestionError((base / "b.mtx").string(), 0, "bundle is missing b.mtx");

    Eigen::MatrixXd A = load_matrix_market(a_path).matrix;
    if (A.rows() != A.cols()) throw IngestionError(a_path, 0, "A.mtx is not square");

    MatrixMarketFile bf = load_matrix_market(b_path);
    bool reduced = false;
    if (bf.matrix.cols() > 1) {
        reduced = true;  // multi-input system: keep the first input column
        bf.matrix = bf.matrix.leftCols(1).eval();
    }
    Eigen::VectorXd b = bf.matrix.col(0);
    if (b.size() != A.rows()) throw IngestionError(b_path, 0, "b.mtx length does not match A.mtx");

    const std::string bb_path = opt("B.mtx");
    const std::string c_path = opt("c.mtx");

    auto a_op = make_dense_operator(std::move(A));

    if (bb_path.empty() && c_path.empty()) {
        LyapunovProblem lp(a_op, b);
        ProblemBundle out{lp.as_sylvester(), true, reduced};
        return out;
    }

    std::shared_ptr<const LinearOperator> b_op =
        bb_path.empty() ? transpose_of(a_op)
                        : make_dense_operator(load_matrix_market(bb_path).matrix);
    Eigen::VectorXd c = b;
    if (!c_path.empty()) {
        MatrixMarketFile cf = load_matrix_market(c_path);
        if (cf.matrix.cols() > 1) {
            reduced = true;
            cf.matrix = cf.matrix.leftCols(1).eval();
        }
        c = cf.matrix.col(0);
    }
    if (c.size() != b_op->dim())
        throw IngestionError(c_path.empty() ? b_path : c_path, 0,
                             "c length does not match the column operator");
    return ProblemBundle{SylvesterProblem(a_op, b_op, std::move(b), std::move(c)), false, reduced};
}

}  // namespace sylv
