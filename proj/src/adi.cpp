#include "sylv/adi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sylv/krylov.hpp"

namespace sylv {

namespace {

using Complex = std::complex<double>;

Eigen::MatrixXd thin_q(const Eigen::MatrixXd& F, Eigen::Index k) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(F);
    return qr.householderQ() * Eigen::MatrixXd::Identity(F.rows(), k);
}

Eigen::MatrixXd thin_r(const Eigen::MatrixXd& F, Eigen::Index k) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(F);
    return Eigen::MatrixXd(qr.matrixQR().topRows(k).triangularView<Eigen::Upper>());
}

// Real factors for Re(Lc Mc^*) of rank at most `target_rank`:
// [Re L, Im L][Re M, Im M]^T equals the real part exactly, and the SVD of
// the small core exposes its true rank.
LowRankApproximation compress_to_real(const Eigen::MatrixXcd& Lc, const Eigen::MatrixXcd& Mc,
                                      Eigen::Index target_rank) {
    const Eigen::Index n = Lc.rows();
    const Eigen::Index m = Mc.rows();
    const Eigen::Index p = 2 * Lc.cols();
    Eigen::MatrixXd F(n, p), G(m, p);
    F << Lc.real(), Lc.imag();
    G << Mc.real(), Mc.imag();

    const Eigen::Index kf = std::min(n, p);
    const Eigen::Index kg = std::min(m, p);
    Eigen::MatrixXd Rf = thin_r(F, kf);
    Eigen::MatrixXd Rg = thin_r(G, kg);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Rf * Rg.transpose(),
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::Index k = std::min<Eigen::Index>(target_rank, svd.singularValues().size());
    const Eigen::ArrayXd sqrt_sv = svd.singularValues().head(k).array().sqrt();

    LowRankApproximation out;
    out.L = thin_q(F, kf) * (svd.matrixU().leftCols(k) * sqrt_sv.matrix().asDiagonal());
    out.M = thin_q(G, kg) * (svd.matrixV().leftCols(k) * sqrt_sv.matrix().asDiagonal());
    return out;
}

}  // namespace

AdiShiftPairs AdiShiftPairs::from_sigma_mu(const ShiftSet& sigma, const ShiftSet& mu) {
    if (sigma.size() != mu.size())
        throw InvalidArgumentError("mismatched shift list lengths for the paired iteration");
    AdiShiftPairs out;
    out.alpha.reserve(sigma.size());
    out.beta.reserve(mu.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        out.alpha.push_back(-sigma[i]);
        out.beta.push_back(-mu[i]);
    }
    return out;
}

double factored_two_norm(const Eigen::MatrixXd& F, const Eigen::MatrixXd& G) {
    if (F.cols() != G.cols()) throw InvalidArgumentError("factored_two_norm: column mismatch");
    if (F.cols() == 0) return 0.0;
    const Eigen::Index kf = std::min(F.rows(), F.cols());
    const Eigen::Index kg = std::min(G.rows(), G.cols());
    Eigen::MatrixXd core = thin_r(F, kf) * thin_r(G, kg).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(core);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double LowRankApproximation::norm2() const { return factored_two_norm(L, M); }

Eigen::MatrixXcd adi_step_dense(const SylvesterProblem& p, const Eigen::MatrixXcd& X_prev,
                                Complex alpha, Complex beta) {
    if (!p.A->has_dense() || !p.B->has_dense())
        throw InvalidArgumentError("adi_step_dense needs dense operators");
    if (X_prev.rows() != p.n() || X_prev.cols() != p.m())
        throw InvalidArgumentError("adi_step_dense: X_prev has wrong dimensions");

    const Eigen::MatrixXcd A = p.A->dense().cast<Complex>();
    const Eigen::MatrixXcd B = p.B->dense().cast<Complex>();
    const Eigen::Index n = p.n();
    const Eigen::Index m = p.m();

    Eigen::MatrixXcd A_shift = A;
    A_shift.diagonal().array() += beta;
    Eigen::MatrixXcd B_shift = B;
    B_shift.diagonal().array() += alpha;

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu_a(A_shift);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu_b(B_shift.transpose());

    const double pivot_a = lu_a.matrixLU().diagonal().cwiseAbs().minCoeff();
    const double pivot_b = lu_b.matrixLU().diagonal().cwiseAbs().minCoeff();
    const double eps = std::numeric_limits<double>::epsilon();
    if (pivot_a <= static_cast<double>(n) * eps * A_shift.cwiseAbs().maxCoeff())
        throw ShiftCollisionError(-beta);
    if (pivot_b <= static_cast<double>(m) * eps * B_shift.cwiseAbs().maxCoeff())
        throw ShiftCollisionError(-alpha);

    const auto right_solve = [&](const Eigen::MatrixXcd& Z) -> Eigen::MatrixXcd {
        // Z (B + alpha I)^{-1}
        return lu_b.solve(Z.transpose()).transpose();
    };

    Eigen::MatrixXcd T = lu_a.solve(X_prev);
    Eigen::MatrixXcd Am = A;
    Am.diagonal().array() -= alpha;
    Eigen::MatrixXcd Bm = B;
    Bm.diagonal().array() -= beta;
    Eigen::MatrixXcd first = right_solve((Am * T) * Bm);

    Eigen::MatrixXcd Y = (p.b * p.c.transpose()).cast<Complex>();
    Eigen::MatrixXcd second = right_solve(lu_a.solve(Y));

    return first - (alpha + beta) * second;
}

Eigen::MatrixXcd adi_step_dense(const SylvesterProblem& p, const Eigen::MatrixXd& X_prev,
                                Complex alpha, Complex beta) {
    return adi_step_dense(p, Eigen::MatrixXcd(X_prev.cast<Complex>()), alpha, beta);
}

Eigen::MatrixXcd adi_dense_sweep(const SylvesterProblem& p, const Eigen::MatrixXcd& X0,
                                 const AdiShiftPairs& pairs) {
    Eigen::MatrixXcd X = X0;
    for (std::size_t i = 0; i < pairs.steps(); ++i)
        X = adi_step_dense(p, X, pairs.alpha[i], pairs.beta[i]);
    return X;
}

LowRankApproximation adi_lowrank(const SylvesterProblem& p, const ShiftSet& sigma,
                                 const ShiftSet& mu) {
    if (sigma.size() != mu.size())
        throw InvalidArgumentError("mismatched shift list lengths for the paired iteration");
    const Eigen::Index r = static_cast<Eigen::Index>(sigma.size());
    const Eigen::Index n = p.n();
    const Eigen::Index m = p.m();

    Eigen::MatrixXcd Lc(n, r), Mc(m, r);
    const Eigen::VectorXcd bc = p.b.cast<Complex>();
    const Eigen::VectorXcd cc = p.c.cast<Complex>();

    for (Eigen::Index i = 0; i < r; ++i) {
        const Complex s = sigma[static_cast<std::size_t>(i)];
        const Complex u = mu[static_cast<std::size_t>(i)];
        if (i > 0) {
            // (A + s I)(A - u I)^{-1} applied to the existing left columns
            Eigen::MatrixXcd T = -p.A->solve_shifted(u, Eigen::MatrixXcd(Lc.leftCols(i)));
            Lc.leftCols(i) = p.A->apply_columns(T) + s * T;
            // (B^T - conj(s) I)^{-1} (B^T + conj(u) I) on the right columns
            Eigen::MatrixXcd W(m, i);
            for (Eigen::Index j = 0; j < i; ++j)
                W.col(j) = p.B->apply_transpose(Eigen::VectorXcd(Mc.col(j)));
            W += std::conj(u) * Mc.leftCols(i);
            Mc.leftCols(i) = -p.B->solve_shifted_transpose(std::conj(s), W);
        }
        Lc.col(i) = -(u + s) * p.A->solve_shifted(u, bc);
        Mc.col(i) = -p.B->solve_shifted_transpose(std::conj(s), cc);
    }

    return compress_to_real(Lc, Mc, r);
}

LowRankApproximation adi_lyapunov(const LyapunovProblem& p, const ShiftSet& sigma) {
    LowRankApproximation x = adi_lowrank(p.as_sylvester(), sigma, sigma);
    const Eigen::Index r = x.rank();
    const Eigen::Index n = p.n();

    // Re-express over one orthonormal column space and symmetrize the small
    // core; the represented matrix becomes symmetric by construction.
    detail::BasisBuilder builder(n, 2 * r);
    for (Eigen::Index j = 0; j < r; ++j) builder.add(x.L.col(j));
    for (Eigen::Index j = 0; j < r; ++j) builder.add(x.M.col(j));
    const Eigen::MatrixXd W = builder.take();

    Eigen::MatrixXd core = (W.transpose() * x.L) * (W.transpose() * x.M).transpose();
    core = 0.5 * (core + core.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(core);

    // order by |lambda| descending, keep at most r
    const Eigen::Index k = std::min(r, core.rows());
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(core.rows()));
    for (Eigen::Index i = 0; i < core.rows(); ++i) idx[static_cast<std::size_t>(i)] = i;
    std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
        return std::abs(eig.eigenvalues()(a)) > std::abs(eig.eigenvalues()(b));
    });

    LowRankApproximation out;
    out.L.resize(n, k);
    out.M.resize(n, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        const double lambda = eig.eigenvalues()(idx[static_cast<std::size_t>(j)]);
        const Eigen::VectorXd dir = W * eig.eigenvectors().col(idx[static_cast<std::size_t>(j)]);
        const double root = std::sqrt(std::abs(lambda));
        out.L.col(j) = root * dir;
        out.M.col(j) = (lambda < 0 ? -root : root) * dir;
    }
    return out;
}

Eigen::MatrixXd psd_factor(const LowRankApproximation& x, double clamp_tol) {
    detail::BasisBuilder builder(x.L.rows(), 2 * x.rank());
    for (Eigen::Index j = 0; j < x.rank(); ++j) builder.add(x.L.col(j));
    for (Eigen::Index j = 0; j < x.rank(); ++j) builder.add(x.M.col(j));
    const Eigen::MatrixXd W = builder.take();

    Eigen::MatrixXd core = (W.transpose() * x.L) * (W.transpose() * x.M).transpose();
    core = 0.5 * (core + core.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(core);
    const double floor = -clamp_tol * std::max(std::abs(eig.eigenvalues().minCoeff()),
                                               std::abs(eig.eigenvalues().maxCoeff()));

    Eigen::Index kept = 0;
    Eigen::MatrixXd Z(x.L.rows(), core.rows());
    for (Eigen::Index j = core.rows() - 1; j >= 0; --j) {  // descending eigenvalues
        const double lambda = eig.eigenvalues()(j);
        if (lambda < floor)
            throw InvalidArgumentError("psd_factor: the represented matrix is not PSD");
        if (lambda <= 0.0) continue;
        Z.col(kept++) = std::sqrt(lambda) * (W * eig.eigenvectors().col(j));
    }
    return Z.leftCols(kept).eval();
}

}  // namespace sylv
