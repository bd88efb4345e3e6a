#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

// Reference computations for the tests, kept independent of the library's
// solve paths.

namespace test_support {

// Ground truth through the vectorized form (I (x) A + B^T (x) I) x = -vec(b c^T).
inline Eigen::MatrixXd kron_solve_sylvester(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                            const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
    const Eigen::Index n = A.rows();
    const Eigen::Index m = B.rows();
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n * m, n * m);
    for (Eigen::Index j = 0; j < m; ++j) K.block(j * n, j * n, n, n) = A;
    for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index k = 0; k < m; ++k)
            K.block(j * n, k * n, n, n).diagonal().array() += B(k, j);
    Eigen::MatrixXd Y = b * c.transpose();
    Eigen::VectorXd rhs = -Eigen::Map<Eigen::VectorXd>(Y.data(), n * m);
    Eigen::VectorXd x = K.fullPivLu().solve(rhs);
    return Eigen::Map<Eigen::MatrixXd>(x.data(), n, m);
}

inline Eigen::MatrixXd kron_solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    return kron_solve_sylvester(A, Eigen::MatrixXd(A.transpose()), b, b);
}

// Orthogonal projector onto the column span of V, via rank-revealing QR.
inline Eigen::MatrixXd span_projector(const Eigen::MatrixXd& V, double rank_tol = 1e-10) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V);
    qr.setThreshold(rank_tol);
    const Eigen::Index r = qr.rank();
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(V.rows(), r);
    return Q * Q.transpose();
}

// Explicit resolvent directions (sigma_i I - A)^{-1} b as real columns
// (real and imaginary parts for complex shifts).
inline Eigen::MatrixXd explicit_rational_directions(
    const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
    const std::vector<std::complex<double>>& shifts) {
    const Eigen::Index n = A.rows();
    std::vector<Eigen::VectorXd> cols;
    for (const auto& s : shifts) {
        Eigen::MatrixXcd M = -A.cast<std::complex<double>>();
        M.diagonal().array() += s;
        Eigen::VectorXcd x = M.fullPivLu().solve(b.cast<std::complex<double>>());
        cols.push_back(x.real());
        if (s.imag() != 0.0) cols.push_back(x.imag());
    }
    Eigen::MatrixXd V(n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) V.col(static_cast<Eigen::Index>(j)) = cols[j];
    return V;
}

inline Eigen::MatrixXd random_orthonormal(Eigen::Index n, Eigen::Index r, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Eigen::MatrixXd G(n, r);
    for (Eigen::Index j = 0; j < r; ++j)
        for (Eigen::Index i = 0; i < n; ++i) G(i, j) = dist(gen);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    return qr.householderQ() * Eigen::MatrixXd::Identity(n, r);
}

inline double two_norm(const Eigen::MatrixXd& X) {
    return X.size() == 0 ? 0.0 : Eigen::JacobiSVD<Eigen::MatrixXd>(X).singularValues()(0);
}

}  // namespace test_support
