#include "dmpclab/linalg.hpp"

#include <Eigen/Eigenvalues>

#include "dmpclab/errors.hpp"

namespace dmpclab {

Eigen::VectorXd symmetric_spectrum(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols())
        throw DimensionMismatch("symmetric_spectrum: matrix is not square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw EigenSolverFailure("symmetric eigensolver did not converge");
    return es.eigenvalues();
}

double spectral_radius(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols())
        throw DimensionMismatch("spectral_radius: matrix is not square");
    if (m.size() == 0)
        throw DimensionMismatch("spectral_radius: empty matrix");
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw EigenSolverFailure("eigensolver did not converge");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double two_norm(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    // sqrt of the largest eigenvalue of M^T M; the Gram matrix is symmetric PSD.
    const Eigen::MatrixXd gram = m.transpose() * m;
    const Eigen::VectorXd ev = symmetric_spectrum(gram);
    const double lmax = ev(ev.size() - 1);
    return lmax > 0.0 ? std::sqrt(lmax) : 0.0;
}

bool is_symmetric(const Eigen::MatrixXd& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

Eigen::MatrixXd controllable_subspace(const Eigen::MatrixXd& A,
                                      const Eigen::MatrixXd& B,
                                      double rank_tol) {
    const Eigen::Index n = A.rows();
    Eigen::MatrixXd basis(n, 0);
    Eigen::MatrixXd block = B;
    for (Eigen::Index it = 0; it < n; ++it) {
        for (Eigen::Index c = 0; c < block.cols(); ++c) {
            Eigen::VectorXd v = block.col(c);
            if (basis.cols() > 0) v -= basis * (basis.transpose() * v);
            if (basis.cols() > 0) v -= basis * (basis.transpose() * v); // re-orthogonalize
            const double nv = v.norm();
            if (nv > rank_tol) {
                basis.conservativeResize(n, basis.cols() + 1);
                basis.col(basis.cols() - 1) = v / nv;
            }
        }
        if (basis.cols() == n) break;
        block = A * block;
    }
    return basis;
}

} // namespace dmpclab
