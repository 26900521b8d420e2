#pragma once

#include <Eigen/Dense>

namespace dmpclab {

// Eigenvalues of a symmetric matrix, ascending. Throws EigenSolverFailure if
// the iteration does not converge.
Eigen::VectorXd symmetric_spectrum(const Eigen::MatrixXd& m);

// Largest eigenvalue magnitude of a square (not necessarily symmetric) matrix.
double spectral_radius(const Eigen::MatrixXd& m);

// Induced 2-norm (largest singular value).
double two_norm(const Eigen::MatrixXd& m);

bool is_symmetric(const Eigen::MatrixXd& m, double tol = 1e-9);

// Orthonormal basis of the Krylov/controllable subspace span[B, AB, ..., A^{n-1}B].
// Columns are orthonormal; rank decided with the given tolerance.
Eigen::MatrixXd controllable_subspace(const Eigen::MatrixXd& A,
                                      const Eigen::MatrixXd& B,
                                      double rank_tol = 1e-8);

} // namespace dmpclab
