#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ucpkit/rng.hpp"

namespace ucp::linalg {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// (A + A†)/2.
Matrix hermitize(const Matrix& a);

/// Largest singular value.
double spectral_norm(const Matrix& a);

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // columns
};

/// Eigendecomposition of a Hermitian matrix (input is hermitized first).
EigenSystem eigh(const Matrix& a);

struct SpectralCluster {
  double value;      // mean of the clustered eigenvalues
  Matrix projector;  // sum of the cluster's eigenprojections
};

/// Groups eigenvalues whose consecutive gaps are <= eps and sums their
/// eigenprojections. The projectors form a resolution of the identity.
std::vector<SpectralCluster> cluster_spectrum(const EigenSystem& es, double eps);

/// d x d matrix of i.i.d. complex standard Gaussians.
Matrix ginibre(int rows, int cols, RngStream& rng);

/// Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal
/// phases absorbed into Q.
Matrix haar_unitary(int d, RngStream& rng);

/// Projection onto the span of the given columns (modified Gram-Schmidt;
/// vectors below the drop tolerance contribute nothing).
Matrix projector_onto_span(const Matrix& columns, double drop_tol = 1e-12);

/// Least-squares solution of a real system, plus its numerical rank.
struct LeastSquares {
  Eigen::VectorXd solution;
  int rank;
};
LeastSquares solve_least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                 double rank_tol = 1e-10);

}  // namespace ucp::linalg
