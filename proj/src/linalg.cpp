#include "ucpkit/linalg.hpp"

#include <cmath>

#include "ucpkit/errors.hpp"

namespace ucp::linalg {

Matrix hermitize(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

double spectral_norm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

EigenSystem eigh(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(a));
  if (solver.info() != Eigen::Success) {
    throw error("eigendecomposition failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<SpectralCluster> cluster_spectrum(const EigenSystem& es, double eps) {
  std::vector<SpectralCluster> clusters;
  const int n = static_cast<int>(es.values.size());
  int start = 0;
  while (start < n) {
    int stop = start + 1;
    while (stop < n && es.values(stop) - es.values(stop - 1) <= eps) ++stop;
    const int width = stop - start;
    const Matrix block = es.vectors.middleCols(start, width);
    clusters.push_back({es.values.segment(start, width).mean(), block * block.adjoint()});
    start = stop;
  }
  return clusters;
}

Matrix ginibre(int rows, int cols, RngStream& rng) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
  return g;
}

Matrix haar_unitary(int d, RngStream& rng) {
  const Matrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fixing the phases of the R diagonal makes the distribution Haar rather
  // than merely unitary.
  for (int j = 0; j < d; ++j) {
    const std::complex<double> rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= (mag > 0.0) ? rjj / mag : 1.0;
  }
  return q;
}

Matrix projector_onto_span(const Matrix& columns, double drop_tol) {
  const int d = static_cast<int>(columns.rows());
  Matrix basis(d, columns.cols());
  int kept = 0;
  double max_norm = 0.0;
  for (int j = 0; j < columns.cols(); ++j) max_norm = std::max(max_norm, columns.col(j).norm());
  for (int j = 0; j < columns.cols(); ++j) {
    Vector v = columns.col(j);
    for (int i = 0; i < kept; ++i) v -= basis.col(i).dot(v) * basis.col(i);
    // Second pass keeps the basis orthonormal to working precision.
    for (int i = 0; i < kept; ++i) v -= basis.col(i).dot(v) * basis.col(i);
    const double len = v.norm();
    if (len > drop_tol * std::max(1.0, max_norm)) {
      basis.col(kept++) = v / len;
    }
  }
  if (kept == 0) return Matrix::Zero(d, d);
  const Matrix b = basis.leftCols(kept);
  return b * b.adjoint();
}

LeastSquares solve_least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                 double rank_tol) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  const double cutoff = sv.size() > 0 ? rank_tol * sv(0) : 0.0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return {svd.solve(b), rank};
}

}  // namespace ucp::linalg
