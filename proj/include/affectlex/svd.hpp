#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace affectlex {

struct TruncatedSvd {
  Eigen::MatrixXd u;  // columns orthonormal, sign-fixed
  Eigen::VectorXd s;  // non-increasing, all above the rank cutoff
  Eigen::MatrixXd v;
  int requested = 0;  // rank asked for; s.size() < requested means the
                      // matrix ran out of numerical rank
};

// Rank-k truncated SVD. Small problems go through a dense decomposition;
// larger ones through Golub-Kahan-Lanczos bidiagonalization with full
// reorthogonalization and a deterministic start vector, so repeated runs are
// bit-identical. Singular vectors follow a fixed sign convention: the
// largest-magnitude entry of each left singular vector is positive (first
// such entry on magnitude ties).
TruncatedSvd truncated_svd(const Eigen::SparseMatrix<double>& matrix,
                           int rank);

}  // namespace affectlex
