#include "affectlex/svd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <Eigen/SVD>

#include "affectlex/errors.hpp"

namespace affectlex {

namespace {

constexpr int kDenseCutoff = 500;

// splitmix64; synthesizes the deterministic Lanczos start vector.
struct DeterministicStream {
  uint64_t state;
  explicit DeterministicStream(uint64_t seed) : state(seed) {}
  double next() {
    state += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-52 - 1.0;  // [-1, 1)
  }
};

void fix_signs(Eigen::MatrixXd& u, Eigen::MatrixXd& v) {
  for (Eigen::Index col = 0; col < u.cols(); ++col) {
    Eigen::Index argmax = 0;
    double best = 0.0;
    for (Eigen::Index row = 0; row < u.rows(); ++row) {
      double mag = std::abs(u(row, col));
      if (mag > best) {
        best = mag;
        argmax = row;
      }
    }
    if (u(argmax, col) < 0.0) {
      u.col(col) = -u.col(col);
      v.col(col) = -v.col(col);
    }
  }
}

// Count of singular values above the conventional numerical-rank threshold.
int numerical_rank(const Eigen::VectorXd& s, Eigen::Index max_dim) {
  if (s.size() == 0) return 0;
  const double cutoff = static_cast<double>(max_dim) *
                        std::numeric_limits<double>::epsilon() * s(0);
  int rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  return rank;
}

TruncatedSvd dense_svd(const Eigen::SparseMatrix<double>& matrix, int rank) {
  Eigen::MatrixXd dense(matrix);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(dense,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const int keep = std::min<int>(
      rank, numerical_rank(svd.singularValues(),
                           std::max(matrix.rows(), matrix.cols())));
  TruncatedSvd out;
  out.requested = rank;
  out.u = svd.matrixU().leftCols(keep);
  out.s = svd.singularValues().head(keep);
  out.v = svd.matrixV().leftCols(keep);
  fix_signs(out.u, out.v);
  return out;
}

// Golub-Kahan-Lanczos bidiagonalization with full reorthogonalization.
// After s complete steps:   A V_s = U_s B_s
//                           Aᵀ U_s = V_s B_sᵀ + beta(s-1) v_next e_sᵀ
// with B_s upper bidiagonal (alpha on the diagonal, beta above it).
// `exact` means the residual coupling vanished, so every Ritz pair of B_s
// is an exact singular pair of A.
struct GklFactorization {
  Eigen::MatrixXd u;
  Eigen::MatrixXd v;
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
  Eigen::VectorXd v_next;
  int steps_done = 0;
  bool exact = false;
  bool broke_down = false;  // stopped before the requested step count
};

GklFactorization gkl_sweep(const Eigen::SparseMatrix<double>& a, int steps) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  GklFactorization f;
  f.u.resize(m, steps);
  f.v.resize(n, steps);
  f.alpha.resize(steps);
  f.beta.resize(steps);

  auto reorthogonalize = [](Eigen::VectorXd& x, const Eigen::MatrixXd& basis,
                            int cols) {
    if (cols == 0) return;
    for (int pass = 0; pass < 2; ++pass) {  // twice is enough
      Eigen::VectorXd coeffs = basis.leftCols(cols).transpose() * x;
      x.noalias() -= basis.leftCols(cols) * coeffs;
    }
  };

  DeterministicStream stream(0x5afec0de5afec0deULL);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = stream.next();
  v.normalize();

  const double breakdown_tol = 1e-13;
  for (int j = 0; j < steps; ++j) {
    Eigen::VectorXd u = a * v;
    if (j > 0) u.noalias() -= f.beta(j - 1) * f.u.col(j - 1);
    reorthogonalize(u, f.u, j);
    const double alpha = u.norm();
    if (alpha <= breakdown_tol) {
      // A v_j lies in the span already captured; stop with j complete steps.
      f.steps_done = j;
      f.v_next = v;
      f.broke_down = true;
      return f;
    }
    u /= alpha;
    f.v.col(j) = v;
    f.u.col(j) = u;
    f.alpha(j) = alpha;

    Eigen::VectorXd w = a.transpose() * u;
    w.noalias() -= alpha * v;
    reorthogonalize(w, f.v, j + 1);
    const double beta = w.norm();
    f.beta(j) = beta;
    if (beta <= breakdown_tol) {
      // Invariant subspace pair found; the factorization is exact.
      f.beta(j) = 0.0;
      f.steps_done = j + 1;
      f.v_next = Eigen::VectorXd::Zero(n);
      f.exact = true;
      f.broke_down = j + 1 < steps;
      return f;
    }
    v = w / beta;
  }
  f.steps_done = steps;
  f.v_next = v;
  return f;
}

TruncatedSvd lanczos_svd(const Eigen::SparseMatrix<double>& a, int rank) {
  const Eigen::Index min_dim = std::min(a.rows(), a.cols());
  const double tol = 1e-10;

  int steps = static_cast<int>(
      std::min<Eigen::Index>(min_dim, std::max(2 * rank + 20, 60)));
  while (true) {
    GklFactorization f = gkl_sweep(a, steps);
    const int s = f.steps_done;
    if (s == 0) {
      return TruncatedSvd{Eigen::MatrixXd::Zero(a.rows(), 0),
                          Eigen::VectorXd::Zero(0),
                          Eigen::MatrixXd::Zero(a.cols(), 0), rank};
    }

    Eigen::MatrixXd bidiag = Eigen::MatrixXd::Zero(s, s);
    for (int i = 0; i < s; ++i) {
      bidiag(i, i) = f.alpha(i);
      if (i + 1 < s) bidiag(i, i + 1) = f.beta(i);
    }
    Eigen::BDCSVD<Eigen::MatrixXd> small(
        bidiag, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = small.singularValues();
    const int keep = std::min<int>(
        {rank, s, numerical_rank(sigma, std::max(a.rows(), a.cols()))});

    const double beta_last = f.exact ? 0.0 : f.beta(s - 1);
    bool converged = f.exact || s >= min_dim;
    if (!converged) {
      converged = true;
      const double scale = sigma.size() > 0 && sigma(0) > 0.0 ? sigma(0) : 1.0;
      for (int i = 0; i < keep; ++i) {
        if (std::abs(beta_last * small.matrixU()(s - 1, i)) > tol * scale) {
          converged = false;
          break;
        }
      }
    }
    // A breakdown re-runs the identical path, so expanding cannot help.
    if (converged || steps >= min_dim || f.broke_down) {
      TruncatedSvd out;
      out.requested = rank;
      out.u = f.u.leftCols(s) * small.matrixU().leftCols(keep);
      out.s = sigma.head(keep);
      out.v = f.v.leftCols(s) * small.matrixV().leftCols(keep);
      fix_signs(out.u, out.v);
      return out;
    }
    steps = static_cast<int>(std::min<Eigen::Index>(min_dim, 2 * steps));
  }
}

}  // namespace

TruncatedSvd truncated_svd(const Eigen::SparseMatrix<double>& matrix,
                           int rank) {
  if (rank < 1) throw ConfigError("SVD rank must be >= 1");
  if (matrix.rows() == 0 || matrix.cols() == 0 || matrix.nonZeros() == 0) {
    throw DataError("cannot factor an empty matrix");
  }
  rank = static_cast<int>(
      std::min<Eigen::Index>(rank, std::min(matrix.rows(), matrix.cols())));
  if (std::max(matrix.rows(), matrix.cols()) < kDenseCutoff) {
    return dense_svd(matrix, rank);
  }
  return lanczos_svd(matrix, rank);
}

}  // namespace affectlex
