#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "affectlex/embed.hpp"
#include "affectlex/lexicon.hpp"

namespace affectlex {

struct KnnParams {
  int k = 30;
};

struct RandomWalkParams {
  double beta = 0.9;
  int graph_neighbors = 25;
  double tolerance = 1e-6;
  int max_iterations = 1000;
};

// Bookkeeping the induction engines expose for provenance.
struct InduceDiagnostics {
  uint64_t clipped_similarities = 0;  // negative cosines clipped to 0
  uint64_t degenerate_words = 0;      // fell back to the seed mean / center
  bool converged = true;
  int iterations = 0;
};

// e(w) = mean of the ratings of the k seed words most similar to w.
// Ties at the k-th neighbor prefer higher corpus frequency, then the
// lexicographically smaller word.
VadLexicon induce_knn(const EmbeddingStore& store, const VadLexicon& seeds,
                      const KnnParams& params,
                      InduceDiagnostics* diag = nullptr);

// e(w) = sum_s sim(w,s) e(s) / sum_s sim(w,s) over the whole seed set, with
// sim = max(cosine, 0). Words whose similarity mass vanishes get the seed
// mean and are counted in the diagnostics.
VadLexicon induce_parasim(const EmbeddingStore& store, const VadLexicon& seeds,
                          InduceDiagnostics* diag = nullptr);

// Similarity graph over the embedding vocabulary: each word connects to its
// nearest neighbors by cosine (clipped at 0), edges symmetrized by max.
// Vertices that end up with zero degree get a unit self-loop so the
// symmetric normalization T = D^-1/2 E D^-1/2 stays defined.
class LexicalGraph {
 public:
  static LexicalGraph build(const EmbeddingStore& store,
                            const RandomWalkParams& params,
                            InduceDiagnostics* diag = nullptr);

  std::size_t vertex_count() const {
    return static_cast<std::size_t>(transition_.rows());
  }
  const Eigen::SparseMatrix<double>& edges() const { return edges_; }
  const Eigen::SparseMatrix<double>& transition() const { return transition_; }

 private:
  Eigen::SparseMatrix<double> edges_;
  Eigen::SparseMatrix<double> transition_;
};

struct PropagationResult {
  Eigen::MatrixXd scores;
  int iterations = 0;
  bool converged = false;
};

// Iterates P <- beta T P + (1 - beta) S from P = 1/|V| until the max-abs
// change drops below the tolerance. The fixed point is
// (I - beta T)^-1 (1 - beta) S.
PropagationResult propagate(const LexicalGraph& graph,
                            const Eigen::MatrixXd& seed_matrix,
                            const RandomWalkParams& params);

// Column-normalized seed matrices for the positive pass (original values)
// and the negative pass (values reflected about the scale center).
// Throws when a column sums to zero.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> build_seed_matrices(
    const EmbeddingStore& store, const VadLexicon& seeds);

// Two label propagations combined as P+ / (P+ + P-), mapped affinely onto
// the seed scale.
VadLexicon induce_randomwalk(const EmbeddingStore& store,
                             const LexicalGraph& graph,
                             const VadLexicon& seeds,
                             const RandomWalkParams& params,
                             InduceDiagnostics* diag = nullptr);

}  // namespace affectlex
