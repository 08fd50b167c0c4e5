#include "affectlex/induce.hpp"

#include <algorithm>
#include <cmath>

#include "affectlex/errors.hpp"

namespace affectlex {

namespace {

struct SeedVectors {
  std::vector<uint32_t> indices;  // ascending store index
  std::vector<VadRating> ratings;
  VadRating mean;
  VadRating min;
  VadRating max;
};

// Resolves seed words against the store in a fixed (index) order, so results
// never depend on the seed lexicon's iteration order.
SeedVectors resolve_seeds(const EmbeddingStore& store,
                          const VadLexicon& seeds) {
  if (seeds.empty()) throw DataError("seed lexicon is empty");
  std::vector<std::pair<uint32_t, VadRating>> resolved;
  resolved.reserve(seeds.size());
  for (const auto& [word, rating] : seeds) {
    auto idx = store.index_of(word);
    if (!idx) {
      throw DataError("seed word '" + word + "' has no embedding vector");
    }
    resolved.emplace_back(*idx, rating);
  }
  std::sort(resolved.begin(), resolved.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  SeedVectors out;
  out.indices.reserve(resolved.size());
  out.ratings.reserve(resolved.size());
  for (int dim = 0; dim < 3; ++dim) {
    out.min[dim] = std::numeric_limits<double>::infinity();
    out.max[dim] = -std::numeric_limits<double>::infinity();
  }
  VadRating sum{0.0, 0.0, 0.0};
  for (auto& [index, rating] : resolved) {
    out.indices.push_back(index);
    out.ratings.push_back(rating);
    for (int dim = 0; dim < 3; ++dim) {
      sum[dim] += rating[dim];
      out.min[dim] = std::min(out.min[dim], rating[dim]);
      out.max[dim] = std::max(out.max[dim], rating[dim]);
    }
  }
  for (int dim = 0; dim < 3; ++dim) {
    sum[dim] /= static_cast<double>(resolved.size());
  }
  out.mean = sum;
  return out;
}

// Cosine for induction purposes: a zero vector has similarity 0 to
// everything instead of raising, so degenerate words degrade gracefully.
double safe_cosine(const EmbeddingStore& store, uint32_t i, uint32_t j,
                   const std::vector<double>& norms) {
  if (norms[i] == 0.0 || norms[j] == 0.0) return 0.0;
  const Eigen::MatrixXd& m = store.vectors();
  double dot = 0.0;
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    dot += m(i, k) * m(j, k);
  }
  return std::clamp(dot / std::sqrt(norms[i] * norms[j]), -1.0, 1.0);
}

std::vector<double> squared_norms(const EmbeddingStore& store) {
  const Eigen::MatrixXd& m = store.vectors();
  std::vector<double> norms(store.size());
  for (uint32_t i = 0; i < store.size(); ++i) {
    double sum = 0.0;
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      sum += m(i, k) * m(i, k);
    }
    norms[i] = sum;
  }
  return norms;
}

VadRating clamp_to_hull(VadRating value, const SeedVectors& seeds) {
  for (int dim = 0; dim < 3; ++dim) {
    value[dim] = std::clamp(value[dim], seeds.min[dim], seeds.max[dim]);
  }
  return value;
}

// Ordering for neighbor selection: higher similarity first, then higher
// corpus frequency, then the lexicographically smaller word.
struct Candidate {
  double sim;
  uint64_t count;
  const std::string* word;
  uint32_t position;  // into SeedVectors arrays (or store index for graphs)
};

bool candidate_before(const Candidate& a, const Candidate& b) {
  if (a.sim != b.sim) return a.sim > b.sim;
  if (a.count != b.count) return a.count > b.count;
  return *a.word < *b.word;
}

}  // namespace

VadLexicon induce_knn(const EmbeddingStore& store, const VadLexicon& seeds,
                      const KnnParams& params, InduceDiagnostics* diag) {
  SeedVectors resolved = resolve_seeds(store, seeds);
  if (params.k < 1) throw ConfigError("k must be >= 1");
  if (static_cast<std::size_t>(params.k) > resolved.indices.size()) {
    throw ConfigError("k = " + std::to_string(params.k) +
                      " exceeds seed count " +
                      std::to_string(resolved.indices.size()));
  }
  const auto norms = squared_norms(store);
  const auto k = static_cast<std::size_t>(params.k);

  VadLexicon induced(seeds.scale());
  std::vector<Candidate> candidates(resolved.indices.size());
  for (uint32_t w = 0; w < store.size(); ++w) {
    for (std::size_t s = 0; s < resolved.indices.size(); ++s) {
      const uint32_t seed_index = resolved.indices[s];
      candidates[s] =
          Candidate{safe_cosine(store, w, seed_index, norms),
                    store.count_at(seed_index), &store.word_at(seed_index),
                    static_cast<uint32_t>(s)};
    }
    std::sort(candidates.begin(), candidates.end(), candidate_before);
    VadRating sum{0.0, 0.0, 0.0};
    for (std::size_t s = 0; s < k; ++s) {
      const VadRating& rating = resolved.ratings[candidates[s].position];
      for (int dim = 0; dim < 3; ++dim) sum[dim] += rating[dim];
    }
    for (int dim = 0; dim < 3; ++dim) sum[dim] /= static_cast<double>(k);
    induced.insert(store.word_at(w), clamp_to_hull(sum, resolved));
  }
  if (diag) diag->iterations = 1;
  return induced;
}

VadLexicon induce_parasim(const EmbeddingStore& store, const VadLexicon& seeds,
                          InduceDiagnostics* diag) {
  SeedVectors resolved = resolve_seeds(store, seeds);
  const auto norms = squared_norms(store);
  constexpr double kDegenerate = 1e-9;

  VadLexicon induced(seeds.scale());
  for (uint32_t w = 0; w < store.size(); ++w) {
    double weight_sum = 0.0;
    VadRating weighted{0.0, 0.0, 0.0};
    for (std::size_t s = 0; s < resolved.indices.size(); ++s) {
      double sim = safe_cosine(store, w, resolved.indices[s], norms);
      if (sim < 0.0) {
        sim = 0.0;
        if (diag) ++diag->clipped_similarities;
      }
      weight_sum += sim;
      for (int dim = 0; dim < 3; ++dim) {
        weighted[dim] += sim * resolved.ratings[s][dim];
      }
    }
    VadRating value;
    if (weight_sum < kDegenerate) {
      value = resolved.mean;
      if (diag) ++diag->degenerate_words;
    } else {
      for (int dim = 0; dim < 3; ++dim) value[dim] = weighted[dim] / weight_sum;
    }
    induced.insert(store.word_at(w), clamp_to_hull(value, resolved));
  }
  return induced;
}

LexicalGraph LexicalGraph::build(const EmbeddingStore& store,
                                 const RandomWalkParams& params,
                                 InduceDiagnostics* diag) {
  const auto n = static_cast<uint32_t>(store.size());
  if (n == 0) throw DataError("cannot build a graph over an empty store");
  if (params.graph_neighbors < 1) {
    throw ConfigError("graph neighbor count must be >= 1");
  }
  const auto norms = squared_norms(store);
  const auto neighbors =
      std::min<std::size_t>(params.graph_neighbors, n > 0 ? n - 1 : 0);

  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<Candidate> candidates;
  candidates.reserve(n);
  for (uint32_t i = 0; i < n; ++i) {
    candidates.clear();
    for (uint32_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double sim = safe_cosine(store, i, j, norms);
      if (sim < 0.0 && diag) ++diag->clipped_similarities;
      candidates.push_back(
          Candidate{sim, store.count_at(j), &store.word_at(j), j});
    }
    const std::size_t take = std::min(neighbors, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + take,
                      candidates.end(), candidate_before);
    for (std::size_t s = 0; s < take; ++s) {
      const double weight = std::max(candidates[s].sim, 0.0);
      if (weight <= 0.0) continue;
      // Insert both orientations; duplicates collapse via max, which
      // symmetrizes the directed neighbor selections.
      triplets.emplace_back(i, candidates[s].position, weight);
      triplets.emplace_back(candidates[s].position, i, weight);
    }
  }

  LexicalGraph graph;
  graph.edges_.resize(n, n);
  graph.edges_.setFromTriplets(
      triplets.begin(), triplets.end(),
      [](const double& a, const double& b) { return std::max(a, b); });

  // Degrees; isolated vertices get a unit self-loop.
  Eigen::VectorXd degree = Eigen::VectorXd::Zero(n);
  for (int col = 0; col < graph.edges_.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(graph.edges_, col); it;
         ++it) {
      degree(it.row()) += it.value();
    }
  }
  std::vector<Eigen::Triplet<double>> self_loops;
  for (uint32_t i = 0; i < n; ++i) {
    if (degree(i) == 0.0) {
      self_loops.emplace_back(i, i, 1.0);
      degree(i) = 1.0;
      if (diag) ++diag->degenerate_words;
    }
  }
  if (!self_loops.empty()) {
    Eigen::SparseMatrix<double> loops(n, n);
    loops.setFromTriplets(self_loops.begin(), self_loops.end());
    graph.edges_ += loops;
  }
  graph.edges_.makeCompressed();

  Eigen::VectorXd inv_sqrt = degree.array().rsqrt();
  graph.transition_ = graph.edges_;
  for (int col = 0; col < graph.transition_.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(graph.transition_, col);
         it; ++it) {
      it.valueRef() *= inv_sqrt(it.row()) * inv_sqrt(it.col());
    }
  }
  graph.transition_.makeCompressed();
  return graph;
}

PropagationResult propagate(const LexicalGraph& graph,
                            const Eigen::MatrixXd& seed_matrix,
                            const RandomWalkParams& params) {
  const auto n = static_cast<Eigen::Index>(graph.vertex_count());
  if (seed_matrix.rows() != n) {
    throw DataError("seed matrix row count does not match graph");
  }
  if (params.beta <= 0.0 || params.beta >= 1.0) {
    throw ConfigError("beta must be in (0, 1)");
  }
  if (params.max_iterations < 1) {
    throw ConfigError("max iterations must be >= 1");
  }
  PropagationResult result;
  result.scores = Eigen::MatrixXd::Constant(n, seed_matrix.cols(),
                                            1.0 / static_cast<double>(n));
  const Eigen::MatrixXd forcing = (1.0 - params.beta) * seed_matrix;
  for (int iter = 1; iter <= params.max_iterations; ++iter) {
    Eigen::MatrixXd next =
        params.beta * (graph.transition() * result.scores) + forcing;
    const double delta = (next - result.scores).cwiseAbs().maxCoeff();
    result.scores.swap(next);
    result.iterations = iter;
    if (delta < params.tolerance) {
      result.converged = true;
      break;
    }
  }
  return result;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> build_seed_matrices(
    const EmbeddingStore& store, const VadLexicon& seeds) {
  SeedVectors resolved = resolve_seeds(store, seeds);
  const auto n = static_cast<Eigen::Index>(store.size());
  Eigen::MatrixXd positive = Eigen::MatrixXd::Zero(n, 3);
  Eigen::MatrixXd negative = Eigen::MatrixXd::Zero(n, 3);
  const Scale& scale = seeds.scale();
  for (std::size_t s = 0; s < resolved.indices.size(); ++s) {
    const auto row = static_cast<Eigen::Index>(resolved.indices[s]);
    const VadRating& rating = resolved.ratings[s];
    const VadRating inverted = invert_about_center(rating, scale);
    for (int dim = 0; dim < 3; ++dim) {
      positive(row, dim) = rating[dim];
      negative(row, dim) = inverted[dim];
    }
  }
  for (Eigen::MatrixXd* matrix : {&positive, &negative}) {
    for (int dim = 0; dim < 3; ++dim) {
      const double sum = matrix->col(dim).sum();
      if (sum <= 0.0) {
        throw NumericalError(
            std::string("seed matrix column for ") + kDimensionNames[dim] +
            (matrix == &positive ? "" : " (inverted)") +
            " sums to zero; cannot normalize");
      }
      matrix->col(dim) /= sum;
    }
  }
  return {std::move(positive), std::move(negative)};
}

VadLexicon induce_randomwalk(const EmbeddingStore& store,
                             const LexicalGraph& graph,
                             const VadLexicon& seeds,
                             const RandomWalkParams& params,
                             InduceDiagnostics* diag) {
  if (graph.vertex_count() != store.size()) {
    throw DataError("graph was built over a different vocabulary");
  }
  auto [positive, negative] = build_seed_matrices(store, seeds);
  PropagationResult plus = propagate(graph, positive, params);
  PropagationResult minus = propagate(graph, negative, params);

  if (diag) {
    diag->converged = plus.converged && minus.converged;
    diag->iterations = std::max(plus.iterations, minus.iterations);
  }

  const Scale& scale = seeds.scale();
  const double span = scale.hi - scale.lo;
  VadLexicon induced(seeds.scale());
  for (uint32_t w = 0; w < store.size(); ++w) {
    VadRating value;
    for (int dim = 0; dim < 3; ++dim) {
      const double p = plus.scores(w, dim);
      const double m = minus.scores(w, dim);
      double combined;
      if (p + m <= 0.0) {
        combined = 0.5;  // unreachable from any seed: neutral
        if (diag) ++diag->degenerate_words;
      } else {
        combined = p / (p + m);
      }
      value[dim] = scale.lo + combined * span;
    }
    induced.insert(store.word_at(w), value);
  }
  return induced;
}

}  // namespace affectlex
