#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "affectlex/cooc.hpp"
#include "affectlex/corpus.hpp"

namespace affectlex {

// Positive PMI weights with context-distribution smoothing. Only strictly
// positive weights are stored.
struct PpmiMatrix {
  Eigen::SparseMatrix<double> weights;
  double smoothing_alpha = 0.75;

  uint32_t vocab_size() const {
    return static_cast<uint32_t>(weights.rows());
  }
};

// weight(i,j) = max(0, log(p(i,j) / (p(i) * p_alpha(j)))) with
// p_alpha(j) = col_sum(j)^alpha / sum_k col_sum(k)^alpha.
PpmiMatrix ppmi(const CoocMatrix& cooc, double alpha);

struct SvdEmbedOptions {
  int dimension = 300;
  double eigenvalue_weight = 0.0;  // 0 discards singular values (W = U)
  bool combine_wc = true;          // final vector = word row + context row
};

// Dense vectors per vocabulary word, cosine-queryable. Immutable after
// construction.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  EmbeddingStore(std::vector<std::string> words, std::vector<uint64_t> counts,
                 Eigen::MatrixXd vectors, bool combined_wc);

  int dimension() const { return static_cast<int>(vectors_.cols()); }
  std::size_t size() const { return words_.size(); }
  bool combined_wc() const { return combined_wc_; }

  std::optional<uint32_t> index_of(std::string_view word) const;
  const std::string& word_at(uint32_t index) const { return words_[index]; }
  uint64_t count_at(uint32_t index) const { return counts_[index]; }
  const std::vector<std::string>& words() const { return words_; }
  const Eigen::MatrixXd& vectors() const { return vectors_; }

  double cosine(std::string_view w1, std::string_view w2) const;
  double cosine_by_index(uint32_t i, uint32_t j) const;

  // Binary affemb1 container: magic, counts, word table, float32 rows.
  void save_affemb(const std::filesystem::path& path) const;
  static EmbeddingStore load_affemb(const std::filesystem::path& path);

  // word2vec-style text: header "N d", then "word v1 .. vd" per line.
  void save_text(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> words_;
  std::vector<uint64_t> counts_;
  std::unordered_map<std::string, uint32_t> index_;
  Eigen::MatrixXd vectors_;
  bool combined_wc_ = false;
};

// Truncated SVD of the PPMI matrix; W = U * Sigma^eigenvalue_weight, C = V,
// final vectors W (+ C when combine_wc). When the requested dimension
// exceeds the numerical rank, the store carries rank-many dimensions and a
// warning is emitted.
EmbeddingStore svd_embed(const PpmiMatrix& matrix, const Vocabulary& vocab,
                         const SvdEmbedOptions& options);

// Reads word2vec-style text vectors, keeping words in `filter` when given.
EmbeddingStore load_external(
    const std::filesystem::path& path,
    const std::unordered_set<std::string>* filter = nullptr,
    const Vocabulary* counts_from = nullptr);

}  // namespace affectlex
