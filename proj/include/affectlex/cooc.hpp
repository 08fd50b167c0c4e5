#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "affectlex/corpus.hpp"

namespace affectlex {

// Sparse word-context co-occurrence counts over a fixed vocabulary. Counts
// are stored as doubles so a weighting scheme could be added without a
// format change; plain window counting keeps them integral. Marginals are
// maintained incrementally and stay consistent with the cells.
class CoocMatrix {
 public:
  explicit CoocMatrix(uint32_t vocab_size);

  uint32_t vocab_size() const { return vocab_size_; }

  void add(uint32_t row, uint32_t col, double weight = 1.0);

  double cell(uint32_t row, uint32_t col) const;
  double row_sum(uint32_t row) const { return row_sums_[row]; }
  double col_sum(uint32_t col) const { return col_sums_[col]; }
  double total() const { return total_; }
  std::size_t nonzero_count() const { return cells_.size(); }

  const std::vector<double>& row_sums() const { return row_sums_; }
  const std::vector<double>& col_sums() const { return col_sums_; }

  // Cells sorted by (row, col); the canonical order for output and PPMI.
  std::vector<std::tuple<uint32_t, uint32_t, double>> sorted_cells() const;

  void merge_from(const CoocMatrix& other);

  // TSV triples row<TAB>col<TAB>count, sorted by (row, col).
  void write_tsv(const std::filesystem::path& path) const;
  static CoocMatrix read_tsv(const std::filesystem::path& path,
                             uint32_t vocab_size);

 private:
  uint32_t vocab_size_ = 0;
  std::unordered_map<uint64_t, double> cells_;  // key = row * vocab_size + col
  std::vector<double> row_sums_;
  std::vector<double> col_sums_;
  double total_ = 0.0;
};

// Counts every (word, context) pair the stream yields.
CoocMatrix accumulate(uint32_t vocab_size,
                      const std::vector<std::pair<uint32_t, uint32_t>>& pairs);

// Streams a whole corpus through document-bounded windows.
CoocMatrix accumulate_corpus(const std::filesystem::path& input,
                             CorpusFormat format, bool use_lemmas,
                             const Vocabulary& vocab,
                             const WindowConfig& config);

// Cellwise sum; associative and commutative. Vocab sizes must match.
CoocMatrix merge(const CoocMatrix& a, const CoocMatrix& b);

}  // namespace affectlex
