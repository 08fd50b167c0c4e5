#include "affectlex/cooc.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>

#include "affectlex/errors.hpp"

namespace affectlex {

namespace fs = std::filesystem;

CoocMatrix::CoocMatrix(uint32_t vocab_size)
    : vocab_size_(vocab_size),
      row_sums_(vocab_size, 0.0),
      col_sums_(vocab_size, 0.0) {}

void CoocMatrix::add(uint32_t row, uint32_t col, double weight) {
  if (row >= vocab_size_ || col >= vocab_size_) {
    throw DataError("co-occurrence index out of range: (" +
                    std::to_string(row) + ", " + std::to_string(col) +
                    ") with vocab size " + std::to_string(vocab_size_));
  }
  if (weight < 0.0) throw DataError("negative co-occurrence weight");
  cells_[uint64_t(row) * vocab_size_ + col] += weight;
  row_sums_[row] += weight;
  col_sums_[col] += weight;
  total_ += weight;
}

double CoocMatrix::cell(uint32_t row, uint32_t col) const {
  auto it = cells_.find(uint64_t(row) * vocab_size_ + col);
  return it == cells_.end() ? 0.0 : it->second;
}

std::vector<std::tuple<uint32_t, uint32_t, double>> CoocMatrix::sorted_cells()
    const {
  std::vector<std::tuple<uint32_t, uint32_t, double>> out;
  out.reserve(cells_.size());
  for (const auto& [key, value] : cells_) {
    out.emplace_back(static_cast<uint32_t>(key / vocab_size_),
                     static_cast<uint32_t>(key % vocab_size_), value);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void CoocMatrix::merge_from(const CoocMatrix& other) {
  if (other.vocab_size_ != vocab_size_) {
    throw DataError("cannot merge co-occurrence matrices with vocab sizes " +
                    std::to_string(vocab_size_) + " and " +
                    std::to_string(other.vocab_size_));
  }
  for (const auto& [key, value] : other.cells_) {
    cells_[key] += value;
  }
  for (uint32_t i = 0; i < vocab_size_; ++i) {
    row_sums_[i] += other.row_sums_[i];
    col_sums_[i] += other.col_sums_[i];
  }
  total_ += other.total_;
}

void CoocMatrix::write_tsv(const fs::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write cooc file: " + path.string());
  char buffer[64];
  for (const auto& [row, col, value] : sorted_cells()) {
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    out << row << '\t' << col << '\t' << buffer << '\n';
  }
}

CoocMatrix CoocMatrix::read_tsv(const fs::path& path, uint32_t vocab_size) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read cooc file: " + path.string());
  CoocMatrix matrix(vocab_size);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    uint32_t row = 0, col = 0;
    double value = 0.0;
    if (std::sscanf(line.c_str(), "%" SCNu32 "\t%" SCNu32 "\t%lf", &row, &col,
                    &value) != 3) {
      throw DataError("cooc file " + path.string() + " line " +
                      std::to_string(line_no) + ": expected row col count");
    }
    matrix.add(row, col, value);
  }
  return matrix;
}

CoocMatrix accumulate(uint32_t vocab_size,
                      const std::vector<std::pair<uint32_t, uint32_t>>& pairs) {
  CoocMatrix matrix(vocab_size);
  for (const auto& [word, context] : pairs) {
    matrix.add(word, context);
  }
  return matrix;
}

CoocMatrix accumulate_corpus(const fs::path& input, CorpusFormat format,
                             bool use_lemmas, const Vocabulary& vocab,
                             const WindowConfig& config) {
  CoocMatrix matrix(static_cast<uint32_t>(vocab.size()));
  for_each_document(input, format, [&](Document&& doc) {
    const auto indexed = index_tokens(normalize(doc, use_lemmas), vocab);
    window_pairs(indexed, config,
                 [&](uint32_t w, uint32_t c) { matrix.add(w, c); });
  });
  return matrix;
}

CoocMatrix merge(const CoocMatrix& a, const CoocMatrix& b) {
  CoocMatrix out = a;
  out.merge_from(b);
  return out;
}

}  // namespace affectlex
