#include "affectlex/embed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "affectlex/errors.hpp"
#include "affectlex/logging.hpp"
#include "affectlex/svd.hpp"

namespace affectlex {

namespace fs = std::filesystem;

PpmiMatrix ppmi(const CoocMatrix& cooc, double alpha) {
  if (alpha <= 0.0 || alpha > 1.0) {
    throw ConfigError("smoothing alpha must be in (0, 1]");
  }
  if (cooc.total() <= 0.0) {
    throw DataError("cannot compute PPMI of an empty co-occurrence matrix");
  }
  const uint32_t n = cooc.vocab_size();
  double smoothed_norm = 0.0;
  std::vector<double> log_col_alpha(n, 0.0);
  for (uint32_t j = 0; j < n; ++j) {
    if (cooc.col_sum(j) > 0.0) smoothed_norm += std::pow(cooc.col_sum(j), alpha);
  }
  for (uint32_t j = 0; j < n; ++j) {
    log_col_alpha[j] = cooc.col_sum(j) > 0.0
                           ? alpha * std::log(cooc.col_sum(j)) -
                                 std::log(smoothed_norm)
                           : 0.0;
  }
  const double log_total = std::log(cooc.total());

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(cooc.nonzero_count());
  for (const auto& [i, j, count] : cooc.sorted_cells()) {
    if (count <= 0.0) continue;
    // log p(i,j) - log p(i) - log p_alpha(j)
    const double value = std::log(count) - log_total -
                         (std::log(cooc.row_sum(i)) - log_total) -
                         log_col_alpha[j];
    if (value > 0.0) triplets.emplace_back(i, j, value);
  }
  PpmiMatrix out;
  out.smoothing_alpha = alpha;
  out.weights.resize(n, n);
  out.weights.setFromTriplets(triplets.begin(), triplets.end());
  out.weights.makeCompressed();
  return out;
}

EmbeddingStore::EmbeddingStore(std::vector<std::string> words,
                               std::vector<uint64_t> counts,
                               Eigen::MatrixXd vectors, bool combined_wc)
    : words_(std::move(words)),
      counts_(std::move(counts)),
      vectors_(std::move(vectors)),
      combined_wc_(combined_wc) {
  if (counts_.empty()) counts_.resize(words_.size(), 0);
  if (words_.size() != counts_.size() ||
      static_cast<Eigen::Index>(words_.size()) != vectors_.rows()) {
    throw DataError("embedding store: word/count/vector size mismatch");
  }
  for (Eigen::Index i = 0; i < vectors_.rows(); ++i) {
    for (Eigen::Index j = 0; j < vectors_.cols(); ++j) {
      if (!std::isfinite(vectors_(i, j))) {
        throw NumericalError("embedding store contains a non-finite value");
      }
    }
  }
  index_.reserve(words_.size());
  for (uint32_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], i).second) {
      throw DataError("duplicate word in embedding store: " + words_[i]);
    }
  }
}

std::optional<uint32_t> EmbeddingStore::index_of(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double EmbeddingStore::cosine_by_index(uint32_t i, uint32_t j) const {
  // Plain sequential loops keep the summation order fixed.
  const Eigen::Index d = vectors_.cols();
  double dot = 0.0, norm_i = 0.0, norm_j = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    const double a = vectors_(i, k);
    const double b = vectors_(j, k);
    dot += a * b;
    norm_i += a * a;
    norm_j += b * b;
  }
  if (norm_i == 0.0 || norm_j == 0.0) {
    throw NumericalError("cosine undefined: zero vector for '" +
                         words_[norm_i == 0.0 ? i : j] + "'");
  }
  // sqrt(a*a) == a exactly in IEEE, so cosine(w, w) is exactly 1.
  double value = dot / std::sqrt(norm_i * norm_j);
  return std::clamp(value, -1.0, 1.0);
}

double EmbeddingStore::cosine(std::string_view w1, std::string_view w2) const {
  auto i = index_of(w1);
  auto j = index_of(w2);
  if (!i) throw DataError("word not in embedding store: " + std::string(w1));
  if (!j) throw DataError("word not in embedding store: " + std::string(w2));
  return cosine_by_index(*i, *j);
}

EmbeddingStore svd_embed(const PpmiMatrix& matrix, const Vocabulary& vocab,
                         const SvdEmbedOptions& options) {
  const auto n = static_cast<uint32_t>(matrix.weights.rows());
  if (vocab.size() != n) {
    throw DataError("vocabulary size does not match PPMI matrix");
  }
  if (options.dimension < 1) throw ConfigError("dimension must be >= 1");
  if (matrix.weights.nonZeros() == 0) {
    throw DataError("PPMI matrix is empty; nothing to factor");
  }
  int rank = options.dimension;
  if (rank > static_cast<int>(n)) {
    logging::warn("requested dimension " + std::to_string(rank) +
                  " exceeds vocabulary size " + std::to_string(n) +
                  "; clamping");
    rank = static_cast<int>(n);
  }
  TruncatedSvd svd = truncated_svd(matrix.weights, rank);
  const auto kept = static_cast<int>(svd.s.size());
  if (kept < options.dimension) {
    logging::warn("PPMI matrix has numerical rank " + std::to_string(kept) +
                  "; embedding has " + std::to_string(kept) +
                  " dimensions instead of " +
                  std::to_string(options.dimension));
  }

  Eigen::MatrixXd word_matrix = svd.u;
  if (options.eigenvalue_weight != 0.0) {
    Eigen::VectorXd powers(kept);
    for (int i = 0; i < kept; ++i) {
      powers(i) = std::pow(svd.s(i), options.eigenvalue_weight);
    }
    word_matrix = svd.u * powers.asDiagonal();
  }
  Eigen::MatrixXd vectors =
      options.combine_wc ? Eigen::MatrixXd(word_matrix + svd.v) : word_matrix;

  return EmbeddingStore(vocab.words(), vocab.counts(), std::move(vectors),
                        options.combine_wc);
}

namespace {

constexpr char kMagic[8] = {'a', 'f', 'f', 'e', 'm', 'b', '1', '\n'};

void put_u32(std::ostream& out, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v),
                        static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& out, uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 |
         uint32_t(b[3]) << 24;
}

uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t(b[i]) << (8 * i);
  return v;
}

}  // namespace

void EmbeddingStore::save_affemb(const fs::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write embedding file: " + path.string());
  out.write(kMagic, sizeof(kMagic));
  put_u32(out, static_cast<uint32_t>(words_.size()));
  put_u32(out, static_cast<uint32_t>(vectors_.cols()));
  out.put(combined_wc_ ? 1 : 0);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    put_u32(out, static_cast<uint32_t>(words_[i].size()));
    out.write(words_[i].data(),
              static_cast<std::streamsize>(words_[i].size()));
    put_u64(out, counts_[i]);
  }
  for (Eigen::Index i = 0; i < vectors_.rows(); ++i) {
    for (Eigen::Index j = 0; j < vectors_.cols(); ++j) {
      const float f = static_cast<float>(vectors_(i, j));
      uint32_t bits;
      std::memcpy(&bits, &f, 4);
      put_u32(out, bits);
    }
  }
  if (!out) throw DataError("failed writing embedding file: " + path.string());
}

EmbeddingStore EmbeddingStore::load_affemb(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read embedding file: " + path.string());
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) {
    throw DataError(path.string() + ": not an affemb1 file");
  }
  const uint32_t n = get_u32(in);
  const uint32_t d = get_u32(in);
  const int flags = in.get();
  if (!in || flags < 0) throw DataError(path.string() + ": truncated header");
  std::vector<std::string> words(n);
  std::vector<uint64_t> counts(n);
  for (uint32_t i = 0; i < n; ++i) {
    const uint32_t len = get_u32(in);
    words[i].resize(len);
    in.read(words[i].data(), len);
    counts[i] = get_u64(in);
    if (!in) throw DataError(path.string() + ": truncated word table");
  }
  Eigen::MatrixXd vectors(n, d);
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = 0; j < d; ++j) {
      const uint32_t bits = get_u32(in);
      float f;
      std::memcpy(&f, &bits, 4);
      vectors(i, j) = f;
    }
  }
  if (!in) throw DataError(path.string() + ": truncated vector data");
  return EmbeddingStore(std::move(words), std::move(counts),
                        std::move(vectors), flags != 0);
}

void EmbeddingStore::save_text(const fs::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write embedding file: " + path.string());
  out << words_.size() << ' ' << vectors_.cols() << '\n';
  char buffer[64];
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out << words_[i];
    for (Eigen::Index j = 0; j < vectors_.cols(); ++j) {
      std::snprintf(buffer, sizeof(buffer), "%.9g",
                    vectors_(static_cast<Eigen::Index>(i), j));
      out << ' ' << buffer;
    }
    out << '\n';
  }
}

EmbeddingStore load_external(const fs::path& path,
                             const std::unordered_set<std::string>* filter,
                             const Vocabulary* counts_from) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read embedding file: " + path.string());
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError(path.string() + ": empty embedding file");
  }
  std::size_t n = 0, d = 0;
  {
    std::istringstream header(line);
    if (!(header >> n >> d) || d == 0) {
      throw DataError(path.string() + " line 1: expected header 'N d'");
    }
  }
  std::vector<std::string> words;
  std::vector<uint64_t> counts;
  std::vector<Eigen::VectorXd> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string word;
    if (!(row >> word)) {
      throw DataError(path.string() + " line " + std::to_string(line_no) +
                      ": missing word");
    }
    Eigen::VectorXd vec(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) {
      if (!(row >> vec(static_cast<Eigen::Index>(j)))) {
        throw DataError(path.string() + " line " + std::to_string(line_no) +
                        ": expected " + std::to_string(d) +
                        " components, found " + std::to_string(j));
      }
    }
    double trailing;
    if (row >> trailing) {
      throw DataError(path.string() + " line " + std::to_string(line_no) +
                      ": more than " + std::to_string(d) + " components");
    }
    if (filter && !filter->count(word)) continue;
    uint64_t count = 0;
    if (counts_from) {
      if (auto idx = counts_from->index_of(word)) {
        count = counts_from->count_at(*idx);
      }
    }
    words.push_back(std::move(word));
    counts.push_back(count);
    rows.push_back(std::move(vec));
  }
  Eigen::MatrixXd vectors(static_cast<Eigen::Index>(rows.size()),
                          static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    vectors.row(static_cast<Eigen::Index>(i)) = rows[i];
  }
  return EmbeddingStore(std::move(words), std::move(counts),
                        std::move(vectors), false);
}

}  // namespace affectlex
