#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace affectlex {

// A tokenized document. When a lemma layer is present it is parallel to the
// surface tokens.
struct Document {
  std::string id;
  std::vector<std::string> tokens;
  std::vector<std::string> lemmas;  // empty, or same length as tokens

  bool has_lemmas() const { return !lemmas.empty(); }
};

enum class CorpusFormat {
  kPlain,  // one document per file, raw text
  kTsv,    // token<TAB>lemma<TAB>pos rows, blank line separates documents
};

CorpusFormat parse_corpus_format(std::string_view name);

// Fixed-order index over the words that survive the frequency threshold.
// Indices are dense 0..N-1, ordered by descending count with lexicographic
// tie-breaking, so identical corpora always yield identical indices.
class Vocabulary {
 public:
  Vocabulary() = default;

  static Vocabulary from_counts(
      const std::unordered_map<std::string, uint64_t>& counts,
      uint64_t min_count);

  std::optional<uint32_t> index_of(std::string_view word) const;
  const std::string& word_at(uint32_t index) const { return words_[index]; }
  uint64_t count_at(uint32_t index) const { return counts_[index]; }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  uint64_t min_count() const { return min_count_; }

  const std::vector<std::string>& words() const { return words_; }
  const std::vector<uint64_t>& counts() const { return counts_; }

  // TSV: word<TAB>count, canonical order, UTF-8, no header.
  void write_tsv(const std::filesystem::path& path) const;
  static Vocabulary read_tsv(const std::filesystem::path& path);

 private:
  std::vector<std::string> words_;
  std::vector<uint64_t> counts_;
  std::unordered_map<std::string, uint32_t> index_;
  uint64_t min_count_ = 1;
};

struct WindowConfig {
  int max_distance = 4;
  bool respect_document_boundaries = true;   // always true
  bool respect_sentence_boundaries = false;  // ignored by design
};

// Lowercases tokens and removes tokens that consist solely of punctuation.
std::vector<std::string> normalize_tokens(const std::vector<std::string>& raw);

// Same, starting from a document. With use_lemmas the lemma layer replaces
// the surface tokens before normalization; requesting lemmas on a document
// without a lemma layer is a configuration error.
std::vector<std::string> normalize(const Document& doc, bool use_lemmas);

// Streams documents from a file or a directory (regular files in sorted
// order). TSV rows are token[<TAB>lemma[<TAB>pos]].
void for_each_document(const std::filesystem::path& input, CorpusFormat format,
                       const std::function<void(Document&&)>& fn);

Vocabulary build_vocabulary(const std::filesystem::path& input,
                            CorpusFormat format, bool use_lemmas,
                            uint64_t min_count);

// Maps normalized tokens to vocabulary indices, -1 for out-of-vocabulary
// tokens. OOV tokens keep their position: they are skipped as pair members
// but still count toward window distance.
std::vector<int32_t> index_tokens(const std::vector<std::string>& normalized,
                                  const Vocabulary& vocab);

using PairSink = std::function<void(uint32_t word, uint32_t context)>;

void window_pairs(const std::vector<int32_t>& indexed,
                  const WindowConfig& config, const PairSink& sink);

// Convenience wrapper used by tests: normalizes, indexes and collects.
std::vector<std::pair<uint32_t, uint32_t>> window_pairs(
    const Document& doc, const Vocabulary& vocab, const WindowConfig& config,
    bool use_lemmas = false);

}  // namespace affectlex
