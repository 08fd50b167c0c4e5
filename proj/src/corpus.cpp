#include "affectlex/corpus.hpp"

#include <algorithm>
#include <fstream>

#include "affectlex/errors.hpp"
#include "affectlex/logging.hpp"
#include "affectlex/textnorm.hpp"

namespace affectlex {

namespace fs = std::filesystem;

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "plain") return CorpusFormat::kPlain;
  if (name == "tsv") return CorpusFormat::kTsv;
  throw ConfigError("unknown corpus format: " + std::string(name) +
                    " (expected plain or tsv)");
}

Vocabulary Vocabulary::from_counts(
    const std::unordered_map<std::string, uint64_t>& counts,
    uint64_t min_count) {
  Vocabulary vocab;
  vocab.min_count_ = min_count;
  std::vector<std::pair<std::string, uint64_t>> kept;
  kept.reserve(counts.size());
  for (const auto& [word, count] : counts) {
    if (count >= min_count) kept.emplace_back(word, count);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  vocab.words_.reserve(kept.size());
  vocab.counts_.reserve(kept.size());
  for (auto& [word, count] : kept) {
    vocab.index_.emplace(word, static_cast<uint32_t>(vocab.words_.size()));
    vocab.words_.push_back(std::move(word));
    vocab.counts_.push_back(count);
  }
  return vocab;
}

std::optional<uint32_t> Vocabulary::index_of(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Vocabulary::write_tsv(const fs::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write vocabulary file: " + path.string());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out << words_[i] << '\t' << counts_[i] << '\n';
  }
}

Vocabulary Vocabulary::read_tsv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read vocabulary file: " + path.string());
  std::unordered_map<std::string, uint64_t> counts;
  uint64_t min_count = UINT64_MAX;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError("vocabulary file " + path.string() + " line " +
                      std::to_string(line_no) + ": expected word<TAB>count");
    }
    std::string word = line.substr(0, tab);
    uint64_t count = 0;
    try {
      count = std::stoull(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw DataError("vocabulary file " + path.string() + " line " +
                      std::to_string(line_no) + ": bad count");
    }
    if (!counts.emplace(std::move(word), count).second) {
      throw DataError("vocabulary file " + path.string() + " line " +
                      std::to_string(line_no) + ": duplicate word");
    }
    min_count = std::min(min_count, count);
  }
  return from_counts(counts, counts.empty() ? 1 : min_count);
}

std::vector<std::string> normalize_tokens(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  out.reserve(raw.size());
  for (const std::string& token : raw) {
    if (token.empty() || text::is_all_punct(token)) continue;
    out.push_back(text::lowercase(token));
  }
  return out;
}

std::vector<std::string> normalize(const Document& doc, bool use_lemmas) {
  if (use_lemmas && !doc.has_lemmas()) {
    throw ConfigError("document '" + doc.id +
                      "' has no lemma layer but --use-lemmas was requested");
  }
  return normalize_tokens(use_lemmas ? doc.lemmas : doc.tokens);
}

namespace {

void read_plain_file(const fs::path& path,
                     const std::function<void(Document&&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read corpus file: " + path.string());
  Document doc;
  doc.id = path.filename().string();
  std::string line;
  while (std::getline(in, line)) {
    for (std::string& token : text::tokenize_plain(line)) {
      doc.tokens.push_back(std::move(token));
    }
  }
  fn(std::move(doc));
}

void read_tsv_file(const fs::path& path,
                   const std::function<void(Document&&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read corpus file: " + path.string());
  std::string stem = path.filename().string();
  std::size_t doc_index = 0;
  Document doc;
  bool saw_lemma = false;
  std::size_t line_no = 0;

  auto flush = [&]() {
    if (doc.tokens.empty()) return;
    if (saw_lemma && doc.lemmas.size() != doc.tokens.size()) {
      throw DataError(path.string() +
                      ": lemma column present on some rows but not all "
                      "within one document (near line " +
                      std::to_string(line_no) + ")");
    }
    doc.id = stem + "#" + std::to_string(doc_index++);
    fn(std::move(doc));
    doc = Document{};
    saw_lemma = false;
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    auto tab1 = line.find('\t');
    if (tab1 == std::string::npos) {
      doc.tokens.push_back(line);
    } else {
      doc.tokens.push_back(line.substr(0, tab1));
      auto tab2 = line.find('\t', tab1 + 1);
      std::string lemma = tab2 == std::string::npos
                              ? line.substr(tab1 + 1)
                              : line.substr(tab1 + 1, tab2 - tab1 - 1);
      doc.lemmas.push_back(std::move(lemma));
      saw_lemma = true;
    }
  }
  flush();
}

}  // namespace

void for_each_document(const fs::path& input, CorpusFormat format,
                       const std::function<void(Document&&)>& fn) {
  std::vector<fs::path> files;
  if (fs::is_directory(input)) {
    for (const auto& entry : fs::directory_iterator(input)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else if (fs::is_regular_file(input)) {
    files.push_back(input);
  } else {
    throw DataError("corpus input not found: " + input.string());
  }
  for (const fs::path& file : files) {
    if (format == CorpusFormat::kPlain) {
      read_plain_file(file, fn);
    } else {
      read_tsv_file(file, fn);
    }
  }
}

Vocabulary build_vocabulary(const fs::path& input, CorpusFormat format,
                            bool use_lemmas, uint64_t min_count) {
  if (min_count < 1) throw ConfigError("min-count must be >= 1");
  std::unordered_map<std::string, uint64_t> counts;
  std::size_t documents = 0;
  for_each_document(input, format, [&](Document&& doc) {
    ++documents;
    for (std::string& token : normalize(doc, use_lemmas)) {
      ++counts[std::move(token)];
    }
  });
  if (documents == 0 || counts.empty()) {
    logging::warn("empty corpus: vocabulary has no entries (" +
                  input.string() + ")");
  }
  return Vocabulary::from_counts(counts, min_count);
}

std::vector<int32_t> index_tokens(const std::vector<std::string>& normalized,
                                  const Vocabulary& vocab) {
  std::vector<int32_t> indexed;
  indexed.reserve(normalized.size());
  for (const std::string& token : normalized) {
    auto idx = vocab.index_of(token);
    indexed.push_back(idx ? static_cast<int32_t>(*idx) : -1);
  }
  return indexed;
}

void window_pairs(const std::vector<int32_t>& indexed,
                  const WindowConfig& config, const PairSink& sink) {
  if (config.max_distance < 1) throw ConfigError("window must be >= 1");
  const auto n = static_cast<std::ptrdiff_t>(indexed.size());
  for (std::ptrdiff_t center = 0; center < n; ++center) {
    if (indexed[center] < 0) continue;
    const auto lo = std::max<std::ptrdiff_t>(0, center - config.max_distance);
    const auto hi = std::min(n - 1, center + config.max_distance);
    for (std::ptrdiff_t context = lo; context <= hi; ++context) {
      if (context == center || indexed[context] < 0) continue;
      sink(static_cast<uint32_t>(indexed[center]),
           static_cast<uint32_t>(indexed[context]));
    }
  }
}

std::vector<std::pair<uint32_t, uint32_t>> window_pairs(
    const Document& doc, const Vocabulary& vocab, const WindowConfig& config,
    bool use_lemmas) {
  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  window_pairs(index_tokens(normalize(doc, use_lemmas), vocab), config,
               [&](uint32_t w, uint32_t c) { pairs.emplace_back(w, c); });
  return pairs;
}

}  // namespace affectlex
