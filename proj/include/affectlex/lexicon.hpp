#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "affectlex/corpus.hpp"

namespace affectlex {

struct Scale {
  double lo = 1.0;
  double hi = 9.0;

  double center() const { return (lo + hi) / 2.0; }
  bool contains(double v) const { return v >= lo && v <= hi; }
  bool operator==(const Scale&) const = default;
};

// One Valence-Arousal-Dominance rating. Indexable 0..2 for generic code.
struct VadRating {
  double valence = 0.0;
  double arousal = 0.0;
  double dominance = 0.0;

  double operator[](int dim) const {
    return dim == 0 ? valence : dim == 1 ? arousal : dominance;
  }
  double& operator[](int dim) {
    return dim == 0 ? valence : dim == 1 ? arousal : dominance;
  }
  bool operator==(const VadRating&) const = default;
};

inline constexpr const char* kDimensionNames[3] = {"valence", "arousal",
                                                   "dominance"};

// Word -> VAD map on a fixed scale. Entries iterate in word order, so every
// consumer sees a deterministic sequence. Words are lowercased on insert to
// match corpus normalization.
class VadLexicon {
 public:
  explicit VadLexicon(Scale scale = Scale{}) : scale_(scale) {}

  const Scale& scale() const { return scale_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool contains(std::string_view word) const;
  const VadRating& at(std::string_view word) const;

  // Returns false when the word replaced an existing entry.
  bool insert(std::string_view word, const VadRating& rating);

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string text) { provenance_ = std::move(text); }

  // TSV with header word<TAB>valence<TAB>arousal<TAB>dominance.
  void write_tsv(const std::filesystem::path& path) const;
  static VadLexicon read_tsv(const std::filesystem::path& path,
                             Scale scale = Scale{});

 private:
  Scale scale_;
  std::map<std::string, VadRating> entries_;
  std::string provenance_;
};

// Reflects each component about the scale center: v -> lo + hi - v.
VadRating invert_about_center(const VadRating& rating, const Scale& scale);

// Affine map of every rating onto [new_lo, new_hi]; order-preserving.
VadLexicon rescale(const VadLexicon& lexicon, double new_lo, double new_hi);

struct SeedSpec {
  enum class Mode { kFull, kLimited, kCustom };
  Mode mode = Mode::kFull;
  // Reference word list: the lexicon is intersected with it in every mode
  // (for kFull this is the reference lexicon's word list, e.g. ANEW).
  std::vector<std::string> word_list;

  static Mode parse_mode(std::string_view name);
  const char* mode_name() const;
};

// Intersection of lexicon, word list and vocabulary. Out-of-vocabulary seeds
// are dropped with a per-word warning; an empty result is a hard error.
VadLexicon select_seeds(const VadLexicon& lexicon, const SeedSpec& spec,
                        const Vocabulary& vocab);

std::vector<std::string> read_word_list(const std::filesystem::path& path);

}  // namespace affectlex
