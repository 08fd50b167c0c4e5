#include "affectlex/lexicon.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "affectlex/errors.hpp"
#include "affectlex/logging.hpp"
#include "affectlex/textnorm.hpp"

namespace affectlex {

namespace fs = std::filesystem;

bool VadLexicon::contains(std::string_view word) const {
  return entries_.count(std::string(word)) > 0;
}

const VadRating& VadLexicon::at(std::string_view word) const {
  auto it = entries_.find(std::string(word));
  if (it == entries_.end()) {
    throw DataError("word not in lexicon: " + std::string(word));
  }
  return it->second;
}

bool VadLexicon::insert(std::string_view word, const VadRating& rating) {
  for (int dim = 0; dim < 3; ++dim) {
    if (!std::isfinite(rating[dim]) || !scale_.contains(rating[dim])) {
      throw DataError("rating " + std::to_string(rating[dim]) + " for '" +
                      std::string(word) + "' outside scale [" +
                      std::to_string(scale_.lo) + ", " +
                      std::to_string(scale_.hi) + "]");
    }
  }
  auto [it, inserted] = entries_.insert_or_assign(text::lowercase(word), rating);
  return inserted;
}

void VadLexicon::write_tsv(const fs::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write lexicon file: " + path.string());
  out << "word\tvalence\tarousal\tdominance\n";
  char buffer[32];
  for (const auto& [word, rating] : entries_) {
    out << word;
    for (int dim = 0; dim < 3; ++dim) {
      std::snprintf(buffer, sizeof(buffer), "%.6f", rating[dim]);
      out << '\t' << buffer;
    }
    out << '\n';
  }
}

VadLexicon VadLexicon::read_tsv(const fs::path& path, Scale scale) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read lexicon file: " + path.string());
  VadLexicon lexicon(scale);
  std::string line;
  std::size_t line_no = 0;
  bool header_done = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string word, v, a, d;
    if (!(std::getline(row, word, '\t') && std::getline(row, v, '\t') &&
          std::getline(row, a, '\t') && std::getline(row, d))) {
      throw DataError(path.string() + " line " + std::to_string(line_no) +
                      ": expected word<TAB>valence<TAB>arousal<TAB>dominance");
    }
    if (!header_done) {
      header_done = true;
      if (word == "word") continue;  // header row
    }
    VadRating rating;
    const std::string* fields[3] = {&v, &a, &d};
    for (int dim = 0; dim < 3; ++dim) {
      std::size_t consumed = 0;
      try {
        rating[dim] = std::stod(*fields[dim], &consumed);
      } catch (const std::exception&) {
        consumed = std::string::npos;
      }
      if (consumed == std::string::npos || consumed != fields[dim]->size()) {
        throw DataError(path.string() + " line " + std::to_string(line_no) +
                        ": non-numeric " + kDimensionNames[dim] + " rating '" +
                        *fields[dim] + "'");
      }
      if (!scale.contains(rating[dim])) {
        throw DataError(path.string() + " line " + std::to_string(line_no) +
                        ": " + kDimensionNames[dim] + " rating " +
                        *fields[dim] + " outside scale [" +
                        std::to_string(scale.lo) + ", " +
                        std::to_string(scale.hi) + "]");
      }
    }
    if (!lexicon.insert(word, rating)) {
      logging::warn(path.string() + " line " + std::to_string(line_no) +
                    ": duplicate word '" + word + "', last entry wins");
    }
  }
  return lexicon;
}

VadRating invert_about_center(const VadRating& rating, const Scale& scale) {
  const double sum = scale.lo + scale.hi;
  return VadRating{sum - rating.valence, sum - rating.arousal,
                   sum - rating.dominance};
}

VadLexicon rescale(const VadLexicon& lexicon, double new_lo, double new_hi) {
  if (!(new_lo < new_hi)) {
    throw ConfigError("rescale requires new_lo < new_hi");
  }
  const Scale old = lexicon.scale();
  const double slope = (new_hi - new_lo) / (old.hi - old.lo);
  VadLexicon out(Scale{new_lo, new_hi});
  out.set_provenance(lexicon.provenance());
  for (const auto& [word, rating] : lexicon) {
    VadRating mapped;
    for (int dim = 0; dim < 3; ++dim) {
      double v = new_lo + (rating[dim] - old.lo) * slope;
      mapped[dim] = std::clamp(v, new_lo, new_hi);
    }
    out.insert(word, mapped);
  }
  return out;
}

SeedSpec::Mode SeedSpec::parse_mode(std::string_view name) {
  if (name == "full") return Mode::kFull;
  if (name == "limited") return Mode::kLimited;
  if (name == "custom") return Mode::kCustom;
  throw ConfigError("unknown seed mode: " + std::string(name));
}

const char* SeedSpec::mode_name() const {
  switch (mode) {
    case Mode::kFull: return "full";
    case Mode::kLimited: return "limited";
    case Mode::kCustom: return "custom";
  }
  return "?";
}

VadLexicon select_seeds(const VadLexicon& lexicon, const SeedSpec& spec,
                        const Vocabulary& vocab) {
  if (spec.word_list.empty()) {
    throw ConfigError(std::string("seed spec '") + spec.mode_name() +
                      "' has an empty word list");
  }
  VadLexicon seeds(lexicon.scale());
  std::size_t dropped_oov = 0;
  std::size_t not_in_lexicon = 0;
  for (const std::string& raw : spec.word_list) {
    const std::string word = text::lowercase(raw);
    if (!lexicon.contains(word)) {
      ++not_in_lexicon;
      logging::warn("seed word '" + word + "' not present in seed lexicon");
      continue;
    }
    if (!vocab.index_of(word)) {
      ++dropped_oov;
      logging::warn("seed word '" + word + "' not in vocabulary, dropped");
      continue;
    }
    seeds.insert(word, lexicon.at(word));
  }
  if (seeds.empty()) {
    throw DataError(std::string("seed selection '") + spec.mode_name() +
                    "' produced an empty seed set");
  }
  seeds.set_provenance(std::string(spec.mode_name()) + " seeds: " +
                       std::to_string(seeds.size()) + " kept, " +
                       std::to_string(dropped_oov) + " out-of-vocabulary, " +
                       std::to_string(not_in_lexicon) + " missing ratings");
  return seeds;
}

std::vector<std::string> read_word_list(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read word list: " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t begin = line.find_first_not_of(" \t");
    if (begin == std::string::npos || line[begin] == '#') continue;
    std::size_t end = line.find_last_not_of(" \t");
    words.push_back(line.substr(begin, end - begin + 1));
  }
  return words;
}

}  // namespace affectlex
