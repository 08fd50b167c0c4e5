#include "affectlex/textnorm.hpp"

#include <cctype>

namespace affectlex::text {

namespace {

// Decodes one UTF-8 sequence starting at position i. On malformed input the
// single byte is returned as-is and consumed, so arbitrary bytes survive a
// decode/encode round trip.
uint32_t decode_utf8(std::string_view s, std::size_t& i) {
  const auto byte = [&](std::size_t k) {
    return static_cast<unsigned char>(s[k]);
  };
  unsigned char b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  auto is_cont = [&](std::size_t k) {
    return k < s.size() && (byte(k) & 0xC0) == 0x80;
  };
  if ((b0 & 0xE0) == 0xC0 && is_cont(i + 1)) {
    uint32_t cp = (uint32_t(b0 & 0x1F) << 6) | (byte(i + 1) & 0x3F);
    if (cp >= 0x80) {
      i += 2;
      return cp;
    }
  } else if ((b0 & 0xF0) == 0xE0 && is_cont(i + 1) && is_cont(i + 2)) {
    uint32_t cp = (uint32_t(b0 & 0x0F) << 12) |
                  (uint32_t(byte(i + 1) & 0x3F) << 6) | (byte(i + 2) & 0x3F);
    if (cp >= 0x800) {
      i += 3;
      return cp;
    }
  } else if ((b0 & 0xF8) == 0xF0 && is_cont(i + 1) && is_cont(i + 2) &&
             is_cont(i + 3)) {
    uint32_t cp = (uint32_t(b0 & 0x07) << 18) |
                  (uint32_t(byte(i + 1) & 0x3F) << 12) |
                  (uint32_t(byte(i + 2) & 0x3F) << 6) | (byte(i + 3) & 0x3F);
    if (cp >= 0x10000) {
      i += 4;
      return cp;
    }
  }
  ++i;
  return b0;  // malformed: treat the byte as an opaque character
}

void encode_utf8(uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

struct Range {
  uint32_t lo, hi;
};

// Unicode P* and S* for the blocks this toolkit actually meets. Letters that
// live inside symbol-heavy blocks (ordinals, micro sign) are carved out below.
constexpr Range kPunctRanges[] = {
    {0x00A1, 0x00BF},  // Latin-1 punctuation and symbols
    {0x00D7, 0x00D7},  // multiplication sign
    {0x00F7, 0x00F7},  // division sign
    {0x2000, 0x206F},  // general punctuation (quotes, dashes, ellipsis)
    {0x20A0, 0x20CF},  // currency symbols
    {0x2100, 0x214F},  // letterlike symbols
    {0x2190, 0x2BFF},  // arrows, math operators, misc symbols
    {0x3000, 0x303F},  // CJK punctuation
    {0xFE30, 0xFE4F},  // CJK compatibility forms
    {0xFF01, 0xFF0F},  // fullwidth ASCII punctuation
    {0xFF1A, 0xFF20},
    {0xFF3B, 0xFF40},
    {0xFF5B, 0xFF65},
};

}  // namespace

bool is_punct_or_symbol(uint32_t cp) {
  if (cp < 0x80) {
    return std::ispunct(static_cast<int>(cp)) != 0;
  }
  // Letters embedded in the Latin-1 symbol range.
  if (cp == 0x00AA || cp == 0x00B5 || cp == 0x00BA) return false;
  for (const Range& r : kPunctRanges) {
    if (cp >= r.lo && cp <= r.hi) return true;
  }
  return false;
}

uint32_t to_lower(uint32_t cp) {
  if (cp < 0x80) {
    return static_cast<uint32_t>(std::tolower(static_cast<int>(cp)));
  }
  // Latin-1 supplement: A-grave .. Thorn (multiplication sign excluded).
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
  // Latin Extended-A: case pairs alternate.
  if (cp >= 0x0100 && cp <= 0x0137) return cp | 1u;
  if (cp >= 0x0139 && cp <= 0x0148) return ((cp - 1) | 1u) + 1;
  if (cp >= 0x014A && cp <= 0x0177) return cp | 1u;
  if (cp == 0x0178) return 0x00FF;  // Y-diaeresis
  if (cp >= 0x0179 && cp <= 0x017E) return ((cp - 1) | 1u) + 1;
  // Greek and Cyrillic capitals.
  if (cp >= 0x0391 && cp <= 0x03A9 && cp != 0x03A2) return cp + 0x20;
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;
  return cp;
}

std::string lowercase(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  std::size_t i = 0;
  while (i < token.size()) {
    encode_utf8(to_lower(decode_utf8(token, i)), out);
  }
  return out;
}

bool is_all_punct(std::string_view token) {
  if (token.empty()) return false;
  std::size_t i = 0;
  while (i < token.size()) {
    if (!is_punct_or_symbol(decode_utf8(token, i))) return false;
  }
  return true;
}

std::string strip_outer_punct(std::string_view token) {
  // Decode once, then drop punctuation from both ends.
  std::vector<std::pair<std::size_t, std::size_t>> spans;  // [begin, end)
  std::vector<uint32_t> cps;
  std::size_t i = 0;
  while (i < token.size()) {
    std::size_t begin = i;
    cps.push_back(decode_utf8(token, i));
    spans.emplace_back(begin, i);
  }
  std::size_t lo = 0, hi = cps.size();
  while (lo < hi && is_punct_or_symbol(cps[lo])) ++lo;
  while (hi > lo && is_punct_or_symbol(cps[hi - 1])) --hi;
  if (lo >= hi) return std::string();
  return std::string(token.substr(spans[lo].first, spans[hi - 1].second - spans[lo].first));
}

std::vector<std::string> tokenize_plain(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t begin = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > begin) {
      std::string stripped = strip_outer_punct(line.substr(begin, i - begin));
      if (!stripped.empty()) tokens.push_back(std::move(stripped));
    }
  }
  return tokens;
}

}  // namespace affectlex::text
