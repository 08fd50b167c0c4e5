#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace affectlex::text {

// Character classification and case folding for the common European script
// ranges found in COHA/DTA-style corpora (ASCII, Latin-1, Latin Extended-A,
// basic Greek and Cyrillic, general punctuation blocks). Bytes that do not
// form valid UTF-8 pass through untouched.

bool is_punct_or_symbol(uint32_t codepoint);
uint32_t to_lower(uint32_t codepoint);

std::string lowercase(std::string_view token);

// True when the token contains at least one character and every character is
// punctuation or a symbol.
bool is_all_punct(std::string_view token);

// Removes leading and trailing punctuation/symbol characters.
std::string strip_outer_punct(std::string_view token);

// Whitespace-splits a line of raw text and strips outer punctuation from each
// piece. Pieces that are empty after stripping are dropped.
std::vector<std::string> tokenize_plain(std::string_view line);

}  // namespace affectlex::text
