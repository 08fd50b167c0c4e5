#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace affectlex {

// Streaming FNV-1a (64 bit). Used for content-addressed artifact names and
// provenance hashes, not for anything adversarial.
class Fnv64 {
 public:
  Fnv64& update(const void* data, std::size_t size);
  Fnv64& update(std::string_view text) { return update(text.data(), text.size()); }
  Fnv64& update_file(const std::filesystem::path& path);

  uint64_t digest() const { return state_; }
  std::string hex() const;

 private:
  uint64_t state_ = 14695981039346656037ULL;
};

std::string hash_file(const std::filesystem::path& path);
std::string hash_string(std::string_view text);

}  // namespace affectlex
