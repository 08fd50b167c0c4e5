#include "affectlex/hash.hpp"

#include <cstdio>
#include <fstream>
#include <vector>

#include "affectlex/errors.hpp"

namespace affectlex {

Fnv64& Fnv64::update(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  uint64_t h = state_;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ULL;
  }
  state_ = h;
  return *this;
}

Fnv64& Fnv64::update_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open file for hashing: " + path.string());
  }
  std::vector<char> buffer(1 << 16);
  while (in) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    update(buffer.data(), static_cast<std::size_t>(in.gcount()));
  }
  return *this;
}

std::string Fnv64::hex() const {
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx",
                static_cast<unsigned long long>(state_));
  return std::string(out);
}

std::string hash_file(const std::filesystem::path& path) {
  Fnv64 h;
  h.update_file(path);
  return h.hex();
}

std::string hash_string(std::string_view text) {
  Fnv64 h;
  h.update(text);
  return h.hex();
}

}  // namespace affectlex
