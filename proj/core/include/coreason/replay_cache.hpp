#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

namespace coreason {

// Identifies one completion draw. max_tokens is deliberately not part of the
// key: two requests differing only in max_tokens share a cache slot.
struct CacheKey {
  std::string template_name;
  std::map<std::string, std::string> slots;
  double temperature = 0.7;
  int sample_index = 0;

  // Canonical text form; injective because field separators cannot occur in
  // slot names and values are length-prefixed.
  std::string canonical() const;
  std::uint64_t hash() const;  // FNV-1a over canonical()
  std::string hash_hex() const;
};

// Append-only completion cache: one JSON record per line
//   {key_hash, template, slots, temperature, sample_index, response, timestamp}
// Records loaded at open() form an immutable snapshot read without locking;
// appends go through a single serialized writer with its own overlay index.
class CacheStore {
 public:
  // Loads an existing cache file (missing file = empty cache). The file is
  // created lazily on first append.
  explicit CacheStore(std::string path);

  std::optional<std::string> lookup(const CacheKey& key) const;
  void append(const CacheKey& key, const std::string& response);

  const std::string& path() const { return path_; }
  std::size_t size() const;

 private:
  std::string path_;
  std::unordered_map<std::string, std::string> snapshot_;  // canonical -> response
  mutable std::mutex writer_mutex_;
  std::unordered_map<std::string, std::string> overlay_;
};

}  // namespace coreason
