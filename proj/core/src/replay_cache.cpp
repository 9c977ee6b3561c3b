#include "coreason/replay_cache.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include "json.hpp"

#include "coreason/errors.hpp"

namespace coreason {

namespace {

std::string format_temperature(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", t);
  return buf;
}

std::string iso8601_utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string CacheKey::canonical() const {
  std::string out = "t=" + template_name + "\x1f";
  for (const auto& [k, v] : slots) {
    out += "s:" + k + "=" + std::to_string(v.size()) + ":" + v + "\x1f";
  }
  out += "T=" + format_temperature(temperature) + "\x1f";
  out += "i=" + std::to_string(sample_index);
  return out;
}

std::uint64_t CacheKey::hash() const {
  std::string c = canonical();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char byte : c) {
    h ^= byte;
    h *= 1099511628211ull;
  }
  return h;
}

std::string CacheKey::hash_hex() const {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

CacheStore::CacheStore(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error("corrupt cache record at " + path_ + ":" + std::to_string(lineno) + ": " +
                  e.what());
    }
    CacheKey key;
    key.template_name = rec.at("template").get<std::string>();
    key.slots = rec.at("slots").get<std::map<std::string, std::string>>();
    key.temperature = rec.at("temperature").get<double>();
    key.sample_index = rec.at("sample_index").get<int>();
    snapshot_[key.canonical()] = rec.at("response").get<std::string>();
  }
}

std::optional<std::string> CacheStore::lookup(const CacheKey& key) const {
  std::string c = key.canonical();
  if (auto it = snapshot_.find(c); it != snapshot_.end()) return it->second;
  std::lock_guard<std::mutex> lock(writer_mutex_);
  if (auto it = overlay_.find(c); it != overlay_.end()) return it->second;
  return std::nullopt;
}

void CacheStore::append(const CacheKey& key, const std::string& response) {
  nlohmann::json rec;
  rec["key_hash"] = key.hash_hex();
  rec["template"] = key.template_name;
  rec["slots"] = key.slots;
  rec["temperature"] = key.temperature;
  rec["sample_index"] = key.sample_index;
  rec["response"] = response;
  rec["timestamp"] = iso8601_utc_now();

  std::lock_guard<std::mutex> lock(writer_mutex_);
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error("cannot open cache file for append: " + path_);
  out << rec.dump() << "\n";
  overlay_[key.canonical()] = response;
}

std::size_t CacheStore::size() const {
  std::lock_guard<std::mutex> lock(writer_mutex_);
  return snapshot_.size() + overlay_.size();
}

}  // namespace coreason
