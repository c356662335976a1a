#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <unordered_map>

#include "numeric.hpp"

namespace tropcount {

/**
 * Thread-safe string-keyed table of unbounded integers.
 *
 * Lookups take a shared lock and inserts an exclusive one. Computation
 * happens outside the lock, so two threads may compute the same entry;
 * the first insert wins and both values are identical anyway.
 */
class MemoCache {
 public:
  std::optional<BigInt> find(std::string const& key) const {
    std::shared_lock lock(mutex_);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
    return std::nullopt;
  }

  BigInt insert(std::string const& key, BigInt value) {
    std::unique_lock lock(mutex_);
    return table_.try_emplace(key, std::move(value)).first->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
  }

  void clear() {
    std::unique_lock lock(mutex_);
    table_.clear();
  }

  /// Merges "key value" lines from a file; a missing file is not an error.
  void load(std::filesystem::path const& file) {
    std::ifstream in(file);
    if (!in) return;
    std::string line;
    std::size_t lineno = 0;
    std::unique_lock lock(mutex_);
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      auto sep = line.rfind(' ');
      if (sep == std::string::npos || sep == 0 || sep + 1 == line.size())
        throw ParseError(file.string() + ":" + std::to_string(lineno) + ": malformed cache line");
      try {
        table_.try_emplace(line.substr(0, sep), BigInt(line.substr(sep + 1)));
      } catch (std::exception const&) {
        throw ParseError(file.string() + ":" + std::to_string(lineno) + ": bad value");
      }
    }
  }

  /// Writes all entries sorted by key, replacing the file atomically.
  void save(std::filesystem::path const& file) const {
    std::map<std::string, std::string> sorted;
    {
      std::shared_lock lock(mutex_);
      for (auto const& [k, v] : table_) sorted.emplace(k, v.str());
    }
    auto tmp = file;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      for (auto const& [k, v] : sorted) out << k << ' ' << v << '\n';
    }
    std::filesystem::rename(tmp, file);
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, BigInt> table_;
};

}  // namespace tropcount
