#ifndef SYSTOLE_CACHE_HPP
#define SYSTOLE_CACHE_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace systole::cache {

inline constexpr int kSchemaVersion = 1;

struct CacheEntry {
    std::string key; // e.g. "clsgrp:-43", "L2:-43"
    nlohmann::json payload;
    int version = kSchemaVersion;
};

// JSON-lines store, one file per directory. Writes are atomic
// (write-temp-then-rename) so concurrent writers leave a complete file;
// corrupt or version-mismatched lines are treated as absent. The cache is a
// pure accelerator: I/O failures degrade to warnings, never wrong answers.
class DiskCache {
  public:
    explicit DiskCache(std::filesystem::path dir);

    // SYSTOLE_CACHE_DIR, else XDG_CACHE_HOME/systole, else ~/.cache/systole.
    static std::filesystem::path default_dir();

    std::optional<CacheEntry> get(const std::string& key) const;
    void put(const CacheEntry& entry);
    void put_all(const std::vector<CacheEntry>& entries); // one atomic rewrite

    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, CacheEntry>& entries() const { return entries_; }
    const std::filesystem::path& directory() const { return dir_; }

  private:
    void load();
    void flush();

    std::filesystem::path dir_;
    std::map<std::string, CacheEntry> entries_;
};

// Seed the quadfield memo table from cached class groups and L-values.
void warm_quadfield_memo(const DiskCache& cache);

// Persist the current memo table contents into the cache.
void persist_quadfield_memo(DiskCache& cache);

} // namespace systole::cache

#endif
