#include "systole/cache.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "systole/quadfield.hpp"

namespace systole::cache {

using nlohmann::json;

DiskCache::DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) std::cerr << "warning: cannot create cache dir " << dir_ << ": " << ec.message() << "\n";
    load();
}

std::filesystem::path DiskCache::default_dir() {
    if (const char* env = std::getenv("SYSTOLE_CACHE_DIR")) return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"))
        return std::filesystem::path(xdg) / "systole";
    if (const char* home = std::getenv("HOME"))
        return std::filesystem::path(home) / ".cache" / "systole";
    return std::filesystem::path(".systole-cache");
}

void DiskCache::load() {
    std::ifstream in(dir_ / "entries.jsonl");
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            json j = json::parse(line);
            CacheEntry e{j.at("key").get<std::string>(), j.at("payload"),
                         j.at("version").get<int>()};
            if (e.version != kSchemaVersion) continue; // silent invalidation on bump
            entries_[e.key] = std::move(e);
        } catch (const json::exception&) {
            continue; // corrupt line: treated as absent
        }
    }
}

void DiskCache::flush() {
    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    auto tmp = dir_ / ("entries.tmp." + std::to_string(::getpid()) + "." +
                       std::to_string(counter++) + "." + std::to_string(rd() % 100000));
    try {
        {
            std::ofstream out(tmp);
            if (!out) throw std::runtime_error("cannot open temp file");
            for (const auto& [key, e] : entries_) {
                json j;
                j["key"] = e.key;
                j["version"] = e.version;
                j["payload"] = e.payload;
                out << j.dump() << "\n";
            }
        }
        std::filesystem::rename(tmp, dir_ / "entries.jsonl");
    } catch (const std::exception& ex) {
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
        std::cerr << "warning: cache write failed: " << ex.what() << "\n";
    }
}

std::optional<CacheEntry> DiskCache::get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void DiskCache::put(const CacheEntry& entry) {
    entries_[entry.key] = entry;
    flush();
}

void DiskCache::put_all(const std::vector<CacheEntry>& entries) {
    for (const auto& e : entries) entries_[e.key] = e;
    flush();
}

// ---------------------------------------------------------------------------
// quadfield memo bridge
// ---------------------------------------------------------------------------

namespace {

json classgroup_to_json(const quadfield::ClassGroup& g) {
    json j;
    j["h"] = g.h;
    j["two_rank"] = g.two_rank;
    json forms = json::array();
    for (const auto& f : g.forms) forms.push_back({f.a, f.b, f.c});
    j["forms"] = forms;
    json pdf = json::array();
    for (const auto& d : g.prime_discriminant_factors) pdf.push_back(d.get_str());
    j["pdf"] = pdf;
    return j;
}

quadfield::ClassGroup classgroup_from_json(const json& j) {
    quadfield::ClassGroup g;
    g.h = j.at("h").get<std::uint64_t>();
    g.two_rank = j.at("two_rank").get<unsigned>();
    for (const auto& f : j.at("forms"))
        g.forms.push_back({f.at(0).get<std::int64_t>(), f.at(1).get<std::int64_t>(),
                           f.at(2).get<std::int64_t>()});
    for (const auto& d : j.at("pdf")) g.prime_discriminant_factors.emplace_back(d.get<std::string>());
    return g;
}

} // namespace

void warm_quadfield_memo(const DiskCache& cache) {
    quadfield::MemoSnapshot snap;
    for (const auto& [key, e] : cache.entries()) {
        try {
            if (key.rfind("clsgrp:", 0) == 0) {
                long D = std::stol(key.substr(7));
                snap.class_groups.emplace(D, classgroup_from_json(e.payload));
            } else if (key.rfind("L2:", 0) == 0) {
                long D = std::stol(key.substr(3));
                snap.l_values.emplace(
                    D, ValidatedReal::with_error(e.payload.at("value").get<double>(),
                                                 e.payload.at("err").get<double>()));
            }
        } catch (const std::exception&) {
            continue; // malformed entry: absent
        }
    }
    quadfield::memo_seed(snap);
}

void persist_quadfield_memo(DiskCache& cache) {
    auto snap = quadfield::memo_snapshot();
    std::vector<CacheEntry> batch;
    for (const auto& [D, g] : snap.class_groups)
        batch.push_back({"clsgrp:" + std::to_string(D), classgroup_to_json(g), kSchemaVersion});
    for (const auto& [D, v] : snap.l_values) {
        json j;
        j["value"] = v.value;
        j["err"] = v.err;
        batch.push_back({"L2:" + std::to_string(D), j, kSchemaVersion});
    }
    cache.put_all(batch);
}

} // namespace systole::cache
