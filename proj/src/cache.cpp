#include "ramseyforge/cache.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "ramseyforge/errors.hpp"
#include "ramseyforge/version.hpp"

namespace ramseyforge {

uint64_t content_key(const std::string& canonical) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw DomainError("cache directory not writable: " + dir_.string());
}

ResultCache ResultCache::resolve(const std::string& explicit_dir) {
    if (!explicit_dir.empty()) return ResultCache(explicit_dir);
    if (const char* env = std::getenv("RAMSEY_FORGE_CACHE"); env && *env)
        return ResultCache(env);
    return ResultCache(std::filesystem::path(".ramsey-forge") / "cache");
}

std::filesystem::path ResultCache::entry_path(const std::string& canonical_params) const {
    std::ostringstream name;
    name << std::hex << content_key(canonical_params) << ".entry";
    return dir_ / name.str();
}

std::optional<std::string> ResultCache::get(const std::string& canonical_params) const {
    std::ifstream in(entry_path(canonical_params), std::ios::binary);
    if (!in) return std::nullopt;
    std::string version, params;
    if (!std::getline(in, version) || version != std::string("version ") + kToolVersion)
        return std::nullopt;
    if (!std::getline(in, params) || params != "params " + canonical_params)
        return std::nullopt;  // hash collision or stale entry
    std::string line;
    if (!std::getline(in, line) || line.rfind("stamp ", 0) != 0) return std::nullopt;
    std::ostringstream value;
    bool first = true;
    while (std::getline(in, line)) {
        if (!first) value << '\n';
        value << line;
        first = false;
    }
    return value.str();
}

void ResultCache::put(const std::string& canonical_params, const std::string& value) const {
    auto path = entry_path(canonical_params);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DomainError("cache entry not writable: " + tmp.string());
        out << "version " << kToolVersion << "\n";
        out << "params " << canonical_params << "\n";
        out << "stamp " << std::time(nullptr) << "\n";
        out << value;
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace ramseyforge
