#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace ramseyforge {

// Stable 64-bit content hash (FNV-1a) of a canonical parameter string.
uint64_t content_key(const std::string& canonical);

// On-disk result cache keyed by content hash. Entries carry the tool version;
// a version mismatch is a miss. Writes go through a temp file and an atomic
// rename, so concurrent readers see whole entries only.
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir);

    // Resolution order: explicit dir, RAMSEY_FORGE_CACHE, then a .ramsey-forge
    // cache directory under the current path.
    static ResultCache resolve(const std::string& explicit_dir);

    const std::filesystem::path& dir() const { return dir_; }

    std::optional<std::string> get(const std::string& canonical_params) const;
    void put(const std::string& canonical_params, const std::string& value) const;

private:
    std::filesystem::path entry_path(const std::string& canonical_params) const;
    std::filesystem::path dir_;
};

}  // namespace ramseyforge
