#pragma once

// On-disk cache of rendered command output. Keys are SHA-256 digests of the
// engine version and a canonical request string; each entry is one file
// written by rename, so concurrent readers never see a partial payload.

#include <openssl/evp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

namespace casimir::cli {

inline std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

// --cache-dir, then $CASIMIR_CACHE_DIR, then $XDG_CACHE_HOME/casimir, then
// ~/.cache/casimir.
inline std::filesystem::path default_cache_dir() {
    if (const char* e = std::getenv("CASIMIR_CACHE_DIR"); e && *e) return e;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "casimir";
    if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "casimir";
    return std::filesystem::temp_directory_path() / "casimir-cache";
}

class ResultCache {
public:
    ResultCache(std::filesystem::path dir, std::string engine_version)
        : dir_(std::move(dir)), version_(std::move(engine_version)) {}

    std::string key(const std::string& request) const { return sha256_hex(version_ + '\n' + request); }

    std::optional<std::string> load(const std::string& key) const {
        std::ifstream in(path(key), std::ios::binary);
        if (!in) return std::nullopt;
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    // Failures to write are ignored: the cache is an accelerator only.
    void store(const std::string& key, const std::string& payload) const {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) return;
        std::random_device rd;
        auto tmp = dir_ / (key + ".tmp" + std::to_string(rd()));
        {
            std::ofstream out(tmp, std::ios::binary);
            if (!out) return;
            out << payload;
            if (!out.flush()) {
                std::filesystem::remove(tmp, ec);
                return;
            }
        }
        std::filesystem::rename(tmp, path(key), ec);
        if (ec) std::filesystem::remove(tmp, ec);
    }

    const std::filesystem::path& dir() const noexcept { return dir_; }

private:
    std::filesystem::path path(const std::string& key) const { return dir_ / (key + ".out"); }

    std::filesystem::path dir_;
    std::string version_;
};

}  // namespace casimir::cli
