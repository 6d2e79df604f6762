#pragma once

#include "chiral_berry/algebra3.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace chiral_berry::cli {

inline constexpr const char* kToolVersion = CHIRAL_BERRY_VERSION;

/// Shortest round-trip decimal form of a double ("%.17g").
std::string format_double(double v);

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

/// One row of the grid CSV schema: theta,phi,value_re,value_im,channel.
struct GridRow {
    double theta;
    double phi;
    Complex value;
};

std::string grid_csv(const std::vector<GridRow>& rows, std::string_view channel);

struct FileRecord {
    std::string name;
    std::string sha256;
    std::uintmax_t bytes = 0;
};

/// Collects the files of one run and writes manifest.json last. Files are
/// written whole and sequentially.
class OutputSession {
public:
    explicit OutputSession(std::filesystem::path dir);

    void write(const std::string& name, const std::string& content);
    void write_json(const std::string& name, const nlohmann::json& doc);

    /// manifest.json: run_id, config_hash, command, seed, tool_version,
    /// timestamp and the file list with SHA-256 checksums.
    void finalize(const std::string& command, const std::string& config_hash, std::uint64_t seed);

    const std::vector<FileRecord>& files() const { return files_; }
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    std::vector<FileRecord> files_;
};

/// Re-hashes every file listed in a manifest; true when all match.
bool verify_manifest(const std::filesystem::path& manifest_path);

} // namespace chiral_berry::cli
