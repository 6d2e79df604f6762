#include "chiral_berry/cli/output.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace chiral_berry::cli {

namespace fs = std::filesystem;

std::string format_double(double v)
{
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return buf.data();
}

std::string sha256_hex(std::string_view data)
{
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1
        || EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1
        || EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

std::string sha256_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

std::string grid_csv(const std::vector<GridRow>& rows, std::string_view channel)
{
    std::string out = "theta,phi,value_re,value_im,channel\n";
    for (const auto& r : rows) {
        out += format_double(r.theta);
        out += ',';
        out += format_double(r.phi);
        out += ',';
        out += format_double(r.value.real());
        out += ',';
        out += format_double(r.value.imag());
        out += ',';
        out += channel;
        out += '\n';
    }
    return out;
}

OutputSession::OutputSession(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

void OutputSession::write(const std::string& name, const std::string& content)
{
    const auto path = dir_ / name;
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + path.string());
        }
        out << content;
    }
    files_.push_back({name, sha256_hex(content), static_cast<std::uintmax_t>(content.size())});
}

void OutputSession::write_json(const std::string& name, const nlohmann::json& doc) { write(name, doc.dump(2) + "\n"); }

void OutputSession::finalize(const std::string& command, const std::string& config_hash, std::uint64_t seed)
{
    nlohmann::json files = nlohmann::json::array();
    for (const auto& f : files_) {
        files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    }
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    std::array<char, 32> stamp{};
    std::strftime(stamp.data(), stamp.size(), "%Y-%m-%dT%H:%M:%SZ", &utc);

    nlohmann::json manifest = {
        {"run_id", sha256_hex(command + ":" + config_hash).substr(0, 16)},
        {"command", command},
        {"config_hash", config_hash},
        {"seed", seed},
        {"tool_version", kToolVersion},
        {"timestamp", stamp.data()},
        {"files", files},
    };
    std::ofstream out(dir_ / "manifest.json", std::ios::binary | std::ios::trunc);
    out << manifest.dump(2) << "\n";
}

bool verify_manifest(const fs::path& manifest_path)
{
    std::ifstream in(manifest_path);
    if (!in) {
        return false;
    }
    const auto manifest = nlohmann::json::parse(in, nullptr, false);
    if (manifest.is_discarded() || !manifest.contains("files")) {
        return false;
    }
    const auto dir = manifest_path.parent_path();
    for (const auto& f : manifest.at("files")) {
        const auto path = dir / f.at("name").get<std::string>();
        if (!fs::exists(path) || sha256_file(path) != f.at("sha256").get<std::string>()) {
            return false;
        }
    }
    return true;
}

} // namespace chiral_berry::cli
