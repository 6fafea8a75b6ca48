#include "complementarity/cli/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "complementarity/errors.hpp"
#include "json.hpp"

namespace hmc::cli {

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path.string() + "' for checksum");

    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
        EVP_MD_CTX_free(ctx);
        throw Error("SHA-256 initialisation failed");
    }
    char buf[1 << 15];
    while (in) {
        in.read(buf, sizeof(buf));
        if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);

    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return hex.str();
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& m) {
    nlohmann::ordered_json j;
    j["tool"] = "complementarity";
    j["version"] = m.tool_version;
    j["command"] = m.command;
    j["seed"] = m.seed;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    for (const auto& [key, value] : m.config) config[key] = value;
    j["config"] = config;
    if (!m.config_text.empty()) j["config_text"] = m.config_text;
    j["started_at"] = m.started_at;
    j["finished_at"] = m.finished_at;
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    for (const auto& name : m.files) {
        const auto path = dir / name;
        files.push_back({{"name", name},
                         {"bytes", std::filesystem::file_size(path)},
                         {"sha256", sha256_file(path)}});
    }
    j["files"] = files;

    std::ofstream out(dir / "manifest.json");
    if (!out) throw Error("cannot write manifest.json in '" + dir.string() + "'");
    out << j.dump(2) << '\n';
}

} // namespace hmc::cli
