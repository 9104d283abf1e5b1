#include "bessu/manifest.hpp"

#include "bessu/error.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>
#include <sstream>

namespace bessu {

namespace {

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free)
    {
        if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1)
            throw std::runtime_error("sha256 init failed");
    }
    void update(const void* data, std::size_t size) { EVP_DigestUpdate(ctx_.get(), data, size); }
    std::string hex()
    {
        std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
        unsigned len = 0;
        EVP_DigestFinal_ex(ctx_.get(), md.data(), &len);
        static constexpr char digits[] = "0123456789abcdef";
        std::string out;
        for (unsigned i = 0; i < len; ++i) {
            out += digits[md[i] >> 4];
            out += digits[md[i] & 0xF];
        }
        return out;
    }

private:
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

}  // namespace

std::string sha256_hex(const std::string& bytes)
{
    Sha256 h;
    h.update(bytes.data(), bytes.size());
    return h.hex();
}

std::string sha256_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFound(path.string());
    Sha256 h;
    std::array<char, 1 << 16> buf;
    while (in) {
        in.read(buf.data(), buf.size());
        h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    return h.hex();
}

void RunManifest::add_input(const std::filesystem::path& path)
{
    inputs.push_back({path.string(), sha256_file(path)});
}

std::string RunManifest::run_id() const
{
    nlohmann::ordered_json j;
    j["command"] = command;
    j["config"] = config;
    for (const auto& in : inputs) j["inputs"].push_back(in.sha256);
    j["tool_version"] = tool_version;
    return sha256_hex(j.dump()).substr(0, 16);
}

nlohmann::ordered_json RunManifest::to_json() const
{
    nlohmann::ordered_json j;
    j["run_id"] = run_id();
    j["command"] = command;
    j["config"] = config;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& in : inputs) arr.push_back({{"path", in.path}, {"sha256", in.sha256}});
    j["inputs"] = std::move(arr);
    j["coverage"] = coverage;
    j["tool_version"] = tool_version;
    j["timestamp"] = timestamp;
    return j;
}

std::string utc_now_iso()
{
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace bessu
