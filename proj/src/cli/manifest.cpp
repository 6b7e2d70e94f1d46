#include "cardioload/cli/manifest.hpp"

#include <fstream>
#include <iterator>

#include <openssl/evp.h>

#include "cardioload/error.hpp"

namespace cardioload::cli {

std::string sha256_hex(std::string_view bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorCode::io_error, "sha256 failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(length * 2);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

std::string file_sha256(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io_error, "cannot read " + path.string());
    }
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return sha256_hex(bytes);
}

nlohmann::json RunManifest::to_json() const
{
    auto digests = [](const auto& items) {
        nlohmann::json array = nlohmann::json::array();
        for (const auto& [name, digest] : items) {
            array.push_back({{"name", name}, {"sha256", digest}});
        }
        return array;
    };
    return {
        {"command", command},
        {"parameters", parameters},
        {"config", config},
        {"config_digest", sha256_hex(config.dump())},
        {"inputs", digests(inputs)},
        {"outputs", digests(outputs)},
    };
}

} // namespace cardioload::cli
