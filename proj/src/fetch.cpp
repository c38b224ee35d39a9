#include "hosim/fetch.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <openssl/evp.h>

#include "hosim/errors.hpp"

namespace hosim {

namespace fs = std::filesystem;

const std::vector<DatasetSource>& dataset_registry() {
    static const std::vector<DatasetSource> registry = [] {
        const std::vector<std::string> names{"email-Enron", "email-Eu", "contact-high-school",
                                             "contact-primary-school", "NDC-classes"};
        std::vector<DatasetSource> out;
        for (const auto& n : names) {
            out.push_back(DatasetSource{
                n,
                {"https://raw.githubusercontent.com/arbenson/ScHoLP-Data/master/" + n + "/",
                 "https://www.cs.cornell.edu/~arb/data/" + n + "/"}});
        }
        return out;
    }();
    return registry;
}

std::string default_cache_dir() {
    if (const char* env = std::getenv("HOSIM_CACHE"); env && *env) return env;
    return "hosim-cache";
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("sha256_file: cannot open '" + path + "'");
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw NumericError("sha256_file: EVP context allocation failed");
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    std::vector<char> buf(1 << 16);
    while (in) {
        in.read(buf.data(), buf.size());
        EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) {
        hex << "0123456789abcdef"[digest[i] >> 4] << "0123456789abcdef"[digest[i] & 0xf];
    }
    return hex.str();
}

namespace {

const DatasetSource& find_source(const std::string& name) {
    for (const auto& src : dataset_registry()) {
        if (src.name == name) return src;
    }
    std::string known;
    for (const auto& src : dataset_registry()) {
        if (!known.empty()) known += ", ";
        known += src.name;
    }
    throw DataError("unknown dataset '" + name + "'; supported: " + known);
}

struct SplitUrl {
    std::string scheme_host;
    std::string path;
};

SplitUrl split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw DataError("bad url '" + url + "'");
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

bool download_to(const std::string& url, const std::string& dest, std::string& error) {
    const auto parts = split_url(url);
    httplib::Client client(parts.scheme_host);
    client.set_follow_location(true);
    client.set_connection_timeout(10);
    client.set_read_timeout(60);
    const auto res = client.Get(parts.path);
    if (!res) {
        error = "no response from " + parts.scheme_host;
        return false;
    }
    if (res->status != 200) {
        error = "HTTP " + std::to_string(res->status) + " for " + url;
        return false;
    }
    std::ofstream out(dest, std::ios::binary);
    if (!out) {
        error = "cannot write " + dest;
        return false;
    }
    out.write(res->body.data(), static_cast<std::streamsize>(res->body.size()));
    return static_cast<bool>(out);
}

std::map<std::string, std::string> read_manifest(const fs::path& path) {
    std::map<std::string, std::string> out;
    std::ifstream in(path);
    std::string file, hash;
    while (in >> hash >> file) out[file] = hash;
    return out;
}

void write_manifest(const fs::path& path, const std::map<std::string, std::string>& entries) {
    std::ofstream out(path);
    for (const auto& [file, hash] : entries) out << hash << "  " << file << "\n";
}

} // namespace

std::string fetch_dataset(const std::string& name, const std::string& cache_dir) {
    const auto& src = find_source(name);
    const fs::path cache = cache_dir.empty() ? default_cache_dir() : cache_dir;
    const fs::path dir = cache / name;
    const fs::path manifest_path = cache / (name + ".sha256");
    const std::vector<std::string> parts{"nverts", "simplices", "times"};

    auto manifest = read_manifest(manifest_path);
    const std::string prefix = (dir / name).string();

    // verified cache hit?
    if (!manifest.empty()) {
        bool all_good = true;
        for (const auto& part : parts) {
            const std::string file = name + "-" + part + ".txt";
            const fs::path p = dir / file;
            if (!fs::exists(p) || !manifest.count(file) || sha256_file(p.string()) != manifest[file]) {
                all_good = false;
                break;
            }
        }
        if (all_good) return prefix;
    }

    fs::create_directories(dir);
    std::vector<fs::path> fetched;
    auto cleanup = [&fetched]() {
        for (const auto& p : fetched) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    };

    std::string last_error = "no mirrors configured";
    for (const auto& part : parts) {
        const std::string file = name + "-" + part + ".txt";
        const fs::path dest = dir / (file + ".part");
        bool ok = false;
        for (const auto& base : src.base_urls) {
            if (download_to(base + file, dest.string(), last_error)) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            std::error_code ec;
            fs::remove(dest, ec);
            cleanup();
            throw DataError("fetch '" + name + "' failed: " + last_error);
        }
        fetched.push_back(dest);
    }

    // verify (or record on first fetch), then move into place atomically
    std::map<std::string, std::string> new_hashes;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const std::string file = name + "-" + parts[i] + ".txt";
        const std::string h = sha256_file(fetched[i].string());
        if (manifest.count(file) && manifest[file] != h) {
            cleanup();
            throw DataError("fetch '" + name + "': hash mismatch for " + file + " (recorded " +
                            manifest[file] + ", downloaded " + h + "); no files kept");
        }
        new_hashes[file] = h;
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const std::string file = name + "-" + parts[i] + ".txt";
        fs::rename(fetched[i], dir / file);
    }
    for (const auto& [file, hash] : new_hashes) manifest[file] = hash;
    write_manifest(manifest_path, manifest);
    return prefix;
}

} // namespace hosim
