#pragma once

#include <string>
#include <vector>

namespace hosim {

struct DatasetSource {
    std::string name;
    std::vector<std::string> base_urls; // tried in order; "{name}-{part}.txt" appended
};

// Small public datasets the CLI knows how to pull.
const std::vector<DatasetSource>& dataset_registry();

std::string default_cache_dir(); // $HOSIM_CACHE or ./hosim-cache

std::string sha256_file(const std::string& path);

// Downloads the three dataset files into <cache>/<name>/ and returns the
// dataset prefix. Verification is against the recorded hashes in the
// cache's <name>.sha256 manifest; the first successful fetch records them.
// On any mismatch or failure no partial files are kept. Idempotent: a
// complete verified cache entry short-circuits the download.
std::string fetch_dataset(const std::string& name, const std::string& cache_dir = "");

} // namespace hosim
