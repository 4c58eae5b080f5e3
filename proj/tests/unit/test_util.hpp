#pragma once

// Shared helpers for the unit suites: fixture paths, temp files, and small
// construction shortcuts.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "tweetclass/config.hpp"
#include "tweetclass/corpus.hpp"
#include "tweetclass/features.hpp"
#include "tweetclass/resources.hpp"
#include "tweetclass/textprep.hpp"

#ifndef TWC_FIXTURES_DIR
#define TWC_FIXTURES_DIR "tests/fixtures"
#endif

namespace twc::test {

inline std::string fixture_path(const std::string& rel) {
    return std::string(TWC_FIXTURES_DIR) + "/" + rel;
}

inline std::string fixture_resources_dir() { return fixture_path("resources"); }

// Loads the full fixture resource bundle (all lexicons, tables, maps).
inline ResourceBundle full_fixture_bundle() {
    FeatureConfig cfg;
    cfg.domain_ngram_max = 4;
    cfg.domain_noncontig_max = 5;
    cfg.use_adr_lexicon = true;
    cfg.use_pronoun_lexicon = true;
    cfg.embedding_tables = {"word2vec", "conceptnet"};
    cfg.domain_embedding_tables = {"domain_word2vec"};
    cfg.cluster_maps = {"brown"};
    cfg.domain_cluster_maps = {"domain_kmeans"};
    cfg.sentiment_lexicons = {"hu_liu", "vad", "labmt", "emoticon"};
    return load_resources(ResourcePaths::in_dir(fixture_resources_dir()), cfg);
}

// RAII temp directory under the system temp root.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        base_ = std::filesystem::temp_directory_path() /
                ("twc_" + tag + "_" + std::to_string(counter()++));
        std::filesystem::create_directories(base_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(base_, ec);
    }
    std::string path(const std::string& rel) const { return (base_ / rel).string(); }
    std::string dir() const { return base_.string(); }

private:
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::filesystem::path base_;
};

inline void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

// Token sequence straight from surfaces (no preprocessing).
inline TokenSequence toks(const std::vector<std::string>& surfaces) {
    TokenSequence t;
    for (const auto& s : surfaces) t.tokens.push_back({s, false});
    return t;
}

inline std::set<std::string> as_set(const std::vector<std::string>& v) {
    return std::set<std::string>(v.begin(), v.end());
}

}  // namespace twc::test
