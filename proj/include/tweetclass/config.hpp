#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tweetclass/pipeline.hpp"
#include "tweetclass/resources.hpp"

namespace twc {

// Flat key=value file with '#' comments. Later keys override earlier ones.
class KeyValueFile {
public:
    static KeyValueFile parse_file(const std::string& path);
    static KeyValueFile parse_string(const std::string& text, const std::string& origin);

    bool has(const std::string& key) const;
    std::string get(const std::string& key) const;                  // throws if absent
    std::string get_or(const std::string& key, const std::string& fallback) const;
    void set(const std::string& key, const std::string& value);
    const std::vector<std::pair<std::string, std::string>>& items() const { return order_; }

private:
    std::map<std::string, std::string> values_;
    std::vector<std::pair<std::string, std::string>> order_;
    std::string origin_;
};

// PipelineConfig <-> flat keys (the preset file format).
PipelineConfig pipeline_config_from_kv(const KeyValueFile& kv);
void pipeline_config_to_kv(const PipelineConfig& cfg, KeyValueFile& kv);

// Loads a shipped preset by name from `preset_dir` (file <name>.preset).
PipelineConfig load_preset(const std::string& name, const std::string& preset_dir);

// Conventional layout of a resources directory; any path can be overridden
// before loading. Embedding/cluster/sentiment resources resolve by name:
// embeddings/<name>.vec, clusters/<name>.tsv, sentiment/<name>.tsv.
struct ResourcePaths {
    std::string root;
    std::string medications;
    std::string adr_terms;
    std::string pronouns;
    std::string negators;             // optional file; built-ins otherwise
    std::string emoticons_positive;   // optional
    std::string emoticons_negative;   // optional

    static ResourcePaths in_dir(const std::string& dir);
    std::string embedding_file(const std::string& name) const;
    std::string cluster_file(const std::string& name) const;
    std::string sentiment_file(const std::string& name) const;
};

// Loads exactly the resources `cfg` needs. A missing required file throws
// with the offending path in the message.
ResourceBundle load_resources(const ResourcePaths& paths, const FeatureConfig& cfg);

}  // namespace twc
