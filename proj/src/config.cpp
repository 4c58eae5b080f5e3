#include "tweetclass/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace twc {
namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string trimmed = trim(s);
    if (trimmed.empty()) return out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = trimmed.find(',', start);
        out.push_back(trim(trimmed.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

int parse_int(const std::string& s, const std::string& key) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error("config key '" + key + "': not an integer: '" + s + "'");
    return v;
}

double parse_double(const std::string& s, const std::string& key) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error("config key '" + key + "': not a number: '" + s + "'");
    return v;
}

bool parse_bool(const std::string& s, const std::string& key) {
    std::string low;
    for (char c : s) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (low == "true" || low == "1" || low == "yes") return true;
    if (low == "false" || low == "0" || low == "no") return false;
    throw std::runtime_error("config key '" + key + "': not a boolean: '" + s + "'");
}

std::string fmt_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string join_csv(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += v[i];
    }
    return out;
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> kKeys = {
        "label_domain", "positive_class", "metric_classes",
        "word_ngram_max", "noncontig_ngram_max", "char_ngram_max",
        "use_stems", "use_negation", "use_twitter", "use_punctuation",
        "embedding_tables", "cluster_maps",
        "domain_ngram_max", "domain_noncontig_max",
        "use_adr_lexicon", "use_pronoun_lexicon",
        "domain_embedding_tables", "domain_cluster_maps",
        "sentiment_lexicons",
        "svm_c", "class_weights", "svm_tolerance", "svm_max_iterations", "seed",
        "imbalance", "ratios", "minority_class",
    };
    return kKeys;
}

}  // namespace

KeyValueFile KeyValueFile::parse_string(const std::string& text, const std::string& origin) {
    KeyValueFile kv;
    kv.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": empty key");
        kv.set(key, value);
    }
    return kv;
}

KeyValueFile KeyValueFile::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_string(text, path);
}

bool KeyValueFile::has(const std::string& key) const { return values_.count(key) > 0; }

std::string KeyValueFile::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw std::runtime_error("missing config key '" + key + "'" +
                                 (origin_.empty() ? "" : " in " + origin_));
    return it->second;
}

std::string KeyValueFile::get_or(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

void KeyValueFile::set(const std::string& key, const std::string& value) {
    auto [it, inserted] = values_.insert_or_assign(key, value);
    (void)it;
    if (inserted) {
        order_.emplace_back(key, value);
    } else {
        for (auto& [k, v] : order_)
            if (k == key) v = value;
    }
}

PipelineConfig pipeline_config_from_kv(const KeyValueFile& kv) {
    for (const auto& [key, value] : kv.items()) {
        (void)value;
        if (!known_keys().count(key))
            throw std::runtime_error("unknown config key '" + key + "'");
    }

    PipelineConfig cfg;
    for (const std::string& s : split_csv(kv.get_or("label_domain", "0,1")))
        cfg.label_domain.insert(parse_int(s, "label_domain"));
    cfg.positive_class = parse_int(kv.get_or("positive_class", "1"), "positive_class");
    cfg.metric_classes.clear();
    for (const std::string& s : split_csv(kv.get_or("metric_classes", "1")))
        cfg.metric_classes.push_back(parse_int(s, "metric_classes"));

    FeatureConfig& f = cfg.features;
    f.word_ngram_max = parse_int(kv.get_or("word_ngram_max", "0"), "word_ngram_max");
    f.noncontig_ngram_max =
        parse_int(kv.get_or("noncontig_ngram_max", "0"), "noncontig_ngram_max");
    f.char_ngram_max = parse_int(kv.get_or("char_ngram_max", "0"), "char_ngram_max");
    f.use_stems = parse_bool(kv.get_or("use_stems", "false"), "use_stems");
    f.use_negation = parse_bool(kv.get_or("use_negation", "false"), "use_negation");
    f.use_twitter = parse_bool(kv.get_or("use_twitter", "false"), "use_twitter");
    f.use_punctuation =
        parse_bool(kv.get_or("use_punctuation", "false"), "use_punctuation");
    f.embedding_tables = split_csv(kv.get_or("embedding_tables", ""));
    f.cluster_maps = split_csv(kv.get_or("cluster_maps", ""));
    f.domain_ngram_max = parse_int(kv.get_or("domain_ngram_max", "0"), "domain_ngram_max");
    f.domain_noncontig_max =
        parse_int(kv.get_or("domain_noncontig_max", "0"), "domain_noncontig_max");
    f.use_adr_lexicon = parse_bool(kv.get_or("use_adr_lexicon", "false"), "use_adr_lexicon");
    f.use_pronoun_lexicon =
        parse_bool(kv.get_or("use_pronoun_lexicon", "false"), "use_pronoun_lexicon");
    f.domain_embedding_tables = split_csv(kv.get_or("domain_embedding_tables", ""));
    f.domain_cluster_maps = split_csv(kv.get_or("domain_cluster_maps", ""));
    f.sentiment_lexicons = split_csv(kv.get_or("sentiment_lexicons", ""));

    cfg.train.C = parse_double(kv.get_or("svm_c", "1"), "svm_c");
    if (cfg.train.C <= 0) throw std::runtime_error("svm_c must be > 0");
    for (const std::string& part : split_csv(kv.get_or("class_weights", ""))) {
        std::size_t colon = part.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("class_weights entries look like class:weight, got '" +
                                     part + "'");
        int cls = parse_int(trim(part.substr(0, colon)), "class_weights");
        double weight = parse_double(trim(part.substr(colon + 1)), "class_weights");
        if (weight <= 0) throw std::runtime_error("class weights must be > 0");
        cfg.train.class_weights[cls] = weight;
    }
    cfg.train.tolerance = parse_double(kv.get_or("svm_tolerance", "0.0001"), "svm_tolerance");
    cfg.train.max_iterations =
        parse_int(kv.get_or("svm_max_iterations", "1000"), "svm_max_iterations");
    cfg.train.seed = static_cast<std::uint64_t>(
        parse_int(kv.get_or("seed", "42"), "seed"));

    std::string kind = kv.get_or("imbalance", "none");
    if (kind == "none") {
        cfg.imbalance.kind = ImbalanceStrategy::Kind::none;
    } else if (kind == "undersample") {
        cfg.imbalance.kind = ImbalanceStrategy::Kind::undersample;
    } else if (kind == "ensemble") {
        cfg.imbalance.kind = ImbalanceStrategy::Kind::ensemble;
    } else {
        throw std::runtime_error("imbalance must be none, undersample, or ensemble; got '" +
                                 kind + "'");
    }
    for (const std::string& s : split_csv(kv.get_or("ratios", "")))
        cfg.imbalance.ratios.push_back(parse_double(s, "ratios"));
    cfg.imbalance.minority_class =
        parse_int(kv.get_or("minority_class", "1"), "minority_class");

    if (cfg.imbalance.kind != ImbalanceStrategy::Kind::none && cfg.imbalance.ratios.empty())
        throw std::runtime_error("imbalance strategy '" + kind + "' needs ratios");
    if (cfg.label_domain.size() < 2)
        throw std::runtime_error("label_domain needs at least two classes");
    if (!cfg.label_domain.count(cfg.positive_class))
        throw std::runtime_error("positive_class must be in label_domain");
    for (int cls : cfg.metric_classes)
        if (!cfg.label_domain.count(cls))
            throw std::runtime_error("metric class " + std::to_string(cls) +
                                     " not in label_domain");
    return cfg;
}

void pipeline_config_to_kv(const PipelineConfig& cfg, KeyValueFile& kv) {
    std::vector<std::string> domain, metric, weights, ratios;
    for (int cls : cfg.label_domain) domain.push_back(std::to_string(cls));
    for (int cls : cfg.metric_classes) metric.push_back(std::to_string(cls));
    for (const auto& [cls, w] : cfg.train.class_weights)
        weights.push_back(std::to_string(cls) + ":" + fmt_number(w));
    for (double r : cfg.imbalance.ratios) ratios.push_back(fmt_number(r));

    const FeatureConfig& f = cfg.features;
    kv.set("label_domain", join_csv(domain));
    kv.set("positive_class", std::to_string(cfg.positive_class));
    kv.set("metric_classes", join_csv(metric));
    kv.set("word_ngram_max", std::to_string(f.word_ngram_max));
    kv.set("noncontig_ngram_max", std::to_string(f.noncontig_ngram_max));
    kv.set("char_ngram_max", std::to_string(f.char_ngram_max));
    kv.set("use_stems", f.use_stems ? "true" : "false");
    kv.set("use_negation", f.use_negation ? "true" : "false");
    kv.set("use_twitter", f.use_twitter ? "true" : "false");
    kv.set("use_punctuation", f.use_punctuation ? "true" : "false");
    kv.set("embedding_tables", join_csv(f.embedding_tables));
    kv.set("cluster_maps", join_csv(f.cluster_maps));
    kv.set("domain_ngram_max", std::to_string(f.domain_ngram_max));
    kv.set("domain_noncontig_max", std::to_string(f.domain_noncontig_max));
    kv.set("use_adr_lexicon", f.use_adr_lexicon ? "true" : "false");
    kv.set("use_pronoun_lexicon", f.use_pronoun_lexicon ? "true" : "false");
    kv.set("domain_embedding_tables", join_csv(f.domain_embedding_tables));
    kv.set("domain_cluster_maps", join_csv(f.domain_cluster_maps));
    kv.set("sentiment_lexicons", join_csv(f.sentiment_lexicons));
    kv.set("svm_c", fmt_number(cfg.train.C));
    kv.set("class_weights", join_csv(weights));
    kv.set("svm_tolerance", fmt_number(cfg.train.tolerance));
    kv.set("svm_max_iterations", std::to_string(cfg.train.max_iterations));
    kv.set("seed", std::to_string(cfg.train.seed));
    std::string kind = "none";
    if (cfg.imbalance.kind == ImbalanceStrategy::Kind::undersample) kind = "undersample";
    if (cfg.imbalance.kind == ImbalanceStrategy::Kind::ensemble) kind = "ensemble";
    kv.set("imbalance", kind);
    kv.set("ratios", join_csv(ratios));
    kv.set("minority_class", std::to_string(cfg.imbalance.minority_class));
}

PipelineConfig load_preset(const std::string& name, const std::string& preset_dir) {
    std::string path = preset_dir + "/" + name + ".preset";
    if (!std::filesystem::exists(path))
        throw std::runtime_error("unknown preset '" + name + "' (no file " + path + ")");
    return pipeline_config_from_kv(KeyValueFile::parse_file(path));
}

ResourcePaths ResourcePaths::in_dir(const std::string& dir) {
    ResourcePaths p;
    p.root = dir;
    p.medications = dir + "/medications.txt";
    p.adr_terms = dir + "/adr_terms.txt";
    p.pronouns = dir + "/pronouns.txt";
    p.negators = dir + "/negators.txt";
    p.emoticons_positive = dir + "/emoticons_positive.txt";
    p.emoticons_negative = dir + "/emoticons_negative.txt";
    return p;
}

std::string ResourcePaths::embedding_file(const std::string& name) const {
    return root + "/embeddings/" + name + ".vec";
}

std::string ResourcePaths::cluster_file(const std::string& name) const {
    return root + "/clusters/" + name + ".tsv";
}

std::string ResourcePaths::sentiment_file(const std::string& name) const {
    return root + "/sentiment/" + name + ".tsv";
}

namespace {

// One entry per line, case preserved (emoticon matching is case-sensitive).
std::set<std::string> load_term_set(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open resource file: " + path);
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t b = line.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t");
        out.insert(line.substr(b, e - b + 1));
    }
    return out;
}

void require_file(const std::string& path, const std::string& what) {
    if (!std::filesystem::exists(path))
        throw std::runtime_error("missing " + what + " file: " + path);
}

}  // namespace

ResourceBundle load_resources(const ResourcePaths& paths, const FeatureConfig& cfg) {
    ResourceBundle res;

    res.textprep = TextPrepOptions::defaults();
    if (!paths.negators.empty() && std::filesystem::exists(paths.negators)) {
        std::set<std::string> negators;
        for (const std::string& n : load_term_set(paths.negators))
            negators.insert(to_lower(n));
        res.textprep.negators = std::move(negators);
    }
    bool has_pos =
        !paths.emoticons_positive.empty() && std::filesystem::exists(paths.emoticons_positive);
    bool has_neg =
        !paths.emoticons_negative.empty() && std::filesystem::exists(paths.emoticons_negative);
    if (has_pos || has_neg) {
        std::set<std::string> pos = has_pos ? load_term_set(paths.emoticons_positive)
                                            : default_positive_emoticons();
        std::set<std::string> neg = has_neg ? load_term_set(paths.emoticons_negative)
                                            : default_negative_emoticons();
        res.textprep.set_emoticons(std::move(pos), std::move(neg));
    }

    if (cfg.any_domain_generalization()) {
        require_file(paths.medications, "medication lexicon");
        res.medications = load_term_lexicon(paths.medications, "medications");
    }
    if (cfg.any_domain_generalization() || cfg.use_adr_lexicon) {
        require_file(paths.adr_terms, "ADR lexicon");
        res.adr_terms = load_term_lexicon(paths.adr_terms, "adr_terms");
    }
    if (cfg.use_pronoun_lexicon) {
        require_file(paths.pronouns, "pronoun lexicon");
        res.pronouns = load_term_lexicon(paths.pronouns, "pronouns");
    }
    for (const std::string& name : cfg.all_embedding_tables()) {
        require_file(paths.embedding_file(name), "embedding table '" + name + "'");
        res.embeddings[name] = load_embeddings(paths.embedding_file(name), name);
    }
    for (const std::string& name : cfg.all_cluster_maps()) {
        require_file(paths.cluster_file(name), "cluster map '" + name + "'");
        res.clusters[name] = load_clusters(paths.cluster_file(name), name);
    }
    for (const std::string& name : cfg.sentiment_lexicons) {
        require_file(paths.sentiment_file(name), "sentiment lexicon '" + name + "'");
        res.sentiment[name] = load_scored_lexicon(paths.sentiment_file(name), name);
    }
    return res;
}

}  // namespace twc
