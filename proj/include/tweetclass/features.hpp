#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tweetclass/corpus.hpp"
#include "tweetclass/resources.hpp"
#include "tweetclass/textprep.hpp"

namespace twc {

// Which feature groups are enabled and how far the n-gram orders go.
// Mirrors the knobs of the shipped presets; 0 disables an n-gram family.
struct FeatureConfig {
    int word_ngram_max = 0;
    int noncontig_ngram_max = 0;       // needs >= 3 to produce anything
    int char_ngram_max = 0;
    bool use_stems = false;
    bool use_negation = false;
    bool use_twitter = false;
    bool use_punctuation = false;
    std::vector<std::string> embedding_tables;         // general-domain
    std::vector<std::string> domain_embedding_tables;
    std::vector<std::string> cluster_maps;             // general-domain
    std::vector<std::string> domain_cluster_maps;
    int domain_ngram_max = 0;
    int domain_noncontig_max = 0;
    bool use_adr_lexicon = false;
    bool use_pronoun_lexicon = false;
    std::vector<std::string> sentiment_lexicons;

    bool any_domain_generalization() const {
        return domain_ngram_max > 0 || domain_noncontig_max > 0;
    }
    std::vector<std::string> all_embedding_tables() const;
    std::vector<std::string> all_cluster_maps() const;
};

// Interned feature-name space. Ids are dense from 0 in first-seen order.
// Once frozen, unknown names resolve to nothing (they are silently dropped
// by extraction), never to a new id.
class FeatureSpace {
public:
    std::optional<std::uint32_t> intern(std::string_view name);
    std::optional<std::uint32_t> lookup(std::string_view name) const;
    const std::string& name_of(std::uint32_t id) const { return names_.at(id); }
    std::uint32_t size() const { return static_cast<std::uint32_t>(names_.size()); }
    bool frozen() const { return frozen_; }
    void freeze() { frozen_ = true; }

    // Interns the dense embedding blocks ("emb:<table>:<i>") up front so
    // every table owns a contiguous id range.
    static FeatureSpace with_embedding_blocks(const FeatureConfig& cfg,
                                              const ResourceBundle& res);

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> ids_;
    bool frozen_ = false;
};

// Sparse (id, value) pairs, ids strictly increasing, no zero values.
struct FeatureVector {
    std::vector<std::pair<std::uint32_t, double>> entries;

    std::size_t nnz() const { return entries.size(); }
    double dot(const std::vector<double>& dense) const;
    double l2_squared() const;
};

// --- feature-name generators (binary groups return deduplicated names) ---

std::vector<std::string> word_ngrams(const TokenSequence& t, int n_max);
std::vector<std::string> noncontig_ngrams(const TokenSequence& t, int n_max);
std::vector<std::string> char_ngrams(const TokenSequence& t, int n_max);
std::vector<std::string> stem_unigrams(const TokenSequence& t);
std::vector<std::string> cluster_presence(const TokenSequence& t, const ClusterMap& c);

// Component-wise sum of the vectors of in-vocabulary tokens; OOV tokens
// contribute nothing. Length = table dimension.
std::vector<double> embedding_sum(const TokenSequence& t, const EmbeddingTable& e);

// (name, value) pairs; zero values are omitted by the caller.
std::vector<std::pair<std::string, double>> twitter_features(
    const TokenSequence& t, const TextPrepOptions& opts);
std::vector<std::pair<std::string, double>> punctuation_features(const TokenSequence& t);
std::vector<std::pair<std::string, double>> sentiment_features(
    const TokenSequence& t, const ScoredLexicon& lex);
std::vector<std::pair<std::string, double>> adr_lexicon_features(
    const TokenSequence& t, const TermLexicon& adr);
double pronoun_count(const TokenSequence& t, const TermLexicon& pronouns);

// Replaces medication spans with "<MED>" and, over the remaining tokens,
// ADR spans with "<ADR>". A replaced span is negated if any covered token
// was.
TokenSequence domain_generalize(const TokenSequence& t, const TermLexicon& med,
                                const TermLexicon& adr);

// word + non-contiguous n-grams of the generalized sequence, "g:"-prefixed.
std::vector<std::string> domain_ngrams(const TokenSequence& generalized,
                                       const FeatureConfig& cfg);

// Runs the preprocessing pipeline (normalize, tokenize, optional negation
// marking) and every enabled feature group, interning names through
// `space`. With a frozen space unknown names are dropped silently.
FeatureVector extract(const Tweet& tweet, const FeatureConfig& cfg,
                      const ResourceBundle& res, FeatureSpace& space);

// The preprocessed token sequence extract() works from; exposed so tests
// and the generalization path can share it.
TokenSequence preprocess(const std::string& text, const FeatureConfig& cfg,
                         const ResourceBundle& res);

}  // namespace twc
