#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "tweetclass/textprep.hpp"

namespace twc {

// Term lexicon: lowercased single- or multi-token entries (medications, ADR
// concepts, pronouns). Multi-token entries are kept as token sequences so
// phrase matching can work over tokenized text.
class TermLexicon {
public:
    TermLexicon() = default;
    explicit TermLexicon(std::string name) : name_(std::move(name)) {}

    void add(const std::string& entry);          // splits on whitespace, lowercases
    bool contains_token(const std::string& lowercased) const;
    std::size_t size() const { return entries_.size(); }
    const std::string& name() const { return name_; }

    // Entries starting with `first_token`, longest first.
    const std::vector<std::vector<std::string>>* entries_starting_with(
        const std::string& first_token) const;

private:
    std::string name_;
    std::map<std::vector<std::string>, bool> entries_;  // dedup; value unused
    std::unordered_map<std::string, std::vector<std::vector<std::string>>> by_first_;
};

struct ScoredLexicon {
    std::string name;
    std::unordered_map<std::string, double> scores;  // lowercased term -> score

    // (found, score); absent terms are reported, not defaulted to 0.
    std::pair<bool, double> lookup(const std::string& lowercased) const;
};

struct EmbeddingTable {
    std::string name;
    std::size_t dim = 0;
    std::unordered_map<std::string, std::vector<double>> vectors;

    const std::vector<double>* lookup(const std::string& lowercased) const;
};

struct ClusterMap {
    std::string name;
    std::unordered_map<std::string, std::string> cluster_of;  // term -> cluster id

    const std::string* lookup(const std::string& lowercased) const;
};

// One term per line, UTF-8; lowercased and deduplicated.
TermLexicon load_term_lexicon(const std::string& path, const std::string& name = "");

// Lines term<TAB>score; later duplicates override earlier ones.
ScoredLexicon load_scored_lexicon(const std::string& path, const std::string& name = "");

// Lines term v1 .. vd (space separated, uniform d). An optional first line
// with exactly two integer fields (count, dim) is treated as a header.
EmbeddingTable load_embeddings(const std::string& path, const std::string& name = "");

// Lines cluster_id<TAB>term, or Brown path format path<TAB>term<TAB>count.
// A term mapped to two different clusters is an error.
ClusterMap load_clusters(const std::string& path, const std::string& name = "");

struct Span {
    std::size_t start = 0;
    std::size_t length = 0;
    bool operator==(const Span&) const = default;
};

// Non-overlapping leftmost-longest matches of lexicon entries over the
// lowercased token sequence, sorted by start.
std::vector<Span> match_phrases(const TokenSequence& t, const TermLexicon& lex);

// Everything the feature extractors may consult, keyed by resource name.
struct ResourceBundle {
    TermLexicon medications{"medications"};
    TermLexicon adr_terms{"adr_terms"};
    TermLexicon pronouns{"pronouns"};
    std::map<std::string, ScoredLexicon> sentiment;
    std::map<std::string, EmbeddingTable> embeddings;
    std::map<std::string, ClusterMap> clusters;
    TextPrepOptions textprep = TextPrepOptions::defaults();

    const EmbeddingTable& embedding(const std::string& name) const;
    const ClusterMap& cluster_map(const std::string& name) const;
    const ScoredLexicon& sentiment_lexicon(const std::string& name) const;
};

}  // namespace twc
