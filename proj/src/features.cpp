#include "tweetclass/features.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "tweetclass/porter.hpp"

namespace twc {
namespace {

std::vector<std::string> rendered(const TokenSequence& t) {
    std::vector<std::string> out;
    out.reserve(t.size());
    for (const Token& tok : t.tokens) out.push_back(render_token(tok));
    return out;
}

std::string join(const std::vector<std::string>& toks, std::size_t start, std::size_t n) {
    std::string s = toks[start];
    for (std::size_t i = 1; i < n; ++i) {
        s += ' ';
        s += toks[start + i];
    }
    return s;
}

// Keeps first-seen order while dropping repeats.
void push_unique(std::vector<std::string>& out, std::unordered_set<std::string>& seen,
                 std::string name) {
    if (seen.insert(name).second) out.push_back(std::move(name));
}

bool is_ascii_upper_word(const std::string& t) {
    if (t.size() < 2) return false;
    for (char c : t)
        if (c < 'A' || c > 'Z') return false;
    return true;
}

bool is_hashtag_token(const std::string& t) {
    if (t.size() < 2 || t[0] != '#') return false;
    for (std::size_t i = 1; i < t.size(); ++i) {
        char c = t[i];
        bool word = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_';
        if (!word) return false;
    }
    return true;
}

bool is_elongated(const std::string& t) {
    bool has_letter = false;
    for (char c : t)
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) has_letter = true;
    if (!has_letter) return false;
    std::size_t run = 1;
    for (std::size_t i = 1; i < t.size(); ++i) {
        run = t[i] == t[i - 1] ? run + 1 : 1;
        if (run >= 3) return true;
    }
    return false;
}

std::string embedding_feature_name(const std::string& table, std::size_t i) {
    return "emb:" + table + ":" + std::to_string(i);
}

}  // namespace

std::vector<std::string> FeatureConfig::all_embedding_tables() const {
    std::vector<std::string> all = embedding_tables;
    all.insert(all.end(), domain_embedding_tables.begin(), domain_embedding_tables.end());
    return all;
}

std::vector<std::string> FeatureConfig::all_cluster_maps() const {
    std::vector<std::string> all = cluster_maps;
    all.insert(all.end(), domain_cluster_maps.begin(), domain_cluster_maps.end());
    return all;
}

std::optional<std::uint32_t> FeatureSpace::intern(std::string_view name) {
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
    if (frozen_) return std::nullopt;
    std::uint32_t id = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
}

std::optional<std::uint32_t> FeatureSpace::lookup(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

FeatureSpace FeatureSpace::with_embedding_blocks(const FeatureConfig& cfg,
                                                 const ResourceBundle& res) {
    FeatureSpace space;
    for (const std::string& table : cfg.all_embedding_tables()) {
        std::size_t dim = res.embedding(table).dim;
        for (std::size_t i = 0; i < dim; ++i)
            space.intern(embedding_feature_name(table, i));
    }
    return space;
}

double FeatureVector::dot(const std::vector<double>& dense) const {
    double sum = 0.0;
    for (const auto& [id, v] : entries)
        if (id < dense.size()) sum += v * dense[id];
    return sum;
}

double FeatureVector::l2_squared() const {
    double sum = 0.0;
    for (const auto& [id, v] : entries) sum += v * v;
    return sum;
}

std::vector<std::string> word_ngrams(const TokenSequence& t, int n_max) {
    std::vector<std::string> out;
    if (n_max < 1 || t.empty()) return out;
    std::unordered_set<std::string> seen;
    std::vector<std::string> toks = rendered(t);
    for (int n = 1; n <= n_max; ++n) {
        if (static_cast<std::size_t>(n) > toks.size()) break;
        for (std::size_t i = 0; i + n <= toks.size(); ++i)
            push_unique(out, seen, join(toks, i, static_cast<std::size_t>(n)));
    }
    return out;
}

std::vector<std::string> noncontig_ngrams(const TokenSequence& t, int n_max) {
    std::vector<std::string> out;
    if (n_max < 3 || t.size() < 3) return out;
    std::unordered_set<std::string> seen;
    std::vector<std::string> toks = rendered(t);
    for (int n = 3; n <= n_max; ++n) {
        if (static_cast<std::size_t>(n) > toks.size()) break;
        for (std::size_t i = 0; i + n <= toks.size(); ++i) {
            for (std::size_t gap = 1; gap + 1 < static_cast<std::size_t>(n); ++gap) {
                std::vector<std::string> gram(toks.begin() + static_cast<std::ptrdiff_t>(i),
                                              toks.begin() + static_cast<std::ptrdiff_t>(i + n));
                gram[gap] = "*";
                push_unique(out, seen, join(gram, 0, gram.size()));
            }
        }
    }
    return out;
}

std::vector<std::string> char_ngrams(const TokenSequence& t, int n_max) {
    std::vector<std::string> out;
    if (n_max < 1) return out;
    std::unordered_set<std::string> seen;
    for (const Token& tok : t.tokens) {
        std::string low = to_lower(tok.surface);
        for (int n = 1; n <= n_max; ++n) {
            if (static_cast<std::size_t>(n) > low.size()) break;
            for (std::size_t i = 0; i + n <= low.size(); ++i)
                push_unique(out, seen, "c:" + low.substr(i, static_cast<std::size_t>(n)));
        }
    }
    return out;
}

std::vector<std::string> stem_unigrams(const TokenSequence& t) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const Token& tok : t.tokens)
        push_unique(out, seen, "s:" + porter_stem(to_lower(tok.surface)));
    return out;
}

std::vector<std::string> cluster_presence(const TokenSequence& t, const ClusterMap& c) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const Token& tok : t.tokens) {
        const std::string* id = c.lookup(to_lower(tok.surface));
        if (id) push_unique(out, seen, "cl:" + *id);
    }
    return out;
}

std::vector<double> embedding_sum(const TokenSequence& t, const EmbeddingTable& e) {
    std::vector<double> sum(e.dim, 0.0);
    for (const Token& tok : t.tokens) {
        const std::vector<double>* vec = e.lookup(to_lower(tok.surface));
        if (!vec) continue;
        for (std::size_t i = 0; i < e.dim; ++i) sum[i] += (*vec)[i];
    }
    return sum;
}

std::vector<std::pair<std::string, double>> twitter_features(const TokenSequence& t,
                                                             const TextPrepOptions& opts) {
    double allcaps = 0, hashtags = 0, elongated = 0;
    bool pos = false, neg = false, last_pos = false, last_neg = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const std::string& s = t[i].surface;
        if (is_ascii_upper_word(s)) ++allcaps;
        if (is_hashtag_token(s)) ++hashtags;
        if (is_elongated(s)) ++elongated;
        bool p = opts.positive_emoticons.count(s) > 0;
        bool n = opts.negative_emoticons.count(s) > 0;
        pos = pos || p;
        neg = neg || n;
        if (i + 1 == t.size()) {
            last_pos = p;
            last_neg = n;
        }
    }
    return {
        {"tw:allcaps", allcaps},
        {"tw:hashtags", hashtags},
        {"tw:emoticon_pos", pos ? 1.0 : 0.0},
        {"tw:emoticon_neg", neg ? 1.0 : 0.0},
        {"tw:last_emoticon_pos", last_pos ? 1.0 : 0.0},
        {"tw:last_emoticon_neg", last_neg ? 1.0 : 0.0},
        {"tw:elongated", elongated},
    };
}

std::vector<std::pair<std::string, double>> punctuation_features(const TokenSequence& t) {
    bool has_e = false, has_q = false, last_e = false, last_q = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
        bool e = t[i].surface.find('!') != std::string::npos;
        bool q = t[i].surface.find('?') != std::string::npos;
        has_e = has_e || e;
        has_q = has_q || q;
        if (i + 1 == t.size()) {
            last_e = e;
            last_q = q;
        }
    }
    return {
        {"p:has_excl", has_e ? 1.0 : 0.0},
        {"p:has_quest", has_q ? 1.0 : 0.0},
        {"p:last_excl", last_e ? 1.0 : 0.0},
        {"p:last_quest", last_q ? 1.0 : 0.0},
    };
}

std::vector<std::pair<std::string, double>> sentiment_features(const TokenSequence& t,
                                                               const ScoredLexicon& lex) {
    double count = 0, total = 0, last = 0;
    bool any_in_lexicon = false;
    double max_score = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        auto [found, score] = lex.lookup(to_lower(t[i].surface));
        if (found) {
            if (score != 0.0) ++count;
            total += score;
            max_score = any_in_lexicon ? std::max(max_score, score) : score;
            any_in_lexicon = true;
        }
        if (i + 1 == t.size()) last = found ? score : 0.0;
    }
    std::vector<std::pair<std::string, double>> out = {
        {"lex:" + lex.name + ":count", count},
        {"lex:" + lex.name + ":total", total},
    };
    if (any_in_lexicon) out.push_back({"lex:" + lex.name + ":max", max_score});
    out.push_back({"lex:" + lex.name + ":last", last});
    return out;
}

std::vector<std::pair<std::string, double>> adr_lexicon_features(const TokenSequence& t,
                                                                 const TermLexicon& adr) {
    std::vector<Span> spans = match_phrases(t, adr);
    if (spans.empty()) return {};
    return {
        {"adr:count", static_cast<double>(spans.size())},
        {"adr:present", 1.0},
    };
}

double pronoun_count(const TokenSequence& t, const TermLexicon& pronouns) {
    double count = 0;
    for (const Token& tok : t.tokens)
        if (pronouns.contains_token(to_lower(tok.surface))) ++count;
    return count;
}

TokenSequence domain_generalize(const TokenSequence& t, const TermLexicon& med,
                                const TermLexicon& adr) {
    auto replace_spans = [](const TokenSequence& seq, const std::vector<Span>& spans,
                            const char* placeholder) {
        TokenSequence out;
        std::size_t next_span = 0;
        std::size_t i = 0;
        while (i < seq.size()) {
            if (next_span < spans.size() && spans[next_span].start == i) {
                const Span& s = spans[next_span];
                bool negated = false;
                for (std::size_t k = 0; k < s.length; ++k)
                    negated = negated || seq[i + k].is_negated;
                out.tokens.push_back({placeholder, negated});
                i += s.length;
                ++next_span;
            } else {
                out.tokens.push_back(seq[i]);
                ++i;
            }
        }
        return out;
    };
    TokenSequence with_med = replace_spans(t, match_phrases(t, med), "<MED>");
    return replace_spans(with_med, match_phrases(with_med, adr), "<ADR>");
}

std::vector<std::string> domain_ngrams(const TokenSequence& generalized,
                                       const FeatureConfig& cfg) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const std::string& g : word_ngrams(generalized, cfg.domain_ngram_max))
        push_unique(out, seen, "g:" + g);
    for (const std::string& g : noncontig_ngrams(generalized, cfg.domain_noncontig_max))
        push_unique(out, seen, "g:" + g);
    return out;
}

TokenSequence preprocess(const std::string& text, const FeatureConfig& cfg,
                         const ResourceBundle& res) {
    TokenSequence seq = tokenize(normalize(text), res.textprep);
    if (cfg.use_negation) seq = mark_negation(std::move(seq), res.textprep.negators);
    return seq;
}

FeatureVector extract(const Tweet& tweet, const FeatureConfig& cfg,
                      const ResourceBundle& res, FeatureSpace& space) {
    TokenSequence t = preprocess(tweet.text, cfg, res);

    // (name, value) pairs in a fixed emission order; this order determines id
    // assignment while the space is still growable.
    std::vector<std::pair<std::string, double>> emitted;
    auto emit_binary = [&emitted](std::vector<std::string> names) {
        for (std::string& n : names) emitted.emplace_back(std::move(n), 1.0);
    };
    auto emit_valued = [&emitted](std::vector<std::pair<std::string, double>> pairs) {
        for (auto& p : pairs) emitted.push_back(std::move(p));
    };

    if (cfg.word_ngram_max > 0) emit_binary(word_ngrams(t, cfg.word_ngram_max));
    if (cfg.noncontig_ngram_max >= 3) emit_binary(noncontig_ngrams(t, cfg.noncontig_ngram_max));
    if (cfg.char_ngram_max > 0) emit_binary(char_ngrams(t, cfg.char_ngram_max));
    if (cfg.use_stems) emit_binary(stem_unigrams(t));
    for (const std::string& table : cfg.embedding_tables) {
        const EmbeddingTable& e = res.embedding(table);
        std::vector<double> sum = embedding_sum(t, e);
        for (std::size_t i = 0; i < sum.size(); ++i)
            emitted.emplace_back(embedding_feature_name(table, i), sum[i]);
    }
    for (const std::string& map_name : cfg.cluster_maps)
        emit_binary(cluster_presence(t, res.cluster_map(map_name)));
    if (cfg.use_twitter) emit_valued(twitter_features(t, res.textprep));
    if (cfg.use_punctuation) emit_valued(punctuation_features(t));

    if (cfg.any_domain_generalization()) {
        TokenSequence g = domain_generalize(t, res.medications, res.adr_terms);
        emit_binary(domain_ngrams(g, cfg));
    }
    if (cfg.use_adr_lexicon) emit_valued(adr_lexicon_features(t, res.adr_terms));
    if (cfg.use_pronoun_lexicon) {
        double c = pronoun_count(t, res.pronouns);
        emitted.emplace_back("pron:count", c);
    }
    for (const std::string& table : cfg.domain_embedding_tables) {
        const EmbeddingTable& e = res.embedding(table);
        std::vector<double> sum = embedding_sum(t, e);
        for (std::size_t i = 0; i < sum.size(); ++i)
            emitted.emplace_back(embedding_feature_name(table, i), sum[i]);
    }
    for (const std::string& map_name : cfg.domain_cluster_maps)
        emit_binary(cluster_presence(t, res.cluster_map(map_name)));
    for (const std::string& lex_name : cfg.sentiment_lexicons)
        emit_valued(sentiment_features(t, res.sentiment_lexicon(lex_name)));

    FeatureVector fv;
    std::unordered_set<std::uint32_t> used;
    for (const auto& [name, value] : emitted) {
        if (value == 0.0) continue;
        std::optional<std::uint32_t> id = space.intern(name);
        if (!id) continue;  // frozen space, unknown name
        if (used.insert(*id).second) fv.entries.emplace_back(*id, value);
    }
    std::sort(fv.entries.begin(), fv.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return fv;
}

}  // namespace twc
