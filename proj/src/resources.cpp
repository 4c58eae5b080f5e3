#include "tweetclass/resources.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace twc {
namespace {

std::string line_error(const std::string& path, std::size_t lineno, const std::string& what) {
    return path + ":" + std::to_string(lineno) + ": " + what;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open resource file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    if (!lines.empty() && lines[0].size() >= 3 &&
        static_cast<unsigned char>(lines[0][0]) == 0xEF &&
        static_cast<unsigned char>(lines[0][1]) == 0xBB &&
        static_cast<unsigned char>(lines[0][2]) == 0xBF) {
        lines[0].erase(0, 3);
    }
    return lines;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> parts;
    std::istringstream iss(s);
    std::string part;
    while (iss >> part) parts.push_back(part);
    return parts;
}

double parse_double(const std::string& s, const std::string& path, std::size_t lineno) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error(line_error(path, lineno, "not a number: '" + s + "'"));
    return v;
}

bool is_integer_field(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace

void TermLexicon::add(const std::string& entry) {
    std::vector<std::string> tokens = split_ws(to_lower(entry));
    if (tokens.empty()) return;
    if (!entries_.emplace(tokens, true).second) return;  // duplicate
    auto& bucket = by_first_[tokens.front()];
    bucket.push_back(tokens);
    std::sort(bucket.begin(), bucket.end(),
              [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return a < b;
              });
}

bool TermLexicon::contains_token(const std::string& lowercased) const {
    auto it = by_first_.find(lowercased);
    if (it == by_first_.end()) return false;
    for (const auto& entry : it->second)
        if (entry.size() == 1) return true;
    return false;
}

const std::vector<std::vector<std::string>>* TermLexicon::entries_starting_with(
    const std::string& first_token) const {
    auto it = by_first_.find(first_token);
    return it == by_first_.end() ? nullptr : &it->second;
}

std::pair<bool, double> ScoredLexicon::lookup(const std::string& lowercased) const {
    auto it = scores.find(lowercased);
    if (it == scores.end()) return {false, 0.0};
    return {true, it->second};
}

const std::vector<double>* EmbeddingTable::lookup(const std::string& lowercased) const {
    auto it = vectors.find(lowercased);
    return it == vectors.end() ? nullptr : &it->second;
}

const std::string* ClusterMap::lookup(const std::string& lowercased) const {
    auto it = cluster_of.find(lowercased);
    return it == cluster_of.end() ? nullptr : &it->second;
}

TermLexicon load_term_lexicon(const std::string& path, const std::string& name) {
    TermLexicon lex(name);
    for (const std::string& line : read_lines(path)) {
        std::string trimmed = line;
        // strip surrounding whitespace
        while (!trimmed.empty() && (trimmed.back() == ' ' || trimmed.back() == '\t'))
            trimmed.pop_back();
        std::size_t start = trimmed.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        lex.add(trimmed.substr(start));
    }
    return lex;
}

ScoredLexicon load_scored_lexicon(const std::string& path, const std::string& name) {
    ScoredLexicon lex;
    lex.name = name;
    std::vector<std::string> lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error(line_error(path, i + 1, "expected term<TAB>score"));
        std::string term = to_lower(line.substr(0, tab));
        if (term.empty())
            throw std::runtime_error(line_error(path, i + 1, "empty term"));
        lex.scores[term] = parse_double(line.substr(tab + 1), path, i + 1);
    }
    return lex;
}

EmbeddingTable load_embeddings(const std::string& path, const std::string& name) {
    EmbeddingTable table;
    table.name = name;
    std::vector<std::string> lines = read_lines(path);
    std::size_t first = 0;
    if (!lines.empty()) {
        std::vector<std::string> fields = split_ws(lines[0]);
        if (fields.size() == 2 && is_integer_field(fields[0]) && is_integer_field(fields[1]))
            first = 1;  // word2vec-style count/dim header
    }
    for (std::size_t i = first; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        std::vector<std::string> fields = split_ws(lines[i]);
        if (fields.size() < 2)
            throw std::runtime_error(line_error(path, i + 1, "expected term v1 .. vd"));
        std::string term = to_lower(fields[0]);
        std::vector<double> vec;
        vec.reserve(fields.size() - 1);
        for (std::size_t f = 1; f < fields.size(); ++f)
            vec.push_back(parse_double(fields[f], path, i + 1));
        if (table.dim == 0) {
            table.dim = vec.size();
        } else if (vec.size() != table.dim) {
            throw std::runtime_error(line_error(
                path, i + 1,
                "dimension mismatch: expected " + std::to_string(table.dim) + " values, got " +
                    std::to_string(vec.size())));
        }
        table.vectors[term] = std::move(vec);  // later duplicates override
    }
    return table;
}

ClusterMap load_clusters(const std::string& path, const std::string& name) {
    ClusterMap map;
    map.name = name;
    std::vector<std::string> lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty()) continue;
        std::size_t tab1 = line.find('\t');
        if (tab1 == std::string::npos)
            throw std::runtime_error(line_error(path, i + 1, "expected cluster<TAB>term"));
        std::string cluster = line.substr(0, tab1);
        std::string rest = line.substr(tab1 + 1);
        std::size_t tab2 = rest.find('\t');
        std::string term = tab2 == std::string::npos ? rest : rest.substr(0, tab2);
        term = to_lower(term);
        if (cluster.empty() || term.empty())
            throw std::runtime_error(line_error(path, i + 1, "empty cluster id or term"));
        auto [it, inserted] = map.cluster_of.emplace(term, cluster);
        if (!inserted && it->second != cluster)
            throw std::runtime_error(line_error(
                path, i + 1, "term '" + term + "' mapped to clusters '" + it->second +
                                 "' and '" + cluster + "'"));
    }
    return map;
}

std::vector<Span> match_phrases(const TokenSequence& t, const TermLexicon& lex) {
    std::vector<Span> spans;
    std::vector<std::string> lowered;
    lowered.reserve(t.tokens.size());
    for (const Token& tok : t.tokens) lowered.push_back(to_lower(tok.surface));

    std::size_t i = 0;
    while (i < lowered.size()) {
        const auto* candidates = lex.entries_starting_with(lowered[i]);
        std::size_t matched = 0;
        if (candidates) {
            for (const auto& entry : *candidates) {  // longest first
                if (entry.size() > lowered.size() - i) continue;
                bool ok = true;
                for (std::size_t k = 1; k < entry.size(); ++k) {
                    if (entry[k] != lowered[i + k]) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    matched = entry.size();
                    break;
                }
            }
        }
        if (matched > 0) {
            spans.push_back({i, matched});
            i += matched;
        } else {
            ++i;
        }
    }
    return spans;
}

const EmbeddingTable& ResourceBundle::embedding(const std::string& name) const {
    auto it = embeddings.find(name);
    if (it == embeddings.end())
        throw std::runtime_error("unknown embedding table: " + name);
    return it->second;
}

const ClusterMap& ResourceBundle::cluster_map(const std::string& name) const {
    auto it = clusters.find(name);
    if (it == clusters.end())
        throw std::runtime_error("unknown cluster map: " + name);
    return it->second;
}

const ScoredLexicon& ResourceBundle::sentiment_lexicon(const std::string& name) const {
    auto it = sentiment.find(name);
    if (it == sentiment.end())
        throw std::runtime_error("unknown sentiment lexicon: " + name);
    return it->second;
}

}  // namespace twc
