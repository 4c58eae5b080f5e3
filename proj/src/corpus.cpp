#include "tweetclass/corpus.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

namespace twc {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void line_error(const std::string& path, std::size_t lineno,
                             const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + what);
}

int parse_label(const std::string& field, const std::string& path, std::size_t lineno) {
    int value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        line_error(path, lineno, "unparseable label '" + field + "'");
    return value;
}

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool starts_url(const std::string& s, std::size_t i) {
    static const std::string kHttp = "http://", kHttps = "https://", kWww = "www.";
    auto matches = [&](const std::string& prefix) {
        if (i + prefix.size() > s.size()) return false;
        for (std::size_t k = 0; k < prefix.size(); ++k)
            if (std::tolower(static_cast<unsigned char>(s[i + k])) != prefix[k])
                return false;
        return true;
    };
    return matches(kHttp) || matches(kHttps) || matches(kWww);
}

}  // namespace

Dataset load_tsv(const std::string& path, const std::set<int>& label_domain,
                 bool labeled) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);

    Dataset out;
    out.label_domain = label_domain;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lineno == 1 && line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' &&
            line[2] == '\xBF')
            line.erase(0, 3);
        if (trim(line).empty()) continue;

        std::size_t tab1 = line.find('\t');
        if (tab1 == std::string::npos)
            line_error(path, lineno, "expected tab-separated fields");

        Tweet t;
        t.id = line.substr(0, tab1);
        if (t.id.empty()) line_error(path, lineno, "empty id");

        if (labeled) {
            std::size_t tab2 = line.find('\t', tab1 + 1);
            if (tab2 == std::string::npos)
                line_error(path, lineno, "expected id<TAB>label<TAB>text");
            int label = parse_label(line.substr(tab1 + 1, tab2 - tab1 - 1), path, lineno);
            if (!label_domain.empty() && !label_domain.count(label))
                line_error(path, lineno,
                           "label " + std::to_string(label) + " outside label domain");
            t.label = label;
            t.text = line.substr(tab2 + 1);
        } else {
            t.text = line.substr(tab1 + 1);
        }
        if (trim(t.text).empty()) line_error(path, lineno, "empty tweet text");
        out.tweets.push_back(std::move(t));
    }
    return out;
}

std::string near_duplicate_key(const std::string& text) {
    std::string key;
    key.reserve(text.size());
    bool pending_space = false;
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (starts_url(text, i)) {
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
                ++i;
            continue;
        }
        if (c == '@' && i + 1 < text.size() && is_word_char(text[i + 1]) &&
            (i == 0 || !is_word_char(text[i - 1]))) {
            ++i;
            while (i < text.size() && is_word_char(text[i])) ++i;
            continue;
        }
        if (std::isspace(c)) {
            pending_space = true;
            ++i;
            continue;
        }
        if (std::ispunct(c)) {
            ++i;
            continue;
        }
        if (pending_space && !key.empty()) key.push_back(' ');
        pending_space = false;
        key.push_back(static_cast<char>(std::tolower(c)));
        ++i;
    }
    return key;
}

Dataset near_duplicate_filter(const Dataset& d) {
    Dataset out;
    out.label_domain = d.label_domain;
    std::unordered_set<std::string> seen_keys;
    std::unordered_set<std::string> seen_ids;
    for (const Tweet& t : d.tweets) {
        if (!seen_ids.insert(t.id).second) continue;
        if (!seen_keys.insert(near_duplicate_key(t.text)).second) continue;
        out.tweets.push_back(t);
    }
    return out;
}

ClassCounts class_counts(const Dataset& d) {
    ClassCounts cc;
    for (const Tweet& t : d.tweets) {
        if (!t.label)
            throw std::runtime_error("class_counts: unlabeled tweet '" + t.id + "'");
        ++cc.per_class[*t.label];
        ++cc.total;
    }
    return cc;
}

}  // namespace twc
