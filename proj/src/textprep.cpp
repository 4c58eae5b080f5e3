#include "tweetclass/textprep.hpp"

#include <cctype>

namespace twc {

namespace {

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)); }

bool iprefix(const std::string& s, std::size_t i, const char* prefix) {
    for (; *prefix; ++prefix, ++i) {
        if (i >= s.size()) return false;
        if (std::tolower(static_cast<unsigned char>(s[i])) != *prefix) return false;
    }
    return true;
}

bool starts_url(const std::string& s, std::size_t i) {
    return iprefix(s, i, "http://") || iprefix(s, i, "https://") || iprefix(s, i, "www.");
}

const char* kUrlToken = "http://someurl";
const char* kMentionToken = "@username";

bool is_hashtag(const std::string& t) {
    if (t.size() < 2 || t[0] != '#') return false;
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!is_word_char(t[i])) return false;
    return true;
}

bool is_mention(const std::string& t) {
    if (t.size() < 2 || t[0] != '@') return false;
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!is_word_char(t[i])) return false;
    return true;
}

bool is_url_token(const std::string& t) { return starts_url(t, 0); }

bool all_punct(const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
        if (!is_punct(c)) return false;
    return true;
}

// Scope-closing punctuation for negation contexts.
bool closes_negation(const std::string& token) {
    static const std::string kClosers = ".,:;!?()[]\"";
    for (char c : token)
        if (kClosers.find(c) != std::string::npos) return true;
    return false;
}

}  // namespace

const std::set<std::string>& default_positive_emoticons() {
    static const std::set<std::string> kPositive = {
        ":)",  ":-)", ":))", ":D",  ":-D", ";)",  ";-)", ":]",  "=)",  "=]",
        ":}",  ":p",  ":P",  ":-P", ":-p", "xD",  "XD",  ":3",  "8)",  "(:",
        "(-:", "=D",  "<3",  "^_^", "^-^", ":o)", ":c)", ":^)",
    };
    return kPositive;
}

const std::set<std::string>& default_negative_emoticons() {
    static const std::set<std::string> kNegative = {
        ":(",  ":-(", ":((", ";(",  "D:",  ":[",  "=(",  ":{",  ":'(", ":'-(",
        "</3", ">:(", ":/",  ":-/", ":\\", "=/",  "=[",  "T_T", ";_;", "-_-",
        "):",  ")-:", "D=",  ":c",  ":-c",
    };
    return kNegative;
}

void TextPrepOptions::set_emoticons(std::set<std::string> positive,
                                    std::set<std::string> negative) {
    positive_emoticons = std::move(positive);
    negative_emoticons = std::move(negative);
    emoticons = positive_emoticons;
    emoticons.insert(negative_emoticons.begin(), negative_emoticons.end());
}

const TextPrepOptions& TextPrepOptions::defaults() {
    static const TextPrepOptions kDefaults = [] {
        TextPrepOptions o;
        o.set_emoticons(default_positive_emoticons(), default_negative_emoticons());
        o.negators = {"not",    "no",      "never",  "none", "nothing",
                      "nobody", "nowhere", "neither", "nor",  "cannot"};
        return o;
    }();
    return kDefaults;
}

std::string to_lower(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

std::string normalize(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (starts_url(text, i)) {
            out += kUrlToken;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
                ++i;
            continue;
        }
        if (c == '@' && i + 1 < text.size() && is_word_char(text[i + 1]) &&
            (i == 0 || !is_word_char(text[i - 1]))) {
            out += kMentionToken;
            ++i;
            while (i < text.size() && is_word_char(text[i])) ++i;
            continue;
        }
        out.push_back(c);
        ++i;
    }
    return out;
}

namespace {

bool special_token(const std::string& t, const TextPrepOptions& opts) {
    return opts.emoticons.count(t) || is_hashtag(t) || is_mention(t) || is_url_token(t);
}

void emit_chunk(const std::string& chunk, const TextPrepOptions& opts,
                std::vector<Token>& out) {
    if (chunk.empty()) return;
    if (special_token(chunk, opts)) {
        out.push_back({chunk, false});
        return;
    }
    if (all_punct(chunk)) {
        out.push_back({chunk, false});
        return;
    }
    // Trailing punctuation run first, so "#win!!" keeps its hashtag.
    std::size_t trail = 0;
    while (trail < chunk.size() && is_punct(chunk[chunk.size() - 1 - trail])) ++trail;
    if (trail > 0) {
        emit_chunk(chunk.substr(0, chunk.size() - trail), opts, out);
        out.push_back({chunk.substr(chunk.size() - trail), false});
        return;
    }
    std::size_t lead = 0;
    while (lead < chunk.size() && is_punct(chunk[lead])) ++lead;
    if (lead > 0) {
        // Prefer the shortest punctuation prefix whose remainder is special,
        // so "(#win" yields "(" + "#win" rather than "(#" + "win".
        for (std::size_t j = 1; j <= lead; ++j) {
            if (special_token(chunk.substr(j), opts)) {
                out.push_back({chunk.substr(0, j), false});
                out.push_back({chunk.substr(j), false});
                return;
            }
        }
        out.push_back({chunk.substr(0, lead), false});
        emit_chunk(chunk.substr(lead), opts, out);
        return;
    }
    out.push_back({chunk, false});
}

}  // namespace

TokenSequence tokenize(const std::string& text, const TextPrepOptions& opts) {
    TokenSequence seq;
    std::string chunk;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        bool boundary = i == text.size() ||
                        std::isspace(static_cast<unsigned char>(text[i]));
        if (boundary) {
            emit_chunk(chunk, opts, seq.tokens);
            chunk.clear();
        } else {
            chunk.push_back(text[i]);
        }
    }
    return seq;
}

namespace {

bool is_negator(const std::string& token, const std::set<std::string>& negators) {
    std::string lower = to_lower(token);
    if (negators.count(lower)) return true;
    return lower.size() > 3 && lower.compare(lower.size() - 3, 3, "n't") == 0;
}

}  // namespace

TokenSequence mark_negation(TokenSequence seq, const std::set<std::string>& negators) {
    bool in_scope = false;
    for (Token& t : seq.tokens) {
        if (closes_negation(t.surface)) {
            in_scope = false;
            continue;
        }
        bool negator = is_negator(t.surface, negators);
        if (in_scope && !negator) t.is_negated = true;
        if (negator) in_scope = true;
    }
    return seq;
}

std::string render_token(const Token& t) {
    // Generalization placeholders keep their canonical uppercase form.
    std::string out = (t.surface == "<MED>" || t.surface == "<ADR>")
                          ? t.surface
                          : to_lower(t.surface);
    if (t.is_negated) out += "_NEG";
    return out;
}

}  // namespace twc
