#include "tweetclass/porter.hpp"

#include <cctype>

// Porter stemming algorithm. Conditions (measure m, *v*, *d, *o) are
// evaluated on the stem that remains after the candidate suffix is removed.
// Within a step the longest matching suffix wins; if its condition fails no
// other rule in that step is tried.

namespace twc {
namespace {

// True when word[i] is a consonant. 'y' counts as a consonant at the start
// of the word or after a vowel, and as a vowel after a consonant.
bool cons(const std::string& w, int i) {
    char c = w[static_cast<size_t>(i)];
    switch (c) {
        case 'a': case 'e': case 'i': case 'o': case 'u': return false;
        case 'y': return i == 0 ? true : !cons(w, i - 1);
        default: return true;
    }
}

// Measure of w[0..j]: the m in [C](VC)^m[V].
int measure(const std::string& w, int j) {
    int n = 0;
    int i = 0;
    while (true) {
        if (i > j) return n;
        if (!cons(w, i)) break;
        ++i;
    }
    ++i;
    while (true) {
        while (true) {
            if (i > j) return n;
            if (cons(w, i)) break;
            ++i;
        }
        ++i;
        ++n;
        while (true) {
            if (i > j) return n;
            if (!cons(w, i)) break;
            ++i;
        }
        ++i;
    }
}

// *v*: w[0..j] contains a vowel.
bool vowel_in_stem(const std::string& w, int j) {
    for (int i = 0; i <= j; ++i)
        if (!cons(w, i)) return true;
    return false;
}

// *d: w ends at index j with a double consonant.
bool double_cons(const std::string& w, int j) {
    if (j < 1) return false;
    if (w[static_cast<size_t>(j)] != w[static_cast<size_t>(j - 1)]) return false;
    return cons(w, j);
}

// *o: w[0..j] ends consonant-vowel-consonant where the final consonant is
// not w, x or y.
bool cvc(const std::string& w, int j) {
    if (j < 2 || !cons(w, j) || cons(w, j - 1) || !cons(w, j - 2)) return false;
    char c = w[static_cast<size_t>(j)];
    return c != 'w' && c != 'x' && c != 'y';
}

bool ends_with(const std::string& w, const char* s) {
    size_t n = 0;
    while (s[n] != '\0') ++n;
    if (n > w.size()) return false;
    return w.compare(w.size() - n, n, s) == 0;
}

// Index of the last character of the stem once `suffix` is removed.
int stem_end(const std::string& w, const char* suffix) {
    size_t n = 0;
    while (suffix[n] != '\0') ++n;
    return static_cast<int>(w.size() - n) - 1;
}

void replace_suffix(std::string& w, const char* suffix, const char* repl) {
    size_t n = 0;
    while (suffix[n] != '\0') ++n;
    w.resize(w.size() - n);
    w += repl;
}

struct Rule {
    const char* suffix;
    const char* repl;
};

// Applies the first (longest-listed) matching rule whose stem measure
// exceeds min_m. Returns true when a suffix matched, regardless of whether
// the measure condition allowed the replacement.
bool apply_rules(std::string& w, const Rule* rules, size_t count, int min_m) {
    for (size_t r = 0; r < count; ++r) {
        if (!ends_with(w, rules[r].suffix)) continue;
        int j = stem_end(w, rules[r].suffix);
        if (j >= 0 && measure(w, j) > min_m)
            replace_suffix(w, rules[r].suffix, rules[r].repl);
        return true;
    }
    return false;
}

void step1a(std::string& w) {
    if (w.back() != 's') return;
    if (ends_with(w, "sses")) {
        w.resize(w.size() - 2);
    } else if (ends_with(w, "ies")) {
        replace_suffix(w, "ies", "i");
    } else if (w.size() >= 2 && w[w.size() - 2] != 's') {
        w.pop_back();
    }
}

void step1b(std::string& w) {
    if (ends_with(w, "eed")) {
        int j = stem_end(w, "eed");
        if (j >= 0 && measure(w, j) > 0) w.pop_back();
        return;
    }
    bool fired = false;
    if (ends_with(w, "ed")) {
        int j = stem_end(w, "ed");
        if (j >= 0 && vowel_in_stem(w, j)) {
            w.resize(static_cast<size_t>(j) + 1);
            fired = true;
        }
    } else if (ends_with(w, "ing")) {
        int j = stem_end(w, "ing");
        if (j >= 0 && vowel_in_stem(w, j)) {
            w.resize(static_cast<size_t>(j) + 1);
            fired = true;
        }
    }
    if (!fired) return;
    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
        w += 'e';
    } else if (double_cons(w, static_cast<int>(w.size()) - 1)) {
        char c = w.back();
        if (c != 'l' && c != 's' && c != 'z') w.pop_back();
    } else if (measure(w, static_cast<int>(w.size()) - 1) == 1 &&
               cvc(w, static_cast<int>(w.size()) - 1)) {
        w += 'e';
    }
}

void step1c(std::string& w) {
    if (w.back() != 'y') return;
    int j = static_cast<int>(w.size()) - 2;
    if (j >= 0 && vowel_in_stem(w, j)) w.back() = 'i';
}

void step2(std::string& w) {
    static const Rule rules[] = {
        {"ational", "ate"}, {"ization", "ize"}, {"iveness", "ive"},
        {"fulness", "ful"}, {"ousness", "ous"}, {"tional", "tion"},
        {"biliti", "ble"},  {"entli", "ent"},   {"ousli", "ous"},
        {"ation", "ate"},   {"alism", "al"},    {"aliti", "al"},
        {"iviti", "ive"},   {"enci", "ence"},   {"anci", "ance"},
        {"izer", "ize"},    {"alli", "al"},     {"ator", "ate"},
        {"logi", "log"},    {"bli", "ble"},     {"eli", "e"},
    };
    apply_rules(w, rules, sizeof(rules) / sizeof(rules[0]), 0);
}

void step3(std::string& w) {
    static const Rule rules[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ness", ""},  {"ful", ""},
    };
    apply_rules(w, rules, sizeof(rules) / sizeof(rules[0]), 0);
}

void step4(std::string& w) {
    static const Rule rules[] = {
        {"ement", ""}, {"ance", ""}, {"ence", ""}, {"able", ""},
        {"ible", ""},  {"ment", ""}, {"ant", ""},  {"ent", ""},
        {"ism", ""},   {"ate", ""},  {"iti", ""},  {"ous", ""},
        {"ive", ""},   {"ize", ""},  {"ion", ""},  {"al", ""},
        {"er", ""},    {"ic", ""},   {"ou", ""},
    };
    for (const Rule& r : rules) {
        if (!ends_with(w, r.suffix)) continue;
        int j = stem_end(w, r.suffix);
        if (j < 0) return;
        bool ok = measure(w, j) > 1;
        if (ok && ends_with(w, "ion")) {
            char c = w[static_cast<size_t>(j)];
            ok = (c == 's' || c == 't');
        }
        if (ok) replace_suffix(w, r.suffix, r.repl);
        return;
    }
}

void step5a(std::string& w) {
    if (w.back() != 'e') return;
    int j = static_cast<int>(w.size()) - 2;
    if (j < 0) return;
    int m = measure(w, j);
    if (m > 1 || (m == 1 && !cvc(w, j))) w.pop_back();
}

void step5b(std::string& w) {
    int k = static_cast<int>(w.size()) - 1;
    if (w[static_cast<size_t>(k)] == 'l' && double_cons(w, k) && measure(w, k) > 1)
        w.pop_back();
}

}  // namespace

std::string porter_stem(const std::string& token) {
    std::string w;
    w.reserve(token.size());
    for (char c : token) {
        unsigned char u = static_cast<unsigned char>(c);
        if (u >= 'A' && u <= 'Z') {
            w += static_cast<char>(u - 'A' + 'a');
        } else if (u >= 'a' && u <= 'z') {
            w += c;
        } else {
            return token;  // only pure ASCII-letter tokens are stemmed
        }
    }
    if (w.size() <= 2) return w;
    step1a(w);
    step1b(w);
    step1c(w);
    step2(w);
    step3(w);
    step4(w);
    step5a(w);
    step5b(w);
    return w;
}

}  // namespace twc
