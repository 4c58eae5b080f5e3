#pragma once

#include <set>
#include <string>
#include <vector>

namespace twc {

struct Token {
    std::string surface;
    bool is_negated = false;
};

struct TokenSequence {
    std::vector<Token> tokens;

    std::size_t size() const { return tokens.size(); }
    bool empty() const { return tokens.empty(); }
    const Token& operator[](std::size_t i) const { return tokens[i]; }
    Token& operator[](std::size_t i) { return tokens[i]; }
};

// Lexical resources the tokenizer and negation marker consult. The defaults
// ship with the library; files loaded via resources can override them.
struct TextPrepOptions {
    std::set<std::string> positive_emoticons;
    std::set<std::string> negative_emoticons;
    std::set<std::string> emoticons;        // union; kept whole by the tokenizer
    std::set<std::string> negators;         // besides n't-suffixed forms

    // Assigns both polarity lists and rebuilds the tokenizer union.
    void set_emoticons(std::set<std::string> positive, std::set<std::string> negative);

    static const TextPrepOptions& defaults();
};

// Built-in emoticon polarity lists (also the default tokenizer emoticons).
const std::set<std::string>& default_positive_emoticons();
const std::set<std::string>& default_negative_emoticons();

// Replaces every URL with "http://someurl" and every user mention with
// "@username"; all other characters pass through. Idempotent.
std::string normalize(const std::string& text);

// Whitespace tokenization with Twitter-aware exceptions: emoticons,
// #hashtags, @mentions, and URLs stay whole; leading/trailing punctuation
// runs split off as their own tokens. Case is preserved.
TokenSequence tokenize(const std::string& normalized_text,
                       const TextPrepOptions& opts = TextPrepOptions::defaults());

// Marks every token after a negator and before the next token containing a
// punctuation mark as negated. Negators themselves are never marked.
TokenSequence mark_negation(TokenSequence seq,
                            const std::set<std::string>& negators =
                                TextPrepOptions::defaults().negators);

// Lowercased surface with "_NEG" appended when the token sits in a negation
// scope; the rendering n-gram extractors consume.
std::string render_token(const Token& t);

std::string to_lower(const std::string& s);

}  // namespace twc
