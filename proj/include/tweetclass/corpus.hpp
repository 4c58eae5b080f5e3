#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace twc {

// One labeled (or unlabeled) tweet. `label` is absent for test data.
struct Tweet {
    std::string id;
    std::string text;
    std::optional<int> label;
};

struct Dataset {
    std::vector<Tweet> tweets;
    std::set<int> label_domain;

    std::size_t size() const { return tweets.size(); }
    bool empty() const { return tweets.empty(); }
};

struct ClassCounts {
    std::map<int, std::size_t> per_class;
    std::size_t total = 0;
};

// Reads a TSV corpus: one tweet per line, `id<TAB>label<TAB>text` when
// `labeled`, `id<TAB>text` otherwise. UTF-8, LF or CRLF. Blank lines are
// skipped. Tabs inside tweet text are assumed pre-escaped as "\t".
// Throws std::runtime_error naming the line on malformed input or a label
// outside `label_domain`.
Dataset load_tsv(const std::string& path, const std::set<int>& label_domain,
                 bool labeled);

// Drops near-duplicate tweets, keeping the first of each group. The group
// key is the text lowercased with user mentions, URLs, and punctuation
// removed and whitespace collapsed. Repeated ids are dropped the same way
// so that ids are unique afterwards.
Dataset near_duplicate_filter(const Dataset& d);

// Exposed for tests: the normalized key used by near_duplicate_filter.
std::string near_duplicate_key(const std::string& text);

// Exact per-class counts. Throws if any tweet is unlabeled.
ClassCounts class_counts(const Dataset& d);

}  // namespace twc
