#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "tweetclass/config.hpp"
#include "tweetclass/resources.hpp"
#include "tweetclass/textprep.hpp"

using namespace twc;
using namespace twc::test;

TEST_CASE("term lexicon: add, dedup, lookup") {
    TermLexicon lex("test");
    lex.add("Headache");
    lex.add("headache");  // duplicate after lowercasing
    lex.add("dry mouth");
    lex.add("dry  mouth");  // duplicate after whitespace splitting
    lex.add("dry mouth syndrome");
    lex.add("");  // ignored
    lex.add("   ");

    CHECK(lex.contains_token("headache"));
    CHECK_FALSE(lex.contains_token("dry"));       // only multi-token entries start with "dry"
    CHECK_FALSE(lex.contains_token("mouth"));     // not a first token at all
    CHECK_FALSE(lex.contains_token("HEADACHE"));  // caller must lowercase

    const auto* dry = lex.entries_starting_with("dry");
    REQUIRE(dry != nullptr);
    REQUIRE(dry->size() == 2);
    // Longest first so greedy phrase matching prefers the longer span.
    CHECK((*dry)[0] == std::vector<std::string>{"dry", "mouth", "syndrome"});
    CHECK((*dry)[1] == std::vector<std::string>{"dry", "mouth"});
    CHECK(lex.entries_starting_with("mouth") == nullptr);
}

TEST_CASE("term lexicon loads from file with trimming and lowercasing") {
    TempDir tmp("resources");
    std::string path = tmp.path("terms.txt");
    write_text(path, "  Headache  \n\nDRY MOUTH\nheadache\n\t\n");
    TermLexicon lex = load_term_lexicon(path, "terms");
    CHECK(lex.name() == "terms");
    CHECK(lex.contains_token("headache"));
    const auto* dry = lex.entries_starting_with("dry");
    REQUIRE(dry != nullptr);
    CHECK(dry->size() == 1);
}

TEST_CASE("term lexicon: missing file names the path") {
    CHECK_THROWS_WITH_AS(load_term_lexicon("/nonexistent/terms.txt", "x"),
                         doctest::Contains("/nonexistent/terms.txt"), std::runtime_error);
}

TEST_CASE("scored lexicon: parse, lowercase, later entries override") {
    TempDir tmp("resources");
    std::string path = tmp.path("sent.tsv");
    write_text(path, "Good\t1.5\nbad\t-2\ngood\t0.25\n\n:)\t1.8\n");
    ScoredLexicon lex = load_scored_lexicon(path, "sent");
    CHECK(lex.name == "sent");
    auto [ok1, v1] = lex.lookup("good");
    CHECK(ok1);
    CHECK(v1 == doctest::Approx(0.25));  // last occurrence wins
    auto [ok2, v2] = lex.lookup("bad");
    CHECK(ok2);
    CHECK(v2 == doctest::Approx(-2.0));
    auto [ok3, v3] = lex.lookup(":)");
    CHECK(ok3);
    CHECK(v3 == doctest::Approx(1.8));
    auto [ok4, v4] = lex.lookup("missing");
    CHECK_FALSE(ok4);
    CHECK(v4 == 0.0);
}

TEST_CASE("scored lexicon: format errors carry path and line number") {
    TempDir tmp("resources");
    std::string path = tmp.path("bad.tsv");

    SUBCASE("missing tab") {
        write_text(path, "good\t1\nno-tab-here\n");
        CHECK_THROWS_WITH_AS(load_scored_lexicon(path, "bad"), doctest::Contains(":2:"),
                             std::runtime_error);
    }
    SUBCASE("empty term") {
        write_text(path, "\t1.0\n");
        CHECK_THROWS_WITH_AS(load_scored_lexicon(path, "bad"), doctest::Contains("empty term"),
                             std::runtime_error);
    }
    SUBCASE("non-numeric score") {
        write_text(path, "good\tone\n");
        CHECK_THROWS_WITH_AS(load_scored_lexicon(path, "bad"), doctest::Contains("not a number"),
                             std::runtime_error);
    }
}

TEST_CASE("embeddings: word2vec-style count/dim header is skipped") {
    TempDir tmp("resources");
    std::string path = tmp.path("emb.vec");
    write_text(path, "2 3\nCat 1 2 3\ndog 0.5 -0.5 0\n");
    EmbeddingTable tab = load_embeddings(path, "emb");
    CHECK(tab.dim == 3);
    CHECK(tab.vectors.size() == 2);
    const auto* cat = tab.lookup("cat");  // terms lowercased
    REQUIRE(cat != nullptr);
    CHECK((*cat)[0] == doctest::Approx(1.0));
    CHECK(tab.lookup("Cat") == nullptr);
}

TEST_CASE("embeddings: header-less files work and duplicates override") {
    TempDir tmp("resources");
    std::string path = tmp.path("emb.vec");
    write_text(path, "cat 1 2\ndog 3 4\ncat 9 9\n");
    EmbeddingTable tab = load_embeddings(path, "emb");
    CHECK(tab.dim == 2);
    CHECK(tab.vectors.size() == 2);
    const auto* cat = tab.lookup("cat");
    REQUIRE(cat != nullptr);
    CHECK((*cat)[0] == doctest::Approx(9.0));
}

TEST_CASE("embeddings: dimension mismatch raises with line number") {
    TempDir tmp("resources");
    std::string path = tmp.path("emb.vec");
    write_text(path, "cat 1 2 3\ndog 1 2\n");
    CHECK_THROWS_WITH_AS(load_embeddings(path, "emb"), doctest::Contains("dimension mismatch"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(load_embeddings(path, "emb"), doctest::Contains(":2:"),
                         std::runtime_error);
}

TEST_CASE("embeddings: a first line that is not exactly two integers is data") {
    TempDir tmp("resources");
    std::string path = tmp.path("emb.vec");
    // Looks vaguely header-ish but the second field is a float: must be parsed as a row.
    write_text(path, "7 1.5\ncat 2 2\n");
    CHECK_THROWS_AS(load_embeddings(path, "emb"), std::runtime_error);  // dim 1 vs dim 2
    write_text(path, "up 1\ndown -1\n");
    EmbeddingTable tab = load_embeddings(path, "emb");
    CHECK(tab.dim == 1);
    CHECK(tab.vectors.count("up") == 1);
}

TEST_CASE("clusters: one term per line, optional trailing count column ignored") {
    TempDir tmp("resources");
    std::string path = tmp.path("clusters.tsv");
    write_text(path, "0110\tHeadache\t42\n0110\tmigraine\n100\thappy\n");
    ClusterMap map = load_clusters(path, "brown");
    CHECK(map.name == "brown");
    REQUIRE(map.lookup("headache") != nullptr);
    CHECK(*map.lookup("headache") == "0110");
    REQUIRE(map.lookup("migraine") != nullptr);
    CHECK(*map.lookup("migraine") == "0110");
    REQUIRE(map.lookup("happy") != nullptr);
    CHECK(*map.lookup("happy") == "100");
    CHECK(map.lookup("42") == nullptr);  // count column is not a term
    CHECK(map.lookup("unknown") == nullptr);
}

TEST_CASE("clusters: repeated identical mapping ok, conflicting mapping rejected") {
    TempDir tmp("resources");
    std::string path = tmp.path("clusters.tsv");
    write_text(path, "01\tword\n01\tword\n");
    ClusterMap map = load_clusters(path, "m");
    CHECK(*map.lookup("word") == "01");

    write_text(path, "01\tword\n10\tword\n");
    CHECK_THROWS_WITH_AS(load_clusters(path, "m"),
                         doctest::Contains("mapped to clusters '01' and '10'"),
                         std::runtime_error);
}

TEST_CASE("clusters: malformed lines rejected") {
    TempDir tmp("resources");
    std::string path = tmp.path("clusters.tsv");
    write_text(path, "no-tab-line\n");
    CHECK_THROWS_WITH_AS(load_clusters(path, "m"), doctest::Contains("expected cluster<TAB>term"),
                         std::runtime_error);
    write_text(path, "\tterm\n");
    CHECK_THROWS_AS(load_clusters(path, "m"), std::runtime_error);
    write_text(path, "01\t\n");
    CHECK_THROWS_AS(load_clusters(path, "m"), std::runtime_error);
}

namespace {

TokenSequence seq(const std::vector<std::string>& words) {
    TokenSequence t;
    for (const auto& w : words) {
        Token tok;
        tok.surface = w;
        t.tokens.push_back(tok);
    }
    return t;
}

}  // namespace

TEST_CASE("match_phrases: leftmost-longest, non-overlapping, case-insensitive") {
    TermLexicon lex("adr");
    lex.add("dry mouth");
    lex.add("dry mouth syndrome");
    lex.add("mouth");
    lex.add("loss of appetite");

    SUBCASE("longest entry wins at a position") {
        auto spans = match_phrases(seq({"Dry", "Mouth", "Syndrome", "again"}), lex);
        REQUIRE(spans.size() == 1);
        CHECK(spans[0].start == 0);
        CHECK(spans[0].length == 3);
    }
    SUBCASE("after a match, scanning resumes past it") {
        auto spans = match_phrases(seq({"dry", "mouth", "mouth"}), lex);
        REQUIRE(spans.size() == 2);
        CHECK(spans[0].start == 0);
        CHECK(spans[0].length == 2);
        CHECK(spans[1].start == 2);
        CHECK(spans[1].length == 1);
    }
    SUBCASE("three-token phrase at the end") {
        auto spans = match_phrases(seq({"total", "loss", "of", "appetite"}), lex);
        REQUIRE(spans.size() == 1);
        CHECK(spans[0].start == 1);
        CHECK(spans[0].length == 3);
    }
    SUBCASE("partial phrase does not match") {
        auto spans = match_phrases(seq({"loss", "of", "hope"}), lex);
        CHECK(spans.empty());
    }
    SUBCASE("empty sequence") {
        CHECK(match_phrases(seq({}), lex).empty());
    }
}

TEST_CASE("resource bundle accessors throw for unknown names") {
    ResourceBundle res;
    CHECK_THROWS_WITH_AS(res.embedding("nope"), doctest::Contains("unknown embedding table"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(res.cluster_map("nope"), doctest::Contains("unknown cluster map"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(res.sentiment_lexicon("nope"),
                         doctest::Contains("unknown sentiment lexicon"), std::runtime_error);
}

TEST_CASE("load_resources assembles the full fixture bundle") {
    ResourceBundle res = full_fixture_bundle();

    CHECK(res.medications.contains_token("seroquel"));
    CHECK(res.adr_terms.contains_token("headache"));
    CHECK_FALSE(res.adr_terms.contains_token("dry"));  // multi-token entry only
    CHECK(res.pronouns.contains_token("i"));

    // Negators come from the fixture file, which adds "nope" beyond the defaults.
    CHECK(res.textprep.negators.count("nope") == 1);
    CHECK(res.textprep.negators.count("not") == 1);

    CHECK(res.embedding("word2vec").dim == 4);
    CHECK(res.embedding("conceptnet").dim == 3);
    CHECK(res.embedding("domain_word2vec").dim == 3);
    REQUIRE(res.cluster_map("brown").lookup("headache") != nullptr);
    CHECK(*res.cluster_map("brown").lookup("headache") == "0110");
    REQUIRE(res.cluster_map("domain_kmeans").lookup("mouth") != nullptr);
    CHECK(*res.cluster_map("domain_kmeans").lookup("mouth") == "d01");
    auto [ok, v] = res.sentiment_lexicon("hu_liu").lookup("hope");
    CHECK(ok);
    CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("load_resources loads only what the feature config needs") {
    FeatureConfig cfg;  // defaults: no domain features, no lexicon features
    cfg.word_ngram_max = 3;
    ResourcePaths paths = ResourcePaths::in_dir(fixture_resources_dir());
    ResourceBundle res = load_resources(paths, cfg);
    CHECK_FALSE(res.medications.contains_token("seroquel"));
    CHECK(res.embeddings.empty());
    CHECK(res.clusters.empty());
    CHECK(res.sentiment.empty());
    // Optional text-prep files still load when present.
    CHECK(res.textprep.negators.count("nope") == 1);
}

TEST_CASE("load_resources reports which required file is missing") {
    TempDir tmp("resources");  // empty directory: nothing exists
    FeatureConfig cfg;
    cfg.use_adr_lexicon = true;
    ResourcePaths paths = ResourcePaths::in_dir(tmp.dir());
    CHECK_THROWS_WITH_AS(load_resources(paths, cfg), doctest::Contains("adr_terms.txt"),
                         std::runtime_error);

    FeatureConfig cfg2;
    cfg2.embedding_tables = {"word2vec"};
    CHECK_THROWS_WITH_AS(load_resources(paths, cfg2),
                         doctest::Contains("embedding table 'word2vec'"), std::runtime_error);

    FeatureConfig cfg3;
    cfg3.sentiment_lexicons = {"hu_liu"};
    CHECK_THROWS_WITH_AS(load_resources(paths, cfg3),
                         doctest::Contains("sentiment lexicon 'hu_liu'"), std::runtime_error);
}
