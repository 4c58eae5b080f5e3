#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "tweetclass/features.hpp"
#include "tweetclass/resources.hpp"
#include "tweetclass/textprep.hpp"

using namespace twc;
using namespace twc::test;

namespace {

Tweet tw(const std::string& text) { return Tweet{"t", text, std::nullopt}; }

// (name, value) view of an extracted vector for readable assertions.
std::map<std::string, double> named(const FeatureVector& fv, const FeatureSpace& space) {
    std::map<std::string, double> out;
    for (const auto& [id, v] : fv.entries) out[space.name_of(id)] = v;
    return out;
}

const ResourceBundle& bundle() {
    static ResourceBundle res = full_fixture_bundle();
    return res;
}

}  // namespace

TEST_CASE("word n-grams: unigrams first, then higher orders, deduplicated") {
    auto grams = word_ngrams(toks({"a", "b", "c"}), 2);
    CHECK(grams == std::vector<std::string>{"a", "b", "c", "a b", "b c"});

    CHECK(word_ngrams(toks({"a", "a", "a"}), 2) == std::vector<std::string>{"a", "a a"});
    CHECK(word_ngrams(toks({"a", "b"}), 5) == std::vector<std::string>{"a", "b", "a b"});
    CHECK(word_ngrams(toks({}), 3).empty());
    CHECK(word_ngrams(toks({"a", "b"}), 0).empty());
}

TEST_CASE("word n-grams use rendered tokens (negation suffix shows up)") {
    TokenSequence t = toks({"not", "good"});
    t.tokens[1].is_negated = true;
    CHECK(word_ngrams(t, 2) ==
          std::vector<std::string>{"not", "good_NEG", "not good_NEG"});
}

TEST_CASE("non-contiguous n-grams replace one interior token with *") {
    CHECK(noncontig_ngrams(toks({"a", "b", "c"}), 3) == std::vector<std::string>{"a * c"});

    auto grams4 = noncontig_ngrams(toks({"a", "b", "c", "d"}), 4);
    CHECK(grams4 == std::vector<std::string>{"a * c", "b * d", "a * c d", "a b * d"});

    // Below the minimum order or length: nothing.
    CHECK(noncontig_ngrams(toks({"a", "b"}), 5).empty());
    CHECK(noncontig_ngrams(toks({"a", "b", "c", "d"}), 2).empty());

    // Duplicates collapse ("a b a b": "a * a" appears twice).
    auto grams = noncontig_ngrams(toks({"a", "b", "a", "b", "a"}), 3);
    CHECK(std::count(grams.begin(), grams.end(), "a * a") == 1);
}

TEST_CASE("char n-grams stay within tokens and lowercase") {
    CHECK(char_ngrams(toks({"ab"}), 2) == std::vector<std::string>{"c:a", "c:b", "c:ab"});
    CHECK(char_ngrams(toks({"AB"}), 2) == std::vector<std::string>{"c:a", "c:b", "c:ab"});

    // No gram spans the token boundary.
    auto grams = as_set(char_ngrams(toks({"ab", "cd"}), 2));
    CHECK(grams.count("c:bc") == 0);
    CHECK(grams.count("c:ab") == 1);
    CHECK(grams.count("c:cd") == 1);

    // Negation flags do not leak into character grams (surface only).
    TokenSequence t = toks({"bad"});
    t.tokens[0].is_negated = true;
    auto neg_grams = as_set(char_ngrams(t, 3));
    CHECK(neg_grams.count("c:bad") == 1);
    CHECK(neg_grams.count("c:bad_NEG") == 0);

    CHECK(char_ngrams(toks({"abc"}), 0).empty());
}

TEST_CASE("stem unigrams: stemmed, prefixed, deduplicated, surface-based") {
    CHECK(stem_unigrams(toks({"running", "runs"})) == std::vector<std::string>{"s:run"});
    CHECK(stem_unigrams(toks({"Happy", "happiness"})) ==
          std::vector<std::string>{"s:happi"});

    TokenSequence t = toks({"troubled"});
    t.tokens[0].is_negated = true;  // stems ignore negation marking
    CHECK(stem_unigrams(t) == std::vector<std::string>{"s:troubl"});
}

TEST_CASE("cluster presence is binary per cluster id") {
    const ClusterMap& brown = bundle().cluster_map("brown");
    // headache and migraine share cluster 0110; the feature appears once.
    CHECK(cluster_presence(toks({"Headache", "migraine", "unknownword"}), brown) ==
          std::vector<std::string>{"cl:0110"});
    CHECK(cluster_presence(toks({"no", "hits", "here"}), brown).empty());
    CHECK(cluster_presence(toks({"seroquel", "headache"}), brown) ==
          std::vector<std::string>{"cl:1100", "cl:0110"});
}

TEST_CASE("embedding sum adds in-vocabulary vectors, ignores OOV") {
    const EmbeddingTable& emb = bundle().embedding("word2vec");
    REQUIRE(emb.dim == 4);

    const std::vector<double>* seroquel = emb.lookup("seroquel");
    const std::vector<double>* zoloft = emb.lookup("zoloft");
    REQUIRE(seroquel != nullptr);
    REQUIRE(zoloft != nullptr);

    auto sum = embedding_sum(toks({"Seroquel", "xyznotaword", "zoloft"}), emb);
    REQUIRE(sum.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(sum[i] == doctest::Approx((*seroquel)[i] + (*zoloft)[i]));

    auto zeros = embedding_sum(toks({"xyznotaword"}), emb);
    CHECK(zeros == std::vector<double>(4, 0.0));
    CHECK(embedding_sum(toks({}), emb) == std::vector<double>(4, 0.0));
}

TEST_CASE("twitter features: allcaps, hashtags, emoticons, elongation") {
    const TextPrepOptions& opts = bundle().textprep;
    auto feats = twitter_features(toks({"SOOO", "happy", "#yay", ":)"}), opts);
    std::map<std::string, double> m(feats.begin(), feats.end());
    CHECK(m.at("tw:allcaps") == 1.0);
    CHECK(m.at("tw:hashtags") == 1.0);
    CHECK(m.at("tw:emoticon_pos") == 1.0);
    CHECK(m.at("tw:emoticon_neg") == 0.0);
    CHECK(m.at("tw:last_emoticon_pos") == 1.0);
    CHECK(m.at("tw:last_emoticon_neg") == 0.0);
    CHECK(m.at("tw:elongated") == 1.0);

    SUBCASE("emoticon not in last position clears the last_* flags") {
        auto f2 = twitter_features(toks({":(", "ugh"}), opts);
        std::map<std::string, double> m2(f2.begin(), f2.end());
        CHECK(m2.at("tw:emoticon_neg") == 1.0);
        CHECK(m2.at("tw:last_emoticon_neg") == 0.0);
    }
    SUBCASE("allcaps needs at least two letters; elongation needs a letter") {
        auto f3 = twitter_features(toks({"I", "AM", "!!!", "noooo"}), opts);
        std::map<std::string, double> m3(f3.begin(), f3.end());
        CHECK(m3.at("tw:allcaps") == 1.0);   // "AM" only; "I" is too short
        CHECK(m3.at("tw:elongated") == 1.0); // "noooo"; "!!!" has no letter
        CHECK(m3.at("tw:hashtags") == 0.0);
    }
}

TEST_CASE("punctuation features") {
    auto feats = punctuation_features(toks({"wow", "!!", "ok?"}));
    std::map<std::string, double> m(feats.begin(), feats.end());
    CHECK(m.at("p:has_excl") == 1.0);
    CHECK(m.at("p:has_quest") == 1.0);
    CHECK(m.at("p:last_excl") == 0.0);
    CHECK(m.at("p:last_quest") == 1.0);

    auto quiet = punctuation_features(toks({"all", "calm"}));
    for (const auto& [name, v] : quiet) CHECK(v == 0.0);
}

TEST_CASE("sentiment features: count, total, max, last") {
    ScoredLexicon lex;
    lex.name = "toy";
    lex.scores = {{"good", 2.0}, {"bad", -3.0}, {"meh", 0.0}};

    SUBCASE("mixed scores") {
        auto feats = sentiment_features(toks({"good", "bad", "bad"}), lex);
        std::map<std::string, double> m(feats.begin(), feats.end());
        CHECK(m.at("lex:toy:count") == 3.0);
        CHECK(m.at("lex:toy:total") == doctest::Approx(-4.0));
        CHECK(m.at("lex:toy:max") == doctest::Approx(2.0));
        CHECK(m.at("lex:toy:last") == doctest::Approx(-3.0));
    }
    SUBCASE("no token in lexicon: max is omitted entirely") {
        auto feats = sentiment_features(toks({"nothing", "matches"}), lex);
        std::map<std::string, double> m(feats.begin(), feats.end());
        CHECK(m.size() == 3);  // count, total, last — no max
        CHECK(m.count("lex:toy:max") == 0);
        CHECK(m.at("lex:toy:count") == 0.0);
    }
    SUBCASE("zero-score entries are in-lexicon but not counted") {
        auto feats = sentiment_features(toks({"meh"}), lex);
        std::map<std::string, double> m(feats.begin(), feats.end());
        CHECK(m.at("lex:toy:count") == 0.0);
        CHECK(m.at("lex:toy:total") == 0.0);
        CHECK(m.count("lex:toy:max") == 1);  // present: a token was in the lexicon
        CHECK(m.at("lex:toy:max") == 0.0);
    }
    SUBCASE("single positive token, also last") {
        auto feats = sentiment_features(toks({"good"}), lex);
        std::map<std::string, double> m(feats.begin(), feats.end());
        CHECK(m.at("lex:toy:count") == 1.0);
        CHECK(m.at("lex:toy:total") == doctest::Approx(2.0));
        CHECK(m.at("lex:toy:max") == doctest::Approx(2.0));
        CHECK(m.at("lex:toy:last") == doctest::Approx(2.0));
    }
    SUBCASE("max tracks the maximum even when negative") {
        auto feats = sentiment_features(toks({"bad"}), lex);
        std::map<std::string, double> m(feats.begin(), feats.end());
        CHECK(m.at("lex:toy:max") == doctest::Approx(-3.0));
    }
}

TEST_CASE("ADR lexicon features: span count, presence, absent when no match") {
    const TermLexicon& adr = bundle().adr_terms;
    auto feats = adr_lexicon_features(toks({"dry", "mouth", "and", "headache"}), adr);
    std::map<std::string, double> m(feats.begin(), feats.end());
    CHECK(m.at("adr:count") == 2.0);
    CHECK(m.at("adr:present") == 1.0);

    CHECK(adr_lexicon_features(toks({"feeling", "fine", "today"}), adr).empty());
}

TEST_CASE("pronoun count is case-insensitive token counting") {
    const TermLexicon& pron = bundle().pronouns;
    CHECK(pronoun_count(toks({"I", "told", "my", "doctor"}), pron) == 2.0);
    CHECK(pronoun_count(toks({"nothing", "personal"}), pron) == 0.0);
}

TEST_CASE("domain generalization replaces med spans then ADR spans") {
    const ResourceBundle& res = bundle();

    SUBCASE("single-token med and multi-token ADR") {
        TokenSequence g = domain_generalize(toks({"my", "Seroquel", "gave", "me", "dry",
                                                  "mouth", "again"}),
                                            res.medications, res.adr_terms);
        std::vector<std::string> surfaces;
        for (const auto& tok : g.tokens) surfaces.push_back(tok.surface);
        CHECK(surfaces == std::vector<std::string>{"my", "<MED>", "gave", "me", "<ADR>",
                                                   "again"});
    }
    SUBCASE("identity when nothing matches") {
        TokenSequence g = domain_generalize(toks({"completely", "ordinary", "words"}),
                                            res.medications, res.adr_terms);
        CHECK(g.size() == 3);
        CHECK(g[0].surface == "completely");
    }
    SUBCASE("negation carries over to the placeholder") {
        TokenSequence t = toks({"never", "taking", "seroquel", "again"});
        t.tokens[1].is_negated = true;
        t.tokens[2].is_negated = true;
        t.tokens[3].is_negated = true;
        TokenSequence g = domain_generalize(t, res.medications, res.adr_terms);
        REQUIRE(g.size() == 4);
        CHECK(g[2].surface == "<MED>");
        CHECK(g[2].is_negated);
        CHECK(render_token(g[2]) == "<MED>_NEG");
    }
}

TEST_CASE("domain n-grams carry the g: prefix over the generalized sequence") {
    FeatureConfig cfg;
    cfg.domain_ngram_max = 3;
    cfg.domain_noncontig_max = 3;
    TokenSequence g = toks({"<MED>", "makes", "me"});
    auto grams = as_set(domain_ngrams(g, cfg));
    CHECK(grams.count("g:<MED>") == 1);
    CHECK(grams.count("g:makes me") == 1);
    CHECK(grams.count("g:<MED> makes me") == 1);
    CHECK(grams.count("g:<MED> * me") == 1);  // non-contiguous member
    CHECK(grams.count("<MED> makes me") == 0);
}

TEST_CASE("extract: word-only config produces exactly the unigram features") {
    FeatureConfig cfg;
    cfg.word_ngram_max = 1;
    ResourceBundle res;  // nothing needed
    FeatureSpace space;
    FeatureVector fv = extract(tw("need prozac"), cfg, res, space);
    auto m = named(fv, space);
    CHECK(m == std::map<std::string, double>{{"need", 1.0}, {"prozac", 1.0}});
}

TEST_CASE("extract: repeated tokens still yield value 1.0 for binary features") {
    FeatureConfig cfg;
    cfg.word_ngram_max = 1;
    ResourceBundle res;
    FeatureSpace space;
    FeatureVector fv = extract(tw("spam spam spam spam"), cfg, res, space);
    auto m = named(fv, space);
    CHECK(m == std::map<std::string, double>{{"spam", 1.0}});
}

TEST_CASE("extract: all groups disabled yields an empty vector") {
    FeatureConfig cfg;
    ResourceBundle res;
    FeatureSpace space;
    CHECK(extract(tw("anything at all"), cfg, res, space).nnz() == 0);
}

TEST_CASE("extract: empty text yields an empty vector under a rich config") {
    FeatureConfig cfg;
    cfg.word_ngram_max = 3;
    cfg.char_ngram_max = 3;
    cfg.use_stems = true;
    cfg.use_twitter = true;
    cfg.use_punctuation = true;
    cfg.use_adr_lexicon = true;
    cfg.use_pronoun_lexicon = true;
    cfg.sentiment_lexicons = {"hu_liu"};
    cfg.embedding_tables = {"word2vec"};
    FeatureSpace space;
    CHECK(extract(tw(""), cfg, bundle(), space).nnz() == 0);
}

TEST_CASE("extract: zero-valued features are dropped") {
    FeatureConfig cfg;
    cfg.use_twitter = true;
    cfg.use_punctuation = true;
    cfg.use_pronoun_lexicon = true;
    cfg.sentiment_lexicons = {"hu_liu"};
    FeatureSpace space;
    // lowercase, no punctuation, no pronouns, no sentiment words
    FeatureVector fv = extract(tw("plain words only"), cfg, bundle(), space);
    CHECK(fv.nnz() == 0);

    // With matches the same groups do emit.
    FeatureSpace space2;
    FeatureVector fv2 = extract(tw("i hope THIS works!"), cfg, bundle(), space2);
    auto m = named(fv2, space2);
    CHECK(m.at("pron:count") == 1.0);
    CHECK(m.at("tw:allcaps") == 1.0);
    CHECK(m.at("p:has_excl") == 1.0);
    CHECK(m.at("p:last_excl") == 1.0);
    CHECK(m.at("lex:hu_liu:count") == 1.0);
    CHECK(m.at("lex:hu_liu:total") == 1.0);
    CHECK(m.at("lex:hu_liu:max") == 1.0);
    CHECK(m.count("lex:hu_liu:last") == 0);  // "!" is not in the lexicon -> 0 -> dropped
}

TEST_CASE("extract: ids are strictly increasing and first-seen dense") {
    FeatureConfig cfg;
    cfg.word_ngram_max = 2;
    ResourceBundle res;
    FeatureSpace space;
    FeatureVector fv = extract(tw("one two three"), cfg, res, space);
    REQUIRE(fv.nnz() == 5);
    for (std::size_t i = 1; i < fv.entries.size(); ++i)
        CHECK(fv.entries[i - 1].first < fv.entries[i].first);
    //

    CHECK(space.name_of(0) == "one");
    CHECK(space.name_of(1) == "two");
    CHECK(space.name_of(2) == "three");
    CHECK(space.name_of(3) == "one two");
    CHECK(space.name_of(4) == "two three");
}

TEST_CASE("extract: deterministic across fresh spaces") {
    FeatureConfig cfg;
    cfg.word_ngram_max = 3;
    cfg.noncontig_ngram_max = 3;
    cfg.char_ngram_max = 3;
    cfg.use_stems = true;
    cfg.use_negation = true;
    cfg.use_twitter = true;
    cfg.use_punctuation = true;
    cfg.domain_ngram_max = 4;
    cfg.domain_noncontig_max = 5;
    cfg.use_adr_lexicon = true;
    cfg.use_pronoun_lexicon = true;
    cfg.embedding_tables = {"word2vec", "conceptnet"};
    cfg.domain_embedding_tables = {"domain_word2vec"};
    cfg.cluster_maps = {"brown"};
    cfg.domain_cluster_maps = {"domain_kmeans"};
    cfg.sentiment_lexicons = {"hu_liu", "vad", "labmt", "emoticon"};

    Tweet t = tw("I can't sleep, my Seroquel gave me dry mouth and a headache!! #fail :(");
    FeatureSpace s1, s2;
    auto m1 = named(extract(t, cfg, bundle(), s1), s1);
    auto m2 = named(extract(t, cfg, bundle(), s2), s2);
    CHECK(m1 == m2);
    CHECK_FALSE(m1.empty());
}

TEST_CASE("extract: frozen space drops unknown names instead of growing") {
    FeatureConfig cfg;
    cfg.word_ngram_max = 1;
    ResourceBundle res;
    FeatureSpace space;
    extract(tw("alpha beta"), cfg, res, space);
    space.freeze();
    std::uint32_t size_before = space.size();

    FeatureVector fv = extract(tw("beta gamma delta"), cfg, res, space);
    CHECK(space.size() == size_before);
    auto m = named(fv, space);
    CHECK(m == std::map<std::string, double>{{"beta", 1.0}});
}

TEST_CASE("feature space: dense ids, lookup, freeze semantics") {
    FeatureSpace space;
    auto a = space.intern("a");
    auto b = space.intern("b");
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(*a == 0);
    CHECK(*b == 1);
    CHECK(*space.intern("a") == 0);  // idempotent
    CHECK(space.size() == 2);
    CHECK(space.lookup("b") == 1);
    CHECK_FALSE(space.lookup("c").has_value());
    CHECK_FALSE(space.frozen());

    space.freeze();
    CHECK(space.frozen());
    CHECK_FALSE(space.intern("c").has_value());
    CHECK(*space.intern("a") == 0);  // known names still resolve
    CHECK(space.size() == 2);
}

TEST_CASE("embedding blocks reserve contiguous id ranges per table") {
    FeatureConfig cfg;
    cfg.embedding_tables = {"word2vec", "conceptnet"};
    cfg.domain_embedding_tables = {"domain_word2vec"};
    FeatureSpace space = FeatureSpace::with_embedding_blocks(cfg, bundle());
    // word2vec dim 4 -> ids 0..3, conceptnet dim 3 -> 4..6, domain_word2vec dim 3 -> 7..9
    REQUIRE(space.size() == 10);
    CHECK(space.name_of(0) == "emb:word2vec:0");
    CHECK(space.name_of(3) == "emb:word2vec:3");
    CHECK(space.name_of(4) == "emb:conceptnet:0");
    CHECK(space.name_of(6) == "emb:conceptnet:2");
    CHECK(space.name_of(7) == "emb:domain_word2vec:0");
    CHECK(space.name_of(9) == "emb:domain_word2vec:2");

    // Extraction reuses the reserved ids rather than re-interning elsewhere.
    FeatureConfig word_cfg = cfg;
    word_cfg.word_ngram_max = 1;
    FeatureVector fv = extract(tw("seroquel me"), word_cfg, bundle(), space);
    for (const auto& [id, v] : fv.entries) {
        const std::string& name = space.name_of(id);
        if (name.rfind("emb:word2vec:", 0) == 0) CHECK(id <= 3);
        if (name.rfind("emb:conceptnet:", 0) == 0) {
            CHECK(id >= 4);
            CHECK(id <= 6);
        }
    }
}

TEST_CASE("extract: feature vector dot and l2 helpers") {
    FeatureVector fv;
    fv.entries = {{0, 1.0}, {2, 2.0}, {5, -3.0}};
    std::vector<double> dense = {1.0, 10.0, 0.5, 0.0, 0.0, 2.0};
    CHECK(fv.dot(dense) == doctest::Approx(1.0 + 1.0 - 6.0));
    CHECK(fv.l2_squared() == doctest::Approx(1.0 + 4.0 + 9.0));
    // Ids past the dense vector contribute nothing.
    FeatureVector fv2;
    fv2.entries = {{0, 1.0}, {99, 5.0}};
    CHECK(fv2.dot(dense) == doctest::Approx(1.0));
}

TEST_CASE("extract: golden spot-checks on a fixture-style tweet") {
    FeatureConfig cfg;
    cfg.word_ngram_max = 3;
    cfg.noncontig_ngram_max = 3;
    cfg.char_ngram_max = 3;
    cfg.use_stems = true;
    cfg.domain_ngram_max = 4;
    cfg.domain_noncontig_max = 5;
    cfg.use_adr_lexicon = true;
    cfg.use_pronoun_lexicon = true;
    cfg.cluster_maps = {"brown"};
    cfg.domain_cluster_maps = {"domain_kmeans"};

    FeatureSpace space;
    FeatureVector fv = extract(tw("my seroquel gave me dry mouth again"), cfg, bundle(), space);
    auto m = named(fv, space);

    CHECK(m.at("my") == 1.0);
    CHECK(m.at("seroquel") == 1.0);
    CHECK(m.at("gave me") == 1.0);
    CHECK(m.at("my * gave") == 1.0);
    CHECK(m.at("c:ser") == 1.0);
    CHECK(m.at("s:seroquel") == 1.0);
    CHECK(m.at("s:gave") == 1.0);
    CHECK(m.at("cl:1100") == 1.0);   // brown: seroquel
    CHECK(m.at("cl:1111") == 1.0);   // brown: gave
    CHECK(m.at("cl:d03") == 1.0);    // domain: seroquel
    CHECK(m.at("cl:d01") == 1.0);    // domain: dry/mouth
    CHECK(m.at("g:<MED>") == 1.0);
    CHECK(m.at("g:<ADR>") == 1.0);
    CHECK(m.at("g:<MED> gave me") == 1.0);
    CHECK(m.at("g:my <MED> gave me") == 1.0);
    CHECK(m.at("g:me <ADR> again") == 1.0);
    CHECK(m.at("g:<MED> * me") == 1.0);
    CHECK(m.at("adr:count") == 1.0);  // one span: "dry mouth"
    CHECK(m.at("adr:present") == 1.0);
    CHECK(m.at("pron:count") == 2.0);  // my, me

    // The raw word trigram and the generalized one coexist under
    // different names.
    CHECK(m.at("seroquel gave me") == 1.0);
    CHECK(m.count("g:seroquel gave me") == 0);
}

TEST_CASE("extract: negation feeds word and domain grams but not char/stem groups") {
    FeatureConfig cfg;
    cfg.word_ngram_max = 1;
    cfg.char_ngram_max = 4;
    cfg.use_stems = true;
    cfg.use_negation = true;
    cfg.domain_ngram_max = 1;

    FeatureSpace space;
    FeatureVector fv = extract(tw("never taking seroquel again"), cfg, bundle(), space);
    auto m = named(fv, space);

    CHECK(m.at("never") == 1.0);  // negator itself is unmarked
    CHECK(m.at("taking_NEG") == 1.0);
    CHECK(m.at("seroquel_NEG") == 1.0);
    CHECK(m.at("again_NEG") == 1.0);
    CHECK(m.count("taking") == 0);
    CHECK(m.at("g:<MED>_NEG") == 1.0);
    CHECK(m.at("c:tak") == 1.0);      // char grams over the raw surface
    CHECK(m.at("s:take") == 1.0);     // stems over the raw surface
    CHECK(m.count("s:taking_NEG") == 0);
}
