#include "tweetclass/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "tweetclass/rng.hpp"

namespace twc {
namespace {

std::string fmt(double v, int decimals = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    while (s.size() < width) s += ' ';
    return s;
}

std::vector<int> gold_labels(const Dataset& d) {
    std::vector<int> gold;
    gold.reserve(d.tweets.size());
    for (const Tweet& t : d.tweets) {
        if (!t.label)
            throw std::invalid_argument("evaluation requires gold labels (tweet '" +
                                        t.id + "' has none)");
        gold.push_back(*t.label);
    }
    return gold;
}

std::string classes_tag(const std::vector<int>& classes) {
    std::string tag;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (i) tag += '+';
        tag += std::to_string(classes[i]);
    }
    return tag;
}

}  // namespace

Confusion::Confusion(const std::vector<int>& gold, const std::vector<int>& pred) {
    if (gold.size() != pred.size())
        throw std::invalid_argument("gold/pred length mismatch: " +
                                    std::to_string(gold.size()) + " vs " +
                                    std::to_string(pred.size()));
    std::set<int> cls;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        cls.insert(gold[i]);
        cls.insert(pred[i]);
        ++matrix_[{gold[i], pred[i]}];
    }
    classes_.assign(cls.begin(), cls.end());
    total_ = gold.size();
}

Confusion Confusion::from_counts(const std::vector<int>& classes,
                                 const std::map<std::pair<int, int>, std::size_t>& counts) {
    Confusion c;
    std::set<int> cls(classes.begin(), classes.end());
    c.classes_.assign(cls.begin(), cls.end());
    c.matrix_ = counts;
    for (const auto& [key, n] : counts) c.total_ += n;
    return c;
}

std::size_t Confusion::count(int gold_cls, int pred_cls) const {
    auto it = matrix_.find({gold_cls, pred_cls});
    return it == matrix_.end() ? 0 : it->second;
}

std::size_t Confusion::tp(int cls) const { return count(cls, cls); }

std::size_t Confusion::fp(int cls) const {
    std::size_t n = 0;
    for (const auto& [key, c] : matrix_)
        if (key.second == cls && key.first != cls) n += c;
    return n;
}

std::size_t Confusion::fn(int cls) const {
    std::size_t n = 0;
    for (const auto& [key, c] : matrix_)
        if (key.first == cls && key.second != cls) n += c;
    return n;
}

Prf prf_class(const Confusion& c, int cls) {
    double tp = static_cast<double>(c.tp(cls));
    double fp = static_cast<double>(c.fp(cls));
    double fn = static_cast<double>(c.fn(cls));
    Prf r;
    r.precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    r.recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
    r.f1 = r.precision + r.recall > 0
               ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
               : 0.0;
    return r;
}

Prf micro_prf(const Confusion& c, const std::set<int>& classes) {
    double tp = 0, fp = 0, fn = 0;
    for (int cls : classes) {
        tp += static_cast<double>(c.tp(cls));
        fp += static_cast<double>(c.fp(cls));
        fn += static_cast<double>(c.fn(cls));
    }
    Prf r;
    r.precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    r.recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
    r.f1 = r.precision + r.recall > 0
               ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
               : 0.0;
    return r;
}

MetricReport make_report(const Confusion& c, const std::vector<int>& metric_classes) {
    MetricReport r;
    std::set<int> all(c.classes().begin(), c.classes().end());
    all.insert(metric_classes.begin(), metric_classes.end());
    for (int cls : all) r.per_class[cls] = prf_class(c, cls);
    r.micro = micro_prf(c, std::set<int>(metric_classes.begin(), metric_classes.end()));
    r.metric_classes = metric_classes;
    r.instances = c.total();
    return r;
}

namespace {

MetricReport mean_report(const std::vector<MetricReport>& folds) {
    MetricReport mean;
    if (folds.empty()) return mean;
    mean.metric_classes = folds.front().metric_classes;
    std::set<int> classes;
    for (const MetricReport& f : folds)
        for (const auto& [cls, prf] : f.per_class) classes.insert(cls);
    double n = static_cast<double>(folds.size());
    for (int cls : classes) {
        Prf sum;
        for (const MetricReport& f : folds) {
            auto it = f.per_class.find(cls);
            if (it == f.per_class.end()) continue;  // absent folds contribute 0
            sum.precision += it->second.precision;
            sum.recall += it->second.recall;
            sum.f1 += it->second.f1;
        }
        mean.per_class[cls] = {sum.precision / n, sum.recall / n, sum.f1 / n};
    }
    Prf micro_sum;
    for (const MetricReport& f : folds) {
        micro_sum.precision += f.micro.precision;
        micro_sum.recall += f.micro.recall;
        micro_sum.f1 += f.micro.f1;
        mean.instances += f.instances;
    }
    mean.micro = {micro_sum.precision / n, micro_sum.recall / n, micro_sum.f1 / n};
    return mean;
}

// Shuffled-contiguous fold assignment; fold f gets n/k instances plus one
// extra while f < n % k.
std::vector<std::vector<std::size_t>> fold_slices(std::size_t n, int k,
                                                  std::uint64_t seed) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 gen(seed);
    rng::shuffle(order, gen);

    std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
    std::size_t base = n / static_cast<std::size_t>(k);
    std::size_t rem = n % static_cast<std::size_t>(k);
    std::size_t at = 0;
    for (std::size_t f = 0; f < static_cast<std::size_t>(k); ++f) {
        std::size_t len = base + (f < rem ? 1 : 0);
        folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(at),
                        order.begin() + static_cast<std::ptrdiff_t>(at + len));
        at += len;
    }
    return folds;
}

void check_fold_feasibility(const Dataset& d, int k) {
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    ClassCounts counts = class_counts(d);
    for (const auto& [cls, n] : counts.per_class) {
        if (n < static_cast<std::size_t>(k))
            throw std::invalid_argument("class " + std::to_string(cls) + " has only " +
                                        std::to_string(n) + " instances for k=" +
                                        std::to_string(k));
    }
}

MetricReport eval_split(const Dataset& train, const Dataset& test,
                        const PipelineConfig& cfg, const ResourceBundle& res,
                        std::uint64_t seed) {
    TrainedPipeline p = train_pipeline(train, cfg, res, seed);
    std::vector<int> pred = pipeline_predict_all(p, res, test);
    Confusion c(gold_labels(test), pred);
    return make_report(c, cfg.metric_classes);
}

}  // namespace

CvResult kfold_cv(const Dataset& d, int k, const PipelineConfig& cfg,
                  const ResourceBundle& res, std::uint64_t seed) {
    check_fold_feasibility(d, k);
    std::vector<std::vector<std::size_t>> folds = fold_slices(d.size(), k, seed);

    CvResult result;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::unordered_set<std::size_t> held(folds[f].begin(), folds[f].end());
        Dataset train_split, test_split;
        train_split.label_domain = d.label_domain;
        test_split.label_domain = d.label_domain;
        for (std::size_t i = 0; i < d.size(); ++i)
            (held.count(i) ? test_split : train_split).tweets.push_back(d.tweets[i]);
        result.folds.push_back(eval_split(train_split, test_split, cfg, res, seed + f));
    }
    result.mean = mean_report(result.folds);
    return result;
}

CvResult augmented_fold_cv(const Dataset& train, const Dataset& dev, int k,
                           const PipelineConfig& cfg, const ResourceBundle& res,
                           std::uint64_t seed) {
    check_fold_feasibility(dev, k);
    std::vector<std::vector<std::size_t>> folds = fold_slices(dev.size(), k, seed);

    CvResult result;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::unordered_set<std::size_t> held(folds[f].begin(), folds[f].end());
        Dataset train_split = train;  // full training set always included
        Dataset test_split;
        test_split.label_domain = dev.label_domain;
        for (std::size_t i = 0; i < dev.size(); ++i)
            (held.count(i) ? test_split : train_split).tweets.push_back(dev.tweets[i]);
        result.folds.push_back(eval_split(train_split, test_split, cfg, res, seed + f));
    }
    result.mean = mean_report(result.folds);
    return result;
}

MetricReport holdout_eval(const Dataset& train, const Dataset& test,
                          const PipelineConfig& cfg, const ResourceBundle& res,
                          std::uint64_t seed) {
    return eval_split(train, test, cfg, res, seed);
}

std::vector<std::string> ablation_group_names() {
    return {
        "general-textual",
        "general-ngrams",
        "general-embeddings",
        "general-clusters",
        "twitter-punctuation",
        "negation-twitter-punctuation",
        "domain-specific",
        "domain-ngrams",
        "adr-lexicon",
        "pronoun-lexicon",
        "domain-embeddings",
        "domain-clusters",
        "sentiment-lexicons",
        "under-sampling",
        "class-weights",
    };
}

PipelineConfig apply_ablation(const PipelineConfig& base, const std::string& group) {
    PipelineConfig cfg = base;
    FeatureConfig& f = cfg.features;
    if (group == "general-textual") {
        f.word_ngram_max = 0;
        f.noncontig_ngram_max = 0;
        f.char_ngram_max = 0;
        f.use_stems = false;
        f.embedding_tables.clear();
        f.cluster_maps.clear();
        f.use_twitter = false;
        f.use_punctuation = false;
        f.use_negation = false;
    } else if (group == "general-ngrams") {
        f.word_ngram_max = 0;
        f.noncontig_ngram_max = 0;
        f.char_ngram_max = 0;
        f.use_stems = false;
    } else if (group == "general-embeddings") {
        f.embedding_tables.clear();
    } else if (group == "general-clusters") {
        f.cluster_maps.clear();
    } else if (group == "twitter-punctuation") {
        f.use_twitter = false;
        f.use_punctuation = false;
    } else if (group == "negation-twitter-punctuation") {
        f.use_negation = false;
        f.use_twitter = false;
        f.use_punctuation = false;
    } else if (group == "domain-specific") {
        f.domain_ngram_max = 0;
        f.domain_noncontig_max = 0;
        f.use_adr_lexicon = false;
        f.use_pronoun_lexicon = false;
        f.domain_embedding_tables.clear();
        f.domain_cluster_maps.clear();
    } else if (group == "domain-ngrams") {
        f.domain_ngram_max = 0;
        f.domain_noncontig_max = 0;
    } else if (group == "adr-lexicon") {
        f.use_adr_lexicon = false;
    } else if (group == "pronoun-lexicon") {
        f.use_pronoun_lexicon = false;
    } else if (group == "domain-embeddings") {
        f.domain_embedding_tables.clear();
    } else if (group == "domain-clusters") {
        f.domain_cluster_maps.clear();
    } else if (group == "sentiment-lexicons") {
        f.sentiment_lexicons.clear();
    } else if (group == "under-sampling") {
        cfg.imbalance = ImbalanceStrategy{};
    } else if (group == "class-weights") {
        cfg.train.class_weights.clear();
    } else {
        throw std::invalid_argument("unknown ablation group: " + group);
    }
    return cfg;
}

std::vector<AblationRow> ablation_run(const PipelineConfig& base,
                                      const std::vector<std::string>& groups,
                                      const Protocol& protocol, const Dataset& train,
                                      const Dataset& dev_or_test,
                                      const ResourceBundle& res, std::uint64_t seed) {
    auto run = [&](const PipelineConfig& cfg) -> MetricReport {
        switch (protocol.kind) {
            case Protocol::Kind::cv:
                return kfold_cv(train, protocol.k, cfg, res, seed).mean;
            case Protocol::Kind::augmented_cv:
                return augmented_fold_cv(train, dev_or_test, protocol.k, cfg, res, seed)
                    .mean;
            case Protocol::Kind::holdout:
                return holdout_eval(train, dev_or_test, cfg, res, seed);
        }
        throw std::logic_error("unhandled protocol");
    };

    std::vector<AblationRow> rows;
    rows.push_back({"", run(base)});
    for (const std::string& g : groups)
        rows.push_back({g, run(apply_ablation(base, g))});
    return rows;
}

std::vector<RankedFeature> mi_rank(const Dataset& d, const FeatureConfig& cfg,
                                   const ResourceBundle& res, std::size_t top_k) {
    if (d.empty()) throw std::invalid_argument("mi_rank needs a non-empty dataset");

    // Presence sets of the binary n-gram families per tweet.
    std::unordered_map<std::string, std::map<int, std::size_t>> present_by_class;
    std::map<int, std::size_t> class_totals;
    for (const Tweet& tw : d.tweets) {
        if (!tw.label)
            throw std::invalid_argument("mi_rank requires labeled data (tweet '" +
                                        tw.id + "' has none)");
        int cls = *tw.label;
        ++class_totals[cls];
        TokenSequence t = preprocess(tw.text, cfg, res);
        std::unordered_set<std::string> present;
        auto add_all = [&present](const std::vector<std::string>& names) {
            present.insert(names.begin(), names.end());
        };
        if (cfg.word_ngram_max > 0) add_all(word_ngrams(t, cfg.word_ngram_max));
        if (cfg.noncontig_ngram_max >= 3)
            add_all(noncontig_ngrams(t, cfg.noncontig_ngram_max));
        if (cfg.char_ngram_max > 0) add_all(char_ngrams(t, cfg.char_ngram_max));
        if (cfg.use_stems) add_all(stem_unigrams(t));
        if (cfg.any_domain_generalization())
            add_all(domain_ngrams(domain_generalize(t, res.medications, res.adr_terms),
                                  cfg));
        for (const std::string& name : present) ++present_by_class[name][cls];
    }

    const double n = static_cast<double>(d.size());
    auto term = [](double joint, double pf, double pc) {
        if (joint <= 0.0) return 0.0;  // 0 * log 0 = 0
        return joint * std::log(joint / (pf * pc));
    };

    std::vector<RankedFeature> ranked;
    ranked.reserve(present_by_class.size());
    for (const auto& [name, by_class] : present_by_class) {
        std::size_t present_total = 0;
        for (const auto& [cls, cnt] : by_class) present_total += cnt;
        double p_present = static_cast<double>(present_total) / n;
        double p_absent = 1.0 - p_present;
        double mi = 0.0;
        for (const auto& [cls, cls_total] : class_totals) {
            auto it = by_class.find(cls);
            double joint_present =
                it == by_class.end() ? 0.0 : static_cast<double>(it->second) / n;
            double p_c = static_cast<double>(cls_total) / n;
            double joint_absent = p_c - joint_present;
            mi += term(joint_present, p_present, p_c);
            mi += term(joint_absent, p_absent, p_c);
        }
        ranked.push_back({name, mi});
    }
    std::sort(ranked.begin(), ranked.end(), [](const RankedFeature& a, const RankedFeature& b) {
        if (a.mi != b.mi) return a.mi > b.mi;
        return a.name < b.name;
    });
    if (ranked.size() > top_k) ranked.resize(top_k);
    return ranked;
}

// --- rendering ---

std::string format_report_text(const MetricReport& r) {
    std::size_t label_w = std::string("micro(") .size() +
                          classes_tag(r.metric_classes).size() + 1;
    for (const auto& [cls, prf] : r.per_class)
        label_w = std::max(label_w, std::string("class ").size() +
                                        std::to_string(cls).size());
    label_w = std::max<std::size_t>(label_w, 12) + 2;

    std::string out = pad("", label_w) + pad("precision", 11) + pad("recall", 11) + "f1\n";
    for (const auto& [cls, prf] : r.per_class) {
        out += pad("class " + std::to_string(cls), label_w) + pad(fmt(prf.precision), 11) +
               pad(fmt(prf.recall), 11) + fmt(prf.f1) + "\n";
    }
    out += pad("micro(" + classes_tag(r.metric_classes) + ")", label_w) +
           pad(fmt(r.micro.precision), 11) + pad(fmt(r.micro.recall), 11) +
           fmt(r.micro.f1) + "\n";
    out += pad("instances", label_w) + std::to_string(r.instances) + "\n";
    return out;
}

std::string format_report_tsv(const MetricReport& r) {
    std::string out = "metric\tclasses\tvalue\n";
    for (const auto& [cls, prf] : r.per_class) {
        std::string c = std::to_string(cls);
        out += "precision\t" + c + "\t" + fmt(prf.precision) + "\n";
        out += "recall\t" + c + "\t" + fmt(prf.recall) + "\n";
        out += "f1\t" + c + "\t" + fmt(prf.f1) + "\n";
    }
    std::string mc = classes_tag(r.metric_classes);
    out += "precision\t" + mc + "\t" + fmt(r.micro.precision) + "\n";
    out += "recall\t" + mc + "\t" + fmt(r.micro.recall) + "\n";
    out += "f1\t" + mc + "\t" + fmt(r.micro.f1) + "\n";
    out += "instances\t\t" + std::to_string(r.instances) + "\n";
    return out;
}

std::string format_cv_text(const CvResult& r) {
    std::string out;
    for (std::size_t f = 0; f < r.folds.size(); ++f) {
        out += "fold " + std::to_string(f + 1) + "\n";
        out += format_report_text(r.folds[f]);
        out += "\n";
    }
    out += "mean over " + std::to_string(r.folds.size()) + " folds\n";
    out += format_report_text(r.mean);
    return out;
}

std::string format_cv_tsv(const CvResult& r) {
    std::string out = "fold\tmetric\tclasses\tvalue\n";
    auto append = [&out](const std::string& tag, const MetricReport& rep) {
        std::string body = format_report_tsv(rep);
        std::size_t start = body.find('\n') + 1;  // drop the header line
        while (start < body.size()) {
            std::size_t end = body.find('\n', start);
            out += tag + "\t" + body.substr(start, end - start) + "\n";
            start = end + 1;
        }
    };
    for (std::size_t f = 0; f < r.folds.size(); ++f)
        append(std::to_string(f + 1), r.folds[f]);
    append("mean", r.mean);
    return out;
}

std::string format_ablation_text(const std::vector<AblationRow>& rows) {
    std::size_t label_w = std::string("all features").size();
    for (const AblationRow& row : rows)
        if (!row.removed.empty())
            label_w = std::max(label_w, row.removed.size() + 4);
    label_w += 2;

    std::string out = pad("configuration", label_w) + pad("precision", 11) +
                      pad("recall", 11) + "f1\n";
    for (const AblationRow& row : rows) {
        std::string label = row.removed.empty() ? "all features" : "w/o " + row.removed;
        out += pad(label, label_w) + pad(fmt(row.report.micro.precision), 11) +
               pad(fmt(row.report.micro.recall), 11) + fmt(row.report.micro.f1) + "\n";
    }
    return out;
}

std::string format_ablation_tsv(const std::vector<AblationRow>& rows) {
    std::string out = "removed\tprecision\trecall\tf1\n";
    for (const AblationRow& row : rows) {
        out += row.removed + "\t" + fmt(row.report.micro.precision) + "\t" +
               fmt(row.report.micro.recall) + "\t" + fmt(row.report.micro.f1) + "\n";
    }
    return out;
}

std::string format_ranking_text(const std::vector<RankedFeature>& ranked) {
    std::size_t name_w = std::string("feature").size();
    for (const RankedFeature& r : ranked) name_w = std::max(name_w, r.name.size());
    name_w += 2;
    std::string out = pad("rank", 6) + pad("feature", name_w) + "mi\n";
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        out += pad(std::to_string(i + 1), 6) + pad(ranked[i].name, name_w) +
               fmt(ranked[i].mi, 6) + "\n";
    }
    return out;
}

std::string format_ranking_tsv(const std::vector<RankedFeature>& ranked) {
    std::string out = "rank\tfeature\tmi\n";
    for (std::size_t i = 0; i < ranked.size(); ++i)
        out += std::to_string(i + 1) + "\t" + ranked[i].name + "\t" +
               fmt(ranked[i].mi, 6) + "\n";
    return out;
}

}  // namespace twc
