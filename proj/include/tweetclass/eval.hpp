#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tweetclass/corpus.hpp"
#include "tweetclass/pipeline.hpp"

namespace twc {

// Full k x k confusion matrix over a sorted class domain, with the usual
// per-class TP/FP/FN views.
class Confusion {
public:
    Confusion() = default;
    Confusion(const std::vector<int>& gold, const std::vector<int>& pred);

    std::size_t tp(int cls) const;
    std::size_t fp(int cls) const;
    std::size_t fn(int cls) const;
    std::size_t count(int gold_cls, int pred_cls) const;
    std::size_t total() const { return total_; }
    const std::vector<int>& classes() const { return classes_; }

    // Direct count injection for analytic checks.
    static Confusion from_counts(const std::vector<int>& classes,
                                 const std::map<std::pair<int, int>, std::size_t>& counts);

private:
    std::vector<int> classes_;
    std::map<std::pair<int, int>, std::size_t> matrix_;  // (gold, pred) -> n
    std::size_t total_ = 0;
};

struct Prf {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// P = TP/(TP+FP), R = TP/(TP+FN), F = 2PR/(P+R); each 0 when its
// denominator is 0.
Prf prf_class(const Confusion& c, int cls);

// Pooled-count micro P/R/F over the given class subset.
Prf micro_prf(const Confusion& c, const std::set<int>& classes);

struct MetricReport {
    std::map<int, Prf> per_class;
    Prf micro;                      // over metric_classes
    std::vector<int> metric_classes;
    std::size_t instances = 0;
};

MetricReport make_report(const Confusion& c, const std::vector<int>& metric_classes);

struct CvResult {
    std::vector<MetricReport> folds;
    MetricReport mean;              // arithmetic mean of fold metrics
};

// Seeded shuffled split into k near-equal folds (remainder spread over the
// leading folds); trains on k-1 folds, tests on the held-out one, rotating.
// The feature space is rebuilt per fold. Throws if any class has fewer than
// k instances.
CvResult kfold_cv(const Dataset& d, int k, const PipelineConfig& cfg,
                  const ResourceBundle& res, std::uint64_t seed);

// Splits `dev` into k folds; each round trains on train + (k-1) dev folds
// and tests on the held-out dev fold.
CvResult augmented_fold_cv(const Dataset& train, const Dataset& dev, int k,
                           const PipelineConfig& cfg, const ResourceBundle& res,
                           std::uint64_t seed);

MetricReport holdout_eval(const Dataset& train, const Dataset& test,
                          const PipelineConfig& cfg, const ResourceBundle& res,
                          std::uint64_t seed);

// How ablation and CV runs get their numbers.
struct Protocol {
    enum class Kind { cv, augmented_cv, holdout };
    Kind kind = Kind::holdout;
    int k = 5;
};

// Feature-group ablation: one row per removed group plus the all-features
// base row. Group names resolve through ablation_groups(); unknown names
// throw.
struct AblationRow {
    std::string removed;            // "" for the base row
    MetricReport report;
};

std::vector<AblationRow> ablation_run(const PipelineConfig& base,
                                      const std::vector<std::string>& groups,
                                      const Protocol& protocol, const Dataset& train,
                                      const Dataset& dev_or_test,
                                      const ResourceBundle& res, std::uint64_t seed);

// Known group names and the config edit each performs.
std::vector<std::string> ablation_group_names();
PipelineConfig apply_ablation(const PipelineConfig& base, const std::string& group);

// Mutual information of n-gram presence/absence and the class label,
// natural log, computed from empirical joint frequencies. Descending MI,
// ties broken lexicographically. Only the n-gram families enabled in `cfg`
// participate. Throws on an empty dataset.
struct RankedFeature {
    std::string name;
    double mi = 0.0;
};

std::vector<RankedFeature> mi_rank(const Dataset& d, const FeatureConfig& cfg,
                                   const ResourceBundle& res, std::size_t top_k);

// --- report rendering ---

std::string format_report_text(const MetricReport& r);
std::string format_report_tsv(const MetricReport& r);
std::string format_cv_text(const CvResult& r);
std::string format_cv_tsv(const CvResult& r);
std::string format_ablation_text(const std::vector<AblationRow>& rows);
std::string format_ablation_tsv(const std::vector<AblationRow>& rows);
std::string format_ranking_text(const std::vector<RankedFeature>& ranked);
std::string format_ranking_tsv(const std::vector<RankedFeature>& ranked);

}  // namespace twc
