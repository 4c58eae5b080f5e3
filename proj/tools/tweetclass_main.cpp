// tweetclass command-line interface.
//
// Subcommands: train, predict, eval, cv, ablate, rank-features.
// Every run is reproducible: identical config + seed yields byte-identical
// output files (no timestamps are ever written).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tweetclass/config.hpp"
#include "tweetclass/corpus.hpp"
#include "tweetclass/eval.hpp"
#include "tweetclass/model_io.hpp"
#include "tweetclass/pipeline.hpp"

#ifndef TWC_PRESET_DIR
#define TWC_PRESET_DIR ""
#endif

namespace {

using namespace twc;

// ---------------------------------------------------------------------------
// shared option plumbing

struct CommonOpts {
    std::string config_path;
    std::string preset_name;
    std::optional<std::uint64_t> seed;
    std::string train_path;
    std::string dev_path;
    std::string test_path;
    std::string model_path;
    std::string out_path;
    std::string resources_dir;
    bool no_dedup = false;
};

void add_config_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "explicit key=value config file");
    cmd->add_option("--preset", o.preset_name,
                    "named preset (or a path to a .preset file)");
    cmd->add_option("--seed", o.seed, "random seed (overrides the config; default 42)");
    cmd->add_option("--resources-dir", o.resources_dir,
                    "resource directory (or set TWEETCLASS_RESOURCES)");
}

std::string preset_dir() {
    if (const char* env = std::getenv("TWEETCLASS_PRESETS"); env && *env) return env;
    return TWC_PRESET_DIR;
}

bool looks_like_path(const std::string& s) {
    return s.find('/') != std::string::npos || s.find('\\') != std::string::npos ||
           (s.size() > 7 && s.substr(s.size() - 7) == ".preset");
}

// Resolves --config/--preset (exactly one) plus --seed into a PipelineConfig.
PipelineConfig resolve_config(const CommonOpts& o, std::string* source_desc) {
    if (o.config_path.empty() == o.preset_name.empty())
        throw std::runtime_error("exactly one of --config or --preset is required");
    PipelineConfig cfg;
    if (!o.config_path.empty()) {
        cfg = pipeline_config_from_kv(KeyValueFile::parse_file(o.config_path));
        *source_desc = "config " + o.config_path;
    } else if (looks_like_path(o.preset_name)) {
        cfg = pipeline_config_from_kv(KeyValueFile::parse_file(o.preset_name));
        *source_desc = "preset " + o.preset_name;
    } else {
        std::string dir = preset_dir();
        if (dir.empty())
            throw std::runtime_error(
                "no preset directory available; set TWEETCLASS_PRESETS or pass a path");
        cfg = load_preset(o.preset_name, dir);
        *source_desc = "preset " + o.preset_name;
    }
    if (o.seed) cfg.train.seed = *o.seed;
    return cfg;
}

std::string resolve_resources_dir(const CommonOpts& o) {
    if (!o.resources_dir.empty()) return o.resources_dir;
    if (const char* env = std::getenv("TWEETCLASS_RESOURCES"); env && *env) return env;
    return "";
}

bool needs_resources(const FeatureConfig& f) {
    return f.any_domain_generalization() || f.use_adr_lexicon || f.use_pronoun_lexicon ||
           !f.embedding_tables.empty() || !f.cluster_maps.empty() ||
           !f.domain_embedding_tables.empty() || !f.domain_cluster_maps.empty() ||
           !f.sentiment_lexicons.empty();
}

ResourceBundle load_bundle(const CommonOpts& o, const FeatureConfig& f) {
    std::string dir = resolve_resources_dir(o);
    if (dir.empty()) {
        if (needs_resources(f))
            throw std::runtime_error(
                "this configuration needs lexicon/embedding resources; "
                "pass --resources-dir or set TWEETCLASS_RESOURCES");
        ResourceBundle bundle;  // built-in text preprocessing defaults only
        return bundle;
    }
    return load_resources(ResourcePaths::in_dir(dir), f);
}

Dataset load_labeled(const std::string& path, const std::set<int>& domain,
                     bool dedup) {
    Dataset d = load_tsv(path, domain, /*labeled=*/true);
    if (dedup) d = near_duplicate_filter(d);
    return d;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

// Text report next to its TSV twin: <out> and <out>.tsv.
void write_report_pair(const std::string& out_path, const std::string& text,
                       const std::string& tsv) {
    write_file(out_path, text);
    write_file(out_path + ".tsv", tsv);
}

std::string format_class_counts(const Dataset& d) {
    ClassCounts cc = class_counts(d);
    std::ostringstream os;
    bool first = true;
    for (const auto& [cls, n] : cc.per_class) {
        if (!first) os << " ";
        first = false;
        os << cls << "=" << n;
    }
    return os.str();
}

std::string format_convergence(const svm::LinearModel& m) {
    std::ostringstream os;
    for (std::size_t i = 0; i < m.convergence.size(); ++i) {
        const auto& ci = m.convergence[i];
        os << "  vector " << i;
        if (!m.binary && i < m.labels.size()) os << " (class " << m.labels[i] << ")";
        os << ": converged=" << (ci.converged ? "yes" : "no") << " sweeps=" << ci.sweeps
           << " primal=" << ci.primal << " dual=" << ci.dual << " gap=" << ci.gap()
           << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_train(const CommonOpts& o) {
    std::string source;
    PipelineConfig cfg = resolve_config(o, &source);
    ResourceBundle res = load_bundle(o, cfg.features);

    Dataset train = load_labeled(o.train_path, cfg.label_domain, !o.no_dedup);
    std::size_t train_n = train.size();
    std::size_t dev_n = 0;
    if (!o.dev_path.empty()) {
        // Final-model convention: train on the union of train and dev.
        Dataset dev = load_labeled(o.dev_path, cfg.label_domain, !o.no_dedup);
        dev_n = dev.size();
        for (auto& t : dev.tweets) train.tweets.push_back(std::move(t));
        train.label_domain.insert(dev.label_domain.begin(), dev.label_domain.end());
    }

    TrainedPipeline p = train_pipeline(train, cfg, res, cfg.train.seed);
    save_pipeline(p, o.model_path);

    // Effective config: feeding this file back through --config reproduces
    // the exact run.
    KeyValueFile kv;
    pipeline_config_to_kv(p.config, kv);
    std::ostringstream cfg_text;
    for (const auto& [k, v] : kv.items()) cfg_text << k << "=" << v << "\n";
    write_file(o.model_path + ".config", cfg_text.str());

    std::ostringstream log;
    log << "command: train\n";
    log << "source: " << source << "\n";
    log << "seed: " << cfg.train.seed << "\n";
    log << "train instances: " << train_n << "\n";
    if (!o.dev_path.empty()) log << "dev instances: " << dev_n << "\n";
    log << "total instances: " << train.size() << "\n";
    log << "class counts: " << format_class_counts(train) << "\n";
    log << "features: " << p.space.size() << "\n";
    if (p.is_ensemble()) {
        const auto& e = std::get<Ensemble>(p.model);
        log << "model: ensemble of " << e.members.size() << "\n";
        for (std::size_t i = 0; i < e.members.size(); ++i) {
            log << "member " << i << " (ratio " << e.ratios[i] << "):\n"
                << format_convergence(e.members[i]);
        }
    } else {
        const auto& m = std::get<svm::LinearModel>(p.model);
        log << "model: " << (m.binary ? "binary svm" : "one-vs-rest svm") << "\n";
        log << format_convergence(m);
    }
    std::string log_path = o.out_path.empty() ? o.model_path + ".log" : o.out_path;
    write_file(log_path, log.str());
    std::cout << "model written: " << o.model_path << "\n";
    return 0;
}

int cmd_predict(const CommonOpts& o) {
    TrainedPipeline p = load_pipeline(o.model_path);
    ResourceBundle res = load_bundle(o, p.config.features);
    Dataset input = load_tsv(o.test_path, p.config.label_domain, /*labeled=*/false);

    std::ostringstream out;
    for (const Tweet& t : input.tweets)
        out << t.id << "\t" << pipeline_predict(p, res, t) << "\n";
    write_file(o.out_path, out.str());
    return 0;
}

int cmd_eval(const CommonOpts& o) {
    MetricReport report;
    if (!o.model_path.empty() && o.config_path.empty() && o.preset_name.empty()) {
        // Evaluate an existing model on a labeled set.
        TrainedPipeline p = load_pipeline(o.model_path);
        ResourceBundle res = load_bundle(o, p.config.features);
        Dataset test = load_tsv(o.test_path, p.config.label_domain, /*labeled=*/true);
        std::vector<int> gold, pred;
        gold.reserve(test.size());
        for (const Tweet& t : test.tweets) {
            gold.push_back(*t.label);
            pred.push_back(pipeline_predict(p, res, t));
        }
        report = make_report(Confusion(gold, pred), p.config.metric_classes);
    } else {
        std::string source;
        PipelineConfig cfg = resolve_config(o, &source);
        ResourceBundle res = load_bundle(o, cfg.features);
        Dataset train = load_labeled(o.train_path, cfg.label_domain, !o.no_dedup);
        Dataset test = load_tsv(o.test_path, cfg.label_domain, /*labeled=*/true);
        report = holdout_eval(train, test, cfg, res, cfg.train.seed);
    }
    write_report_pair(o.out_path, format_report_text(report), format_report_tsv(report));
    std::cout << format_report_text(report);
    return 0;
}

int cmd_cv(const CommonOpts& o, int k) {
    std::string source;
    PipelineConfig cfg = resolve_config(o, &source);
    ResourceBundle res = load_bundle(o, cfg.features);
    Dataset train = load_labeled(o.train_path, cfg.label_domain, !o.no_dedup);

    CvResult result;
    if (!o.dev_path.empty()) {
        Dataset dev = load_labeled(o.dev_path, cfg.label_domain, !o.no_dedup);
        result = augmented_fold_cv(train, dev, k, cfg, res, cfg.train.seed);
    } else {
        result = kfold_cv(train, k, cfg, res, cfg.train.seed);
    }
    write_report_pair(o.out_path, format_cv_text(result), format_cv_tsv(result));
    std::cout << format_cv_text(result);
    return 0;
}

int cmd_ablate(const CommonOpts& o, int k, const std::string& protocol_name,
               const std::vector<std::string>& groups) {
    std::string source;
    PipelineConfig cfg = resolve_config(o, &source);
    ResourceBundle res = load_bundle(o, cfg.features);
    Dataset train = load_labeled(o.train_path, cfg.label_domain, !o.no_dedup);

    Protocol protocol;
    protocol.k = k;
    Dataset second;
    if (protocol_name == "holdout") {
        protocol.kind = Protocol::Kind::holdout;
        if (o.test_path.empty())
            throw std::runtime_error("ablate with holdout protocol needs --test");
        second = load_tsv(o.test_path, cfg.label_domain, /*labeled=*/true);
    } else if (protocol_name == "cv") {
        protocol.kind = Protocol::Kind::cv;
    } else if (protocol_name == "augmented-cv") {
        protocol.kind = Protocol::Kind::augmented_cv;
        if (o.dev_path.empty())
            throw std::runtime_error("ablate with augmented-cv protocol needs --dev");
        second = load_labeled(o.dev_path, cfg.label_domain, !o.no_dedup);
    } else {
        throw std::runtime_error("unknown protocol: " + protocol_name);
    }

    std::vector<std::string> use_groups =
        groups.empty() ? ablation_group_names() : groups;
    auto rows = ablation_run(cfg, use_groups, protocol, train, second, res,
                             cfg.train.seed);
    write_report_pair(o.out_path, format_ablation_text(rows), format_ablation_tsv(rows));
    std::cout << format_ablation_text(rows);
    return 0;
}

int cmd_rank_features(const CommonOpts& o, std::size_t top_k) {
    std::string source;
    PipelineConfig cfg = resolve_config(o, &source);
    ResourceBundle res = load_bundle(o, cfg.features);
    Dataset train = load_labeled(o.train_path, cfg.label_domain, !o.no_dedup);

    auto ranked = mi_rank(train, cfg.features, res, top_k);
    write_report_pair(o.out_path, format_ranking_text(ranked), format_ranking_tsv(ranked));
    std::cout << format_ranking_text(ranked);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tweetclass: linear-SVM tweet classification pipeline"};
    app.require_subcommand(1);

    CommonOpts o;
    int k = 5;
    std::size_t top_k = 50;
    std::string protocol_name = "holdout";
    std::vector<std::string> groups;

    CLI::App* train = app.add_subcommand("train", "train a model and write it to --model");
    add_config_flags(train, o);
    train->add_option("--train", o.train_path, "labeled training TSV")->required();
    train->add_option("--dev", o.dev_path, "labeled dev TSV (joined with --train)");
    train->add_option("--model", o.model_path, "output model file")->required();
    train->add_option("--out", o.out_path, "training log path (default <model>.log)");
    train->add_flag("--no-dedup", o.no_dedup, "skip near-duplicate filtering");

    CLI::App* predict = app.add_subcommand("predict", "label a TSV with a trained model");
    predict->add_option("--model", o.model_path, "trained model file")->required();
    predict->add_option("--test", o.test_path, "unlabeled input TSV (id<TAB>text)")
        ->required();
    predict->add_option("--out", o.out_path, "predictions TSV (id<TAB>class)")->required();
    predict->add_option("--resources-dir", o.resources_dir,
                        "resource directory (or set TWEETCLASS_RESOURCES)");

    CLI::App* eval = app.add_subcommand(
        "eval", "train on --train and report metrics on --test (or score --model)");
    add_config_flags(eval, o);
    eval->add_option("--train", o.train_path, "labeled training TSV");
    eval->add_option("--test", o.test_path, "labeled evaluation TSV")->required();
    eval->add_option("--model", o.model_path, "score an existing model instead");
    eval->add_option("--out", o.out_path, "report path (TSV twin at <out>.tsv)")
        ->required();
    eval->add_flag("--no-dedup", o.no_dedup, "skip near-duplicate filtering");

    CLI::App* cv = app.add_subcommand(
        "cv", "k-fold cross-validation (--dev switches to augmented folds)");
    add_config_flags(cv, o);
    cv->add_option("--train", o.train_path, "labeled training TSV")->required();
    cv->add_option("--dev", o.dev_path, "labeled dev TSV (augmented-fold mode)");
    cv->add_option("--k", k, "fold count (default 5)");
    cv->add_option("--out", o.out_path, "report path (TSV twin at <out>.tsv)")->required();
    cv->add_flag("--no-dedup", o.no_dedup, "skip near-duplicate filtering");

    CLI::App* ablate = app.add_subcommand("ablate", "feature-group ablation study");
    add_config_flags(ablate, o);
    ablate->add_option("--train", o.train_path, "labeled training TSV")->required();
    ablate->add_option("--dev", o.dev_path, "labeled dev TSV (augmented-cv protocol)");
    ablate->add_option("--test", o.test_path, "labeled test TSV (holdout protocol)");
    ablate->add_option("--protocol", protocol_name, "holdout | cv | augmented-cv");
    ablate->add_option("--k", k, "fold count for cv protocols");
    ablate->add_option("--groups", groups, "subset of ablation groups (default: all)")
        ->delimiter(',');
    ablate->add_option("--out", o.out_path, "report path (TSV twin at <out>.tsv)")
        ->required();
    ablate->add_flag("--no-dedup", o.no_dedup, "skip near-duplicate filtering");

    CLI::App* rank = app.add_subcommand(
        "rank-features", "mutual-information ranking of n-gram features");
    add_config_flags(rank, o);
    rank->add_option("--train", o.train_path, "labeled training TSV")->required();
    rank->add_option("--top", top_k, "how many features to list (default 50)");
    rank->add_option("--out", o.out_path, "report path (TSV twin at <out>.tsv)")
        ->required();
    rank->add_flag("--no-dedup", o.no_dedup, "skip near-duplicate filtering");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) return cmd_train(o);
        if (predict->parsed()) return cmd_predict(o);
        if (eval->parsed()) return cmd_eval(o);
        if (cv->parsed()) return cmd_cv(o, k);
        if (ablate->parsed()) return cmd_ablate(o, k, protocol_name, groups);
        if (rank->parsed()) return cmd_rank_features(o, top_k);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
