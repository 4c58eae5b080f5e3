#include "tweetclass/pipeline.hpp"

#include <stdexcept>

namespace twc {
namespace {

std::vector<int> require_labels(const Dataset& d) {
    std::vector<int> labels;
    labels.reserve(d.tweets.size());
    for (const Tweet& t : d.tweets) {
        if (!t.label)
            throw std::invalid_argument("training requires labeled data (tweet '" +
                                        t.id + "' has no label)");
        labels.push_back(*t.label);
    }
    return labels;
}

}  // namespace

TrainedPipeline train_pipeline(const Dataset& train, const PipelineConfig& cfg,
                               const ResourceBundle& res, std::uint64_t seed) {
    if (train.empty()) throw std::invalid_argument("empty training set");
    std::vector<int> labels = require_labels(train);
    for (int y : labels)
        if (!cfg.label_domain.count(y))
            throw std::invalid_argument("label " + std::to_string(y) +
                                        " outside the configured label domain");

    TrainedPipeline p;
    p.config = cfg;
    p.space = FeatureSpace::with_embedding_blocks(cfg.features, res);
    for (const std::string& table : cfg.features.all_embedding_tables())
        p.embedding_dims.emplace_back(table, res.embedding(table).dim);

    // Grow the space over the full training set, then freeze it so every
    // later extraction (sampling, prediction) resolves the same ids.
    std::vector<FeatureVector> vectors;
    vectors.reserve(train.size());
    for (const Tweet& t : train.tweets)
        vectors.push_back(extract(t, cfg.features, res, p.space));
    p.space.freeze();

    svm::TrainParams params = cfg.train;
    params.seed = seed;
    const bool binary = cfg.label_domain.size() == 2;

    if (cfg.imbalance.kind == ImbalanceStrategy::Kind::ensemble) {
        p.model = train_ensemble(train, vectors, cfg.imbalance.ratios, params,
                                 cfg.imbalance.minority_class, p.space.size(), seed);
        return p;
    }

    // Optional single undersample: select indices by sampling a dataset of
    // the same labels through the ensemble machinery, one member, then train
    // one model on it. Reuses train_ensemble to keep the sampling identical.
    if (cfg.imbalance.kind == ImbalanceStrategy::Kind::undersample) {
        if (cfg.imbalance.ratios.size() != 1)
            throw std::invalid_argument("undersample strategy takes exactly one ratio");
        if (binary && cfg.imbalance.minority_class != cfg.positive_class)
            throw std::invalid_argument(
                "binary undersampling requires minority class == positive class");
        Ensemble single = train_ensemble(train, vectors, cfg.imbalance.ratios, params,
                                         cfg.imbalance.minority_class, p.space.size(),
                                         seed);
        p.model = std::move(single.members.front());
        return p;
    }

    svm::TrainingSet data;
    data.reserve(train.size());
    if (binary) {
        std::map<int, double> w;
        w[1] = params.weight_of(cfg.positive_class);
        int negative = 0;
        for (int cls : cfg.label_domain)
            if (cls != cfg.positive_class) negative = cls;
        w[-1] = params.weight_of(negative);
        svm::TrainParams bin_params = params;
        bin_params.class_weights = w;
        for (std::size_t i = 0; i < vectors.size(); ++i)
            data.emplace_back(vectors[i], labels[i] == cfg.positive_class ? 1 : -1);
        p.model = svm::train_binary(data, bin_params, p.space.size());
    } else {
        for (std::size_t i = 0; i < vectors.size(); ++i)
            data.emplace_back(vectors[i], labels[i]);
        std::vector<int> class_order(cfg.label_domain.begin(), cfg.label_domain.end());
        p.model = svm::train_multiclass(data, params, class_order, p.space.size());
    }
    return p;
}

int pipeline_predict(const TrainedPipeline& p, const ResourceBundle& res,
                     const Tweet& tweet) {
    FeatureSpace& space = const_cast<FeatureSpace&>(p.space);  // frozen: extract only reads
    FeatureVector x = extract(tweet, p.config.features, res, space);

    if (p.is_ensemble()) return ensemble_predict(std::get<Ensemble>(p.model), x);

    const svm::LinearModel& m = std::get<svm::LinearModel>(p.model);
    int raw = svm::predict(m, x);
    if (!m.binary) return raw;
    if (raw == 1) return p.config.positive_class;
    for (int cls : p.config.label_domain)
        if (cls != p.config.positive_class) return cls;
    throw std::logic_error("binary pipeline with no negative class in the domain");
}

std::vector<int> pipeline_predict_all(const TrainedPipeline& p,
                                      const ResourceBundle& res, const Dataset& data) {
    std::vector<int> out;
    out.reserve(data.size());
    for (const Tweet& t : data.tweets) out.push_back(pipeline_predict(p, res, t));
    return out;
}

}  // namespace twc
