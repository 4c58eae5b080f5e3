#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tweetclass/corpus.hpp"
#include "tweetclass/features.hpp"
#include "tweetclass/imbalance.hpp"
#include "tweetclass/svm.hpp"

namespace twc {

struct ImbalanceStrategy {
    enum class Kind { none, undersample, ensemble };
    Kind kind = Kind::none;
    std::vector<double> ratios;   // undersample: one entry; ensemble: one per member
    int minority_class = 1;
};

// Everything a training or evaluation run needs besides the data and the
// resource bundle.
struct PipelineConfig {
    std::set<int> label_domain;
    int positive_class = 1;             // binary tasks: the +1 side
    std::vector<int> metric_classes;    // micro-averaged metric subset
    FeatureConfig features;
    svm::TrainParams train;
    ImbalanceStrategy imbalance;
};

struct TrainedPipeline {
    FeatureSpace space;                 // frozen
    PipelineConfig config;
    std::variant<svm::LinearModel, Ensemble> model;
    std::vector<std::pair<std::string, std::size_t>> embedding_dims;  // table -> d

    bool is_ensemble() const { return model.index() == 1; }
};

// Builds the feature space over `train` (embedding blocks reserved first),
// freezes it, applies the imbalance strategy, and trains the model or
// ensemble. Deterministic for a fixed seed.
TrainedPipeline train_pipeline(const Dataset& train, const PipelineConfig& cfg,
                               const ResourceBundle& res, std::uint64_t seed);

int pipeline_predict(const TrainedPipeline& p, const ResourceBundle& res,
                     const Tweet& tweet);

std::vector<int> pipeline_predict_all(const TrainedPipeline& p,
                                      const ResourceBundle& res, const Dataset& data);

}  // namespace twc
