#pragma once

#include <cstdint>
#include <vector>

#include "tweetclass/corpus.hpp"
#include "tweetclass/features.hpp"
#include "tweetclass/svm.hpp"

namespace twc {

// Majority-vote ensemble of linear models sharing one feature space.
// Binary members are trained in {-1,+1} space (minority mapped to +1);
// minority_class / majority_class record the corpus labels they stand for.
struct Ensemble {
    std::vector<svm::LinearModel> members;
    std::vector<double> ratios;     // sampling ratio per member
    int minority_class = 1;         // binary vote ties go here
    int majority_class = 0;         // what a -1 verdict maps back to (binary)

    bool binary() const { return members.front().binary; }
};

// Keeps every minority instance and a uniform without-replacement sample of
// floor(ratio * |minority|) majority instances; when the majority is smaller
// than that, everything is kept and *shortfall is set. Output order is
// shuffled with `seed`.
Dataset undersample(const Dataset& d, int minority_class,
                    double ratio_majority_per_minority, std::uint64_t seed,
                    bool* shortfall = nullptr);

// One member per ratio, each trained on an independent undersample drawn
// with seed + member index. `vectors` are the pre-extracted features of
// `d.tweets` over the shared (frozen) space.
Ensemble train_ensemble(const Dataset& d, const std::vector<FeatureVector>& vectors,
                        const std::vector<double>& ratios, const svm::TrainParams& params,
                        int minority_class, std::uint32_t space_size, std::uint64_t seed);

// Plurality vote over member predictions; binary ties favor the minority
// class, multiclass ties the smallest class id.
int ensemble_predict(const Ensemble& e, const FeatureVector& x);

}  // namespace twc
