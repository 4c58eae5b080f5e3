#include "tweetclass/imbalance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "tweetclass/rng.hpp"

namespace twc {
namespace {

// All minority indices plus floor(ratio * |minority|) majority indices drawn
// uniformly without replacement; combined order shuffled.
std::vector<std::size_t> undersample_indices(const std::vector<int>& labels,
                                             int minority_class, double ratio,
                                             std::uint64_t seed, bool* shortfall) {
    if (ratio <= 0.0) throw std::invalid_argument("undersampling ratio must be > 0");
    std::vector<std::size_t> minority, majority;
    for (std::size_t i = 0; i < labels.size(); ++i)
        (labels[i] == minority_class ? minority : majority).push_back(i);
    if (minority.empty())
        throw std::invalid_argument("no instances of minority class " +
                                    std::to_string(minority_class));

    std::size_t want = static_cast<std::size_t>(
        std::floor(ratio * static_cast<double>(minority.size())));
    bool short_on_majority = majority.size() < want;
    if (shortfall) *shortfall = short_on_majority;
    if (short_on_majority) want = majority.size();

    std::mt19937_64 gen(seed);
    // Partial Fisher-Yates: the first `want` slots become the sample.
    for (std::size_t k = 0; k < want; ++k) {
        std::size_t j = k + static_cast<std::size_t>(
                                rng::bounded(gen, majority.size() - k));
        std::swap(majority[k], majority[j]);
    }
    majority.resize(want);

    std::vector<std::size_t> combined = std::move(minority);
    combined.insert(combined.end(), majority.begin(), majority.end());
    rng::shuffle(combined, gen);
    return combined;
}

std::vector<int> dataset_labels(const Dataset& d) {
    std::vector<int> labels;
    labels.reserve(d.tweets.size());
    for (const Tweet& t : d.tweets) {
        if (!t.label)
            throw std::invalid_argument("undersampling requires labeled data (tweet '" +
                                        t.id + "' has no label)");
        labels.push_back(*t.label);
    }
    return labels;
}

}  // namespace

Dataset undersample(const Dataset& d, int minority_class,
                    double ratio_majority_per_minority, std::uint64_t seed,
                    bool* shortfall) {
    std::vector<std::size_t> idx = undersample_indices(
        dataset_labels(d), minority_class, ratio_majority_per_minority, seed, shortfall);
    Dataset out;
    out.label_domain = d.label_domain;
    out.tweets.reserve(idx.size());
    for (std::size_t i : idx) out.tweets.push_back(d.tweets[i]);
    return out;
}

Ensemble train_ensemble(const Dataset& d, const std::vector<FeatureVector>& vectors,
                        const std::vector<double>& ratios, const svm::TrainParams& params,
                        int minority_class, std::uint32_t space_size, std::uint64_t seed) {
    if (ratios.empty()) throw std::invalid_argument("ensemble needs at least one ratio");
    if (vectors.size() != d.tweets.size())
        throw std::invalid_argument("vectors/tweets size mismatch");

    std::vector<int> labels = dataset_labels(d);
    bool binary = d.label_domain.size() == 2;

    Ensemble e;
    e.ratios = ratios;
    e.minority_class = minority_class;
    if (binary) {
        for (int cls : d.label_domain)
            if (cls != minority_class) e.majority_class = cls;
    }

    for (std::size_t member = 0; member < ratios.size(); ++member) {
        std::vector<std::size_t> idx = undersample_indices(
            labels, minority_class, ratios[member], seed + member, nullptr);
        svm::TrainingSet subset;
        subset.reserve(idx.size());
        for (std::size_t i : idx) {
            int y = binary ? (labels[i] == minority_class ? 1 : -1) : labels[i];
            subset.emplace_back(vectors[i], y);
        }
        svm::TrainParams member_params = params;
        member_params.seed = params.seed + member;
        if (binary) {
            // +1 carries the minority class's weight in the subproblem.
            std::map<int, double> w;
            w[1] = params.weight_of(minority_class);
            w[-1] = params.weight_of(e.majority_class);
            member_params.class_weights = w;
            e.members.push_back(svm::train_binary(subset, member_params, space_size));
        } else {
            std::vector<int> class_order(d.label_domain.begin(), d.label_domain.end());
            e.members.push_back(
                svm::train_multiclass(subset, member_params, class_order, space_size));
        }
    }
    return e;
}

int ensemble_predict(const Ensemble& e, const FeatureVector& x) {
    if (e.members.empty()) throw std::invalid_argument("empty ensemble");
    if (e.binary()) {
        std::size_t minority_votes = 0;
        for (const svm::LinearModel& m : e.members)
            if (svm::predict(m, x) == 1) ++minority_votes;
        std::size_t majority_votes = e.members.size() - minority_votes;
        return minority_votes >= majority_votes ? e.minority_class : e.majority_class;
    }
    std::map<int, std::size_t> votes;
    for (const svm::LinearModel& m : e.members) ++votes[svm::predict(m, x)];
    int best_class = votes.begin()->first;
    std::size_t best_votes = votes.begin()->second;
    for (const auto& [cls, n] : votes) {
        if (n > best_votes) {  // ties keep the smallest class id (map order)
            best_class = cls;
            best_votes = n;
        }
    }
    return best_class;
}

}  // namespace twc
