#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tweetclass/features.hpp"

namespace twc::svm {

struct TrainParams {
    double C = 1.0;
    std::map<int, double> class_weights;  // class id -> weight, default 1
    double tolerance = 1e-4;              // duality gap and projected-gradient cap
    int max_iterations = 1000;            // full sweeps
    std::uint64_t seed = 42;

    double weight_of(int label) const;
};

struct ConvergenceInfo {
    int sweeps = 0;
    bool converged = false;
    double primal = 0.0;
    double dual = 0.0;
    double gap() const { return primal - dual; }
};

// Linear model over a frozen feature space. The bias is a regularized
// constant feature: every weight vector has length space_size + 1 and every
// instance carries an implicit trailing 1.
struct LinearModel {
    std::vector<int> labels;                     // binary: {positive, negative}
    bool binary = true;
    std::vector<std::vector<double>> weights;    // one per class; binary: one
    std::uint32_t space_size = 0;

    TrainParams params;
    std::uint64_t data_fingerprint = 0;
    std::vector<ConvergenceInfo> convergence;    // one per trained vector

    int positive_label() const { return labels.front(); }
    int negative_label() const { return labels.back(); }
};

using TrainingSet = std::vector<std::pair<FeatureVector, int>>;

// L2-regularized L1-loss SVM via dual coordinate descent with seeded random
// permutation sweeps. Labels must be exactly {-1, +1}; per-instance cost is
// C * class_weights[label]. Throws on empty or single-class data.
LinearModel train_binary(const TrainingSet& data, const TrainParams& p,
                         std::uint32_t space_size);

// One-vs-rest reduction: for each class c, positives cost C * weight(c) and
// negatives cost C. `labels` fixes the class order; each must occur.
LinearModel train_multiclass(const TrainingSet& data, const TrainParams& p,
                             const std::vector<int>& labels,
                             std::uint32_t space_size);

// Dot product + bias per class; a binary model yields one signed value.
// Throws if any feature id is outside the model's space.
std::vector<double> decision_values(const LinearModel& m, const FeatureVector& x);

// Binary: sign threshold at 0, ties to the positive class. Multiclass:
// argmax of decision values, ties to the smallest class id.
int predict(const LinearModel& m, const FeatureVector& x);

// Weighted soft-margin primal 0.5*||w||^2 + sum_i C_i * hinge_i for a binary
// model; used for solver verification.
double primal_objective(const LinearModel& m, const TrainingSet& data,
                        const TrainParams& p);

std::uint64_t fingerprint(const TrainingSet& data);

namespace detail {

// Raw binary subproblem: labels in {-1,+1} with explicit per-side costs.
struct DcdResult {
    std::vector<double> w;       // length dim + 1 (bias last)
    std::vector<double> alpha;
    ConvergenceInfo info;
    bool box_respected = true;
    // Filled when record_history is set: (primal, dual) after each sweep.
    std::vector<std::pair<double, double>> history;
};

DcdResult solve_dcd(const std::vector<const FeatureVector*>& xs,
                    const std::vector<int>& ys, double c_pos, double c_neg,
                    std::uint32_t dim, double tolerance, int max_sweeps,
                    std::uint64_t seed, bool record_history = false);

}  // namespace detail

}  // namespace twc::svm
