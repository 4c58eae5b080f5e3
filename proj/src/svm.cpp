#include "tweetclass/svm.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <random>
#include <stdexcept>

#include "tweetclass/rng.hpp"

namespace twc::svm {
namespace {

double dot_with_bias(const std::vector<double>& w, const FeatureVector& x,
                     std::uint32_t dim) {
    double sum = w[dim];  // bias: implicit constant feature 1
    for (const auto& [id, v] : x.entries) sum += w[id] * v;
    return sum;
}

void axpy_with_bias(double a, const FeatureVector& x, std::vector<double>& w,
                    std::uint32_t dim) {
    for (const auto& [id, v] : x.entries) w[id] += a * v;
    w[dim] += a;
}

double l2_norm_squared(const std::vector<double>& w) {
    double sum = 0.0;
    for (double v : w) sum += v * v;
    return sum;
}

struct Objectives {
    double primal;
    double dual;
};

Objectives objectives(const std::vector<const FeatureVector*>& xs,
                      const std::vector<int>& ys, const std::vector<double>& cost,
                      const std::vector<double>& w, const std::vector<double>& alpha,
                      std::uint32_t dim) {
    double wnorm2 = l2_norm_squared(w);
    double hinge = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double margin = 1.0 - ys[i] * dot_with_bias(w, *xs[i], dim);
        if (margin > 0.0) hinge += cost[i] * margin;
    }
    double alpha_sum = std::accumulate(alpha.begin(), alpha.end(), 0.0);
    return {0.5 * wnorm2 + hinge, alpha_sum - 0.5 * wnorm2};
}

void mix(std::uint64_t& h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

}  // namespace

double TrainParams::weight_of(int label) const {
    auto it = class_weights.find(label);
    return it == class_weights.end() ? 1.0 : it->second;
}

namespace detail {

DcdResult solve_dcd(const std::vector<const FeatureVector*>& xs,
                    const std::vector<int>& ys, double c_pos, double c_neg,
                    std::uint32_t dim, double tolerance, int max_sweeps,
                    std::uint64_t seed, bool record_history) {
    if (xs.size() != ys.size()) throw std::invalid_argument("xs/ys size mismatch");
    if (xs.empty()) throw std::invalid_argument("empty training set");
    const std::size_t n = xs.size();

    std::vector<double> cost(n);
    std::vector<double> qd(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (ys[i] != 1 && ys[i] != -1)
            throw std::invalid_argument("labels must be +1 or -1");
        cost[i] = ys[i] == 1 ? c_pos : c_neg;
        qd[i] = xs[i]->l2_squared() + 1.0;  // +1 for the bias feature
    }

    DcdResult r;
    r.w.assign(static_cast<std::size_t>(dim) + 1, 0.0);
    r.alpha.assign(n, 0.0);

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    int sweep = 0;
    bool converged = false;
    while (sweep < max_sweeps) {
        rng::shuffle(order, rng);
        double max_violation = 0.0;
        for (std::size_t pos = 0; pos < n; ++pos) {
            std::size_t i = order[pos];
            const double yi = ys[i];
            const double ci = cost[i];
            double g = yi * dot_with_bias(r.w, *xs[i], dim) - 1.0;

            double pg = 0.0;
            if (r.alpha[i] == 0.0) {
                if (g < 0.0) pg = g;
            } else if (r.alpha[i] == ci) {
                if (g > 0.0) pg = g;
            } else {
                pg = g;
            }
            max_violation = std::max(max_violation, std::fabs(pg));

            if (std::fabs(pg) > 1e-12) {
                double old = r.alpha[i];
                r.alpha[i] = std::min(std::max(old - g / qd[i], 0.0), ci);
                double d = (r.alpha[i] - old) * yi;
                if (d != 0.0) axpy_with_bias(d, *xs[i], r.w, dim);
            }
            if (r.alpha[i] < 0.0 || r.alpha[i] > ci) r.box_respected = false;
        }
        ++sweep;

        Objectives obj = objectives(xs, ys, cost, r.w, r.alpha, dim);
        if (record_history) r.history.emplace_back(obj.primal, obj.dual);
        r.info.primal = obj.primal;
        r.info.dual = obj.dual;
        if (max_violation <= tolerance && obj.primal - obj.dual <= tolerance) {
            converged = true;
            break;
        }
    }
    r.info.sweeps = sweep;
    r.info.converged = converged;
    return r;
}

}  // namespace detail

LinearModel train_binary(const TrainingSet& data, const TrainParams& p,
                         std::uint32_t space_size) {
    if (data.empty()) throw std::invalid_argument("empty training set");
    bool has_pos = false, has_neg = false;
    std::vector<const FeatureVector*> xs;
    std::vector<int> ys;
    xs.reserve(data.size());
    ys.reserve(data.size());
    for (const auto& [x, y] : data) {
        if (y != 1 && y != -1)
            throw std::invalid_argument("train_binary labels must be +1 or -1");
        has_pos = has_pos || y == 1;
        has_neg = has_neg || y == -1;
        xs.push_back(&x);
        ys.push_back(y);
    }
    if (!has_pos || !has_neg)
        throw std::invalid_argument("training set must contain both classes");

    detail::DcdResult r = detail::solve_dcd(
        xs, ys, p.C * p.weight_of(1), p.C * p.weight_of(-1), space_size,
        p.tolerance, p.max_iterations, p.seed);

    LinearModel m;
    m.labels = {1, -1};
    m.binary = true;
    m.weights.push_back(std::move(r.w));
    m.space_size = space_size;
    m.params = p;
    m.data_fingerprint = fingerprint(data);
    m.convergence.push_back(r.info);
    return m;
}

LinearModel train_multiclass(const TrainingSet& data, const TrainParams& p,
                             const std::vector<int>& labels,
                             std::uint32_t space_size) {
    if (data.empty()) throw std::invalid_argument("empty training set");
    if (labels.size() < 2)
        throw std::invalid_argument("multiclass training needs at least two classes");

    std::vector<const FeatureVector*> xs;
    xs.reserve(data.size());
    for (const auto& [x, y] : data) {
        (void)y;
        xs.push_back(&x);
    }

    LinearModel m;
    m.labels = labels;
    m.binary = false;
    m.space_size = space_size;
    m.params = p;
    m.data_fingerprint = fingerprint(data);

    for (std::size_t k = 0; k < labels.size(); ++k) {
        int cls = labels[k];
        std::vector<int> ys;
        ys.reserve(data.size());
        std::size_t positives = 0;
        for (const auto& [x, y] : data) {
            (void)x;
            bool is_pos = y == cls;
            positives += is_pos ? 1 : 0;
            ys.push_back(is_pos ? 1 : -1);
        }
        if (positives == 0 || positives == data.size())
            throw std::invalid_argument("class " + std::to_string(cls) +
                                        " missing or covering all instances");
        detail::DcdResult r = detail::solve_dcd(
            xs, ys, p.C * p.weight_of(cls), p.C, space_size, p.tolerance,
            p.max_iterations, p.seed + k);
        m.weights.push_back(std::move(r.w));
        m.convergence.push_back(r.info);
    }
    return m;
}

std::vector<double> decision_values(const LinearModel& m, const FeatureVector& x) {
    for (const auto& [id, v] : x.entries) {
        (void)v;
        if (id >= m.space_size)
            throw std::out_of_range("feature id " + std::to_string(id) +
                                    " outside model space of size " +
                                    std::to_string(m.space_size));
    }
    std::vector<double> out;
    out.reserve(m.weights.size());
    for (const std::vector<double>& w : m.weights)
        out.push_back(dot_with_bias(w, x, m.space_size));
    return out;
}

int predict(const LinearModel& m, const FeatureVector& x) {
    std::vector<double> dec = decision_values(m, x);
    if (m.binary) return dec[0] >= 0.0 ? m.labels.front() : m.labels.back();
    std::size_t best = 0;
    for (std::size_t k = 1; k < dec.size(); ++k) {
        if (dec[k] > dec[best] ||
            (dec[k] == dec[best] && m.labels[k] < m.labels[best])) {
            best = k;
        }
    }
    return m.labels[best];
}

double primal_objective(const LinearModel& m, const TrainingSet& data,
                        const TrainParams& p) {
    if (!m.binary) throw std::invalid_argument("primal_objective expects a binary model");
    const std::vector<double>& w = m.weights[0];
    double obj = 0.5 * l2_norm_squared(w);
    for (const auto& [x, y] : data) {
        double margin = 1.0 - y * dot_with_bias(w, x, m.space_size);
        if (margin > 0.0) obj += p.C * p.weight_of(y) * margin;
    }
    return obj;
}

std::uint64_t fingerprint(const TrainingSet& data) {
    std::uint64_t h = 1469598103934665603ULL;
    mix(h, data.size());
    for (const auto& [x, y] : data) {
        mix(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(y)));
        mix(h, x.entries.size());
        for (const auto& [id, v] : x.entries) {
            mix(h, id);
            std::uint64_t bits;
            static_assert(sizeof(bits) == sizeof(v));
            std::memcpy(&bits, &v, sizeof(bits));
            mix(h, bits);
        }
    }
    return h;
}

}  // namespace twc::svm
