#include "fol/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fol/kernels.hpp"

namespace fol {

void check_dimension(std::size_t expected, std::size_t actual, const char* what) {
    if (expected != actual) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (expected " +
                                    std::to_string(expected) + ", got " + std::to_string(actual) +
                                    ")");
    }
}

namespace {

void check_label(int y) {
    if (y != 1 && y != -1) {
        throw std::invalid_argument("label must be -1 or +1, got " + std::to_string(y));
    }
}

void check_nonempty(const Dataset& ds) {
    if (ds.empty()) throw std::invalid_argument("dataset is empty");
}

}  // namespace

Dataset::Dataset(std::size_t dimension, std::vector<double> features, std::vector<int> labels)
    : dimension_(dimension), features_(std::move(features)), labels_(std::move(labels)) {
    if (dimension_ == 0) throw std::invalid_argument("dataset dimension must be positive");
    if (features_.size() != labels_.size() * dimension_) {
        throw std::invalid_argument("dataset feature buffer does not match m * d");
    }
    for (int y : labels_) check_label(y);
}

Dataset::Dataset(const std::vector<Example>& examples) {
    if (examples.empty()) throw std::invalid_argument("dataset is empty");
    dimension_ = examples.front().features.size();
    if (dimension_ == 0) throw std::invalid_argument("dataset dimension must be positive");
    features_.reserve(examples.size() * dimension_);
    labels_.reserve(examples.size());
    for (const auto& e : examples) push_back(e);
}

void Dataset::push_back(ExampleRef e) {
    if (dimension_ == 0) dimension_ = e.features.size();
    check_dimension(dimension_, e.features.size(), "Dataset::push_back");
    check_label(e.label);
    features_.insert(features_.end(), e.features.begin(), e.features.end());
    labels_.push_back(e.label);
}

Dataset Dataset::select(std::span<const std::size_t> indices) const {
    std::vector<double> x;
    std::vector<int> y;
    x.reserve(indices.size() * dimension_);
    y.reserve(indices.size());
    for (std::size_t i : indices) {
        if (i >= size()) throw std::out_of_range("Dataset::select index out of range");
        auto row = features(i);
        x.insert(x.end(), row.begin(), row.end());
        y.push_back(labels_[i]);
    }
    return Dataset(dimension_, std::move(x), std::move(y));
}

std::string_view to_string(LossKind kind) {
    switch (kind) {
        case LossKind::ZeroOne: return "zero-one";
        case LossKind::Hinge: return "hinge";
        case LossKind::Logistic: return "logistic";
    }
    return "unknown";
}

LossKind parse_loss_kind(std::string_view name) {
    if (name == "zero-one" || name == "zeroone" || name == "01") return LossKind::ZeroOne;
    if (name == "hinge") return LossKind::Hinge;
    if (name == "logistic") return LossKind::Logistic;
    throw std::invalid_argument("unknown loss kind: " + std::string(name));
}

std::string_view to_string(EnsembleMode mode) {
    return mode == EnsembleMode::Majority ? "majority" : "average";
}

EnsembleMode parse_ensemble_mode(std::string_view name) {
    if (name == "majority") return EnsembleMode::Majority;
    if (name == "average") return EnsembleMode::Average;
    throw std::invalid_argument("unknown ensemble mode: " + std::string(name));
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s;
}

double Hypothesis::margin(std::span<const double> x) const {
    check_dimension(weights.size(), x.size(), "Hypothesis::margin");
    return dot(weights, x);
}

int Hypothesis::classify(std::span<const double> x) const { return margin(x) >= 0.0 ? 1 : -1; }

Hypothesis EnsembleHypothesis::mean() const {
    if (members.empty()) throw std::invalid_argument("ensemble is empty");
    Hypothesis out{std::vector<double>(dimension(), 0.0)};
    for (const auto& h : members) {
        check_dimension(out.weights.size(), h.weights.size(), "EnsembleHypothesis::mean");
        for (std::size_t j = 0; j < h.weights.size(); ++j) out.weights[j] += h.weights[j];
    }
    const double k = static_cast<double>(members.size());
    for (double& w : out.weights) w /= k;
    return out;
}

double EnsembleHypothesis::predict(std::span<const double> x) const {
    if (members.empty()) throw std::invalid_argument("ensemble is empty");
    if (mode == EnsembleMode::Majority) {
        long votes = 0;
        for (const auto& h : members) {
            const double s = h.margin(x);
            votes += (s > 0.0) - (s < 0.0);
        }
        return votes >= 0 ? 1.0 : -1.0;
    }
    double s = 0.0;
    for (const auto& h : members) s += h.margin(x);
    return s / static_cast<double>(members.size());
}

double evaluate_loss_at_margin(LossKind kind, double signed_margin) {
    switch (kind) {
        case LossKind::ZeroOne:
            return signed_margin <= 0.0 ? 1.0 : 0.0;
        case LossKind::Hinge:
            return std::min(1.0, std::max(0.0, 1.0 - signed_margin));
        case LossKind::Logistic: {
            // log(1 + exp(-z)) computed without overflow.
            const double z = -signed_margin;
            const double raw = z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
            return std::min(1.0, raw / std::numbers::ln2);
        }
    }
    return 1.0;
}

double surrogate_slope(LossKind kind, double signed_margin) {
    switch (kind) {
        case LossKind::ZeroOne:
            return 0.0;
        case LossKind::Hinge:
            return signed_margin < 1.0 ? -1.0 : 0.0;
        case LossKind::Logistic:
            // d/dz log(1+exp(-z)) = -1/(1+exp(z))
            return -1.0 / (1.0 + std::exp(signed_margin));
    }
    return 0.0;
}

double evaluate_loss(LossKind kind, const Hypothesis& h, ExampleRef e) {
    check_dimension(h.weights.size(), e.features.size(), "evaluate_loss");
    return evaluate_loss_at_margin(kind, e.label * dot(h.weights, e.features));
}

namespace {

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

double objective_max(LossKind kind, const Hypothesis& h, const Dataset& ds) {
    check_nonempty(ds);
    return max_of(loss_vector(kind, h, ds));
}

double objective_avg(LossKind kind, const Hypothesis& h, const Dataset& ds) {
    check_nonempty(ds);
    return mean_of(loss_vector(kind, h, ds));
}

double objective_max(LossKind kind, const EnsembleHypothesis& ens, const Dataset& ds) {
    check_nonempty(ds);
    return max_of(ensemble_loss_vector(kind, ens, ds));
}

double objective_avg(LossKind kind, const EnsembleHypothesis& ens, const Dataset& ds) {
    check_nonempty(ds);
    return mean_of(ensemble_loss_vector(kind, ens, ds));
}

std::size_t training_mistakes(const EnsembleHypothesis& ens, const Dataset& ds) {
    if (ens.members.empty()) throw std::invalid_argument("ensemble is empty");
    check_dimension(ens.dimension(), ds.dimension(), "training_mistakes");
    std::size_t mistakes = 0;
    if (ens.mode == EnsembleMode::Majority) {
        std::vector<long> votes(ds.size());
        parallel::vote_sums(ens.members, ds, votes);
        for (std::size_t i = 0; i < ds.size(); ++i) {
            const int pred = votes[i] >= 0 ? 1 : -1;
            mistakes += pred != ds.label(i);
        }
    } else {
        const Hypothesis mean = ens.mean();
        for (std::size_t i = 0; i < ds.size(); ++i) {
            mistakes += mean.classify(ds.features(i)) != ds.label(i);
        }
    }
    return mistakes;
}

std::size_t training_mistakes(const Hypothesis& h, const Dataset& ds) {
    const auto losses = loss_vector(LossKind::ZeroOne, h, ds);
    std::size_t mistakes = 0;
    for (double l : losses) mistakes += l > 0.0;
    return mistakes;
}

}  // namespace fol
