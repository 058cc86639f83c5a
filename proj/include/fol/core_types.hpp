#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fol {

// Owning example, used when building datasets.
struct Example {
    std::vector<double> features;
    int label = 1;  // -1 or +1
};

// Non-owning view into a Dataset row.
struct ExampleRef {
    std::span<const double> features;
    int label;

    ExampleRef(std::span<const double> x, int y) : features(x), label(y) {}
    ExampleRef(const Example& e) : features(e.features), label(e.label) {}  // NOLINT
};

// Indexed training set with a shared feature dimension. Rows are stored
// contiguously so that the per-example kernels stream through memory.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::size_t dimension, std::vector<double> features, std::vector<int> labels);
    explicit Dataset(const std::vector<Example>& examples);

    std::size_t size() const { return labels_.size(); }
    std::size_t dimension() const { return dimension_; }
    bool empty() const { return labels_.empty(); }

    ExampleRef operator[](std::size_t i) const {
        return {std::span<const double>(features_.data() + i * dimension_, dimension_), labels_[i]};
    }
    std::span<const double> features(std::size_t i) const {
        return {features_.data() + i * dimension_, dimension_};
    }
    int label(std::size_t i) const { return labels_[i]; }

    const std::vector<double>& raw_features() const { return features_; }
    const std::vector<int>& labels() const { return labels_; }

    // Rows picked by index, with repetition allowed.
    Dataset select(std::span<const std::size_t> indices) const;
    void push_back(ExampleRef e);

private:
    std::size_t dimension_ = 0;
    std::vector<double> features_;
    std::vector<int> labels_;
};

enum class LossKind { ZeroOne, Hinge, Logistic };

std::string_view to_string(LossKind kind);
LossKind parse_loss_kind(std::string_view name);

// Linear predictor h_w(x) = <w, x>.
struct Hypothesis {
    std::vector<double> weights;

    std::size_t dimension() const { return weights.size(); }
    double margin(std::span<const double> x) const;
    // +1 when <w,x> >= 0, else -1.
    int classify(std::span<const double> x) const;
};

enum class EnsembleMode { Majority, Average };

std::string_view to_string(EnsembleMode mode);
EnsembleMode parse_ensemble_mode(std::string_view name);

struct EnsembleHypothesis {
    std::vector<Hypothesis> members;
    EnsembleMode mode = EnsembleMode::Majority;

    std::size_t size() const { return members.size(); }
    std::size_t dimension() const { return members.empty() ? 0 : members.front().dimension(); }

    // w_bar = (1/k) sum_j w_j. Throws on an empty ensemble.
    Hypothesis mean() const;

    // Majority: sign of the sum of member votes (a zero inner product abstains),
    // ties go to +1. Average: (1/k) sum_j <w_j, x>.
    double predict(std::span<const double> x) const;
};

// Loss of h on e, always in [0,1]. Hinge and logistic are truncated at 1.
double evaluate_loss(LossKind kind, const Hypothesis& h, ExampleRef e);
double evaluate_loss_at_margin(LossKind kind, double signed_margin);

// Derivative of the untruncated surrogate in z = y<w,x>: the hinge
// max(0, 1 - z) or the natural-log logistic log(1 + exp(-z)). Zero for ZeroOne.
double surrogate_slope(LossKind kind, double signed_margin);

double objective_max(LossKind kind, const Hypothesis& h, const Dataset& ds);
double objective_avg(LossKind kind, const Hypothesis& h, const Dataset& ds);

// Ensemble objectives use the per-example member average (1/k) sum_j loss(w_j).
double objective_max(LossKind kind, const EnsembleHypothesis& ens, const Dataset& ds);
double objective_avg(LossKind kind, const EnsembleHypothesis& ens, const Dataset& ds);

// Training examples where the ensemble prediction disagrees with the label.
std::size_t training_mistakes(const EnsembleHypothesis& ens, const Dataset& ds);
std::size_t training_mistakes(const Hypothesis& h, const Dataset& ds);

double dot(std::span<const double> a, std::span<const double> b);

void check_dimension(std::size_t expected, std::size_t actual, const char* what);

}  // namespace fol
