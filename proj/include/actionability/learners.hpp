#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "actionability/domain.hpp"
#include "actionability/features.hpp"

namespace actionability {

enum class Technique {
    perceptron,
    passive_aggressive,
    confidence_weighted,
    arow,
    scw,
    adagrad_rda,
    logistic,
};

const std::vector<Technique>& all_techniques();
std::string to_string(Technique technique);
std::string display_name(Technique technique);
std::optional<Technique> parse_technique(const std::string& text);

struct Hyperparameters {
    double pa_c = 1.0;           // PA-I aggressiveness
    double cw_eta = 0.9;         // CW/SCW confidence, must lie in (0.5, 1)
    double scw_c = 1.0;
    double arow_r = 1.0;
    double logistic_rate = 0.1;
    double logistic_l2 = 1e-6;
    double adagrad_rate = 0.1;
    double adagrad_l1 = 1e-6;
    int epochs = 10;
    std::uint64_t shuffle_seed = 0;

    void validate() const;  // throws std::invalid_argument
};

struct LabeledExample {
    FeatureVector features;
    int y = 1;  // +1 = actionable, -1 = non_actionable

    static LabeledExample from(FeatureVector features, Label label) {
        return LabeledExample{std::move(features), label == Label::actionable ? 1 : -1};
    }
};

struct TrainedModel {
    Technique technique = Technique::logistic;
    Hyperparameters params;
    std::map<std::string, double> weights;
    double bias = 0.0;
    /// Per-feature auxiliary state: diagonal confidence for CW/AROW/SCW,
    /// (gradient sum, squared-gradient sum) for AdaGrad-RDA.
    std::map<std::string, std::vector<double>> state;
    std::vector<double> bias_state;

    // training metadata
    DomainKey domain;
    std::size_t example_count = 0;
    std::size_t skipped_examples = 0;
    int epochs = 0;
    std::uint64_t seed = 0;
    std::vector<std::size_t> epoch_updates;
};

/// Runs the technique's canonical online update over `epochs` seeded-shuffled
/// passes. Throws when the data is empty or single-class; examples carrying
/// non-finite values are skipped and counted.
TrainedModel train(Technique technique, const Hyperparameters& params,
                   const std::vector<LabeledExample>& data,
                   const DomainKey& domain = {});

/// score = w . x + bias; actionable iff score > 0 (ties go negative).
std::pair<double, Label> predict(const TrainedModel& model, const FeatureVector& features);

/// Classic stratified k-fold cross-validation: trains on k-1 folds, measures
/// F on the held-out fold, returns the mean. Deterministic per seed.
double cross_validate(Technique technique, const Hyperparameters& params,
                      const std::vector<LabeledExample>& data, int k,
                      std::uint64_t seed);

/// Mean F of an already-trained model over stratified folds of `data`.
/// This is how candidate models trained elsewhere are scored on a target
/// domain's training set.
double fold_scored_f(const TrainedModel& model, const std::vector<LabeledExample>& data,
                     int k, std::uint64_t seed);

/// Log-loss of one example under weights w (no regularization), and its
/// analytic gradient. Kept as free functions so finite-difference checks can
/// drive exactly the quantity the logistic trainer steps on.
double logistic_loss(const std::vector<double>& weights, const std::vector<double>& x,
                     int y);
std::vector<double> logistic_gradient(const std::vector<double>& weights,
                                      const std::vector<double>& x, int y);

/// Acklam's rational approximation, used for the CW/SCW confidence quantile.
double inverse_normal_cdf(double p);

void save_model(const TrainedModel& model, std::ostream& out);
void save_model_file(const TrainedModel& model, const std::string& path);
TrainedModel load_model(std::istream& in, const std::string& origin = "model");
TrainedModel load_model_file(const std::string& path);

}  // namespace actionability
