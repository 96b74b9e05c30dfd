#include "actionability/learners.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "actionability/metrics.hpp"
#include "actionability/rng.hpp"

namespace actionability {

const std::vector<Technique>& all_techniques() {
    static const std::vector<Technique> techniques = {
        Technique::perceptron,        Technique::passive_aggressive,
        Technique::confidence_weighted, Technique::arow,
        Technique::scw,               Technique::adagrad_rda,
        Technique::logistic,
    };
    return techniques;
}

std::string to_string(Technique technique) {
    switch (technique) {
        case Technique::perceptron: return "perceptron";
        case Technique::passive_aggressive: return "passive_aggressive";
        case Technique::confidence_weighted: return "confidence_weighted";
        case Technique::arow: return "arow";
        case Technique::scw: return "scw";
        case Technique::adagrad_rda: return "adagrad_rda";
        case Technique::logistic: return "logistic";
    }
    return "logistic";
}

std::string display_name(Technique technique) {
    switch (technique) {
        case Technique::perceptron: return "Perceptron";
        case Technique::passive_aggressive: return "Passive Aggressive";
        case Technique::confidence_weighted: return "Confidence Weighted";
        case Technique::arow: return "AROW";
        case Technique::scw: return "Soft Confidence Weighted";
        case Technique::adagrad_rda: return "Adagrad RDA";
        case Technique::logistic: return "Logistic";
    }
    return "Logistic";
}

std::optional<Technique> parse_technique(const std::string& text) {
    for (Technique technique : all_techniques()) {
        if (to_string(technique) == text) return technique;
    }
    return std::nullopt;
}

void Hyperparameters::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) {
            throw std::invalid_argument(std::string("hyperparameters: ") + name +
                                        " must be positive");
        }
    };
    positive(pa_c, "pa_c");
    positive(scw_c, "scw_c");
    positive(arow_r, "arow_r");
    positive(logistic_rate, "logistic_rate");
    positive(adagrad_rate, "adagrad_rate");
    if (logistic_l2 < 0.0 || adagrad_l1 < 0.0) {
        throw std::invalid_argument("hyperparameters: regularizers must be non-negative");
    }
    if (!(cw_eta > 0.5 && cw_eta < 1.0)) {
        throw std::invalid_argument("hyperparameters: cw_eta must lie in (0.5, 1)");
    }
    if (epochs < 1) {
        throw std::invalid_argument("hyperparameters: epochs must be at least 1");
    }
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("inverse_normal_cdf: p must lie in (0,1)");
    }
    // Acklam 2003 rational approximation, ~1e-9 absolute error.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

namespace {

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    double e = std::exp(z);
    return e / (1.0 + e);
}

/// Index 0 is the implicit bias coordinate with value 1.
struct SparseExample {
    std::vector<std::pair<std::size_t, double>> coords;
    int y = 1;
};

struct Indexer {
    std::map<std::string, std::size_t> ids;  // name -> index (>= 1)
    std::vector<std::string> names;          // names[0] unused (bias)

    Indexer() : names(1) {}

    std::size_t id(const std::string& name) {
        auto [it, inserted] = ids.emplace(name, names.size());
        if (inserted) names.push_back(name);
        return it->second;
    }
};

bool convert_example(const LabeledExample& example, Indexer& indexer,
                     SparseExample& out) {
    out.coords.clear();
    out.coords.emplace_back(0, 1.0);
    for (const auto& [name, value] : example.features) {
        if (!std::isfinite(value)) return false;
        if (value == 0.0) continue;
        out.coords.emplace_back(indexer.id(name), value);
    }
    out.y = example.y;
    return true;
}

double dot(const std::vector<double>& w, const SparseExample& x) {
    double sum = 0.0;
    for (const auto& [i, v] : x.coords) sum += w[i] * v;
    return sum;
}

double squared_norm(const SparseExample& x) {
    double sum = 0.0;
    for (const auto& [i, v] : x.coords) sum += v * v;
    return sum;
}

double confidence_dot(const std::vector<double>& sigma, const SparseExample& x) {
    double sum = 0.0;
    for (const auto& [i, v] : x.coords) sum += sigma[i] * v * v;
    return sum;
}

class OnlineLearner {
public:
    virtual ~OnlineLearner() = default;
    virtual void grow(std::size_t size) = 0;
    virtual bool update(const SparseExample& x) = 0;  // true when weights moved
    virtual double margin(const SparseExample& x) const = 0;
    virtual void finalize() {}
    virtual const std::vector<double>& weights() const = 0;
    virtual void export_state(const Indexer& indexer, TrainedModel& model) const {
        (void)indexer;
        (void)model;
    }
};

class VectorLearner : public OnlineLearner {
public:
    void grow(std::size_t size) override {
        if (w_.size() < size) w_.resize(size, 0.0);
    }
    double margin(const SparseExample& x) const override { return x.y * dot(w_, x); }
    const std::vector<double>& weights() const override { return w_; }

protected:
    std::vector<double> w_;
};

class PerceptronLearner : public VectorLearner {
public:
    bool update(const SparseExample& x) override {
        if (margin(x) > 0.0) return false;
        for (const auto& [i, v] : x.coords) w_[i] += x.y * v;
        return true;
    }
};

class PassiveAggressiveLearner : public VectorLearner {
public:
    explicit PassiveAggressiveLearner(double c) : c_(c) {}

    bool update(const SparseExample& x) override {
        double loss = 1.0 - margin(x);
        if (loss <= 0.0) return false;
        double tau = std::min(c_, loss / squared_norm(x));
        for (const auto& [i, v] : x.coords) w_[i] += tau * x.y * v;
        return true;
    }

private:
    double c_;
};

class ConfidenceLearnerBase : public VectorLearner {
public:
    void grow(std::size_t size) override {
        VectorLearner::grow(size);
        if (sigma_.size() < size) sigma_.resize(size, 1.0);
    }

    void export_state(const Indexer& indexer, TrainedModel& model) const override {
        for (std::size_t i = 1; i < sigma_.size(); ++i) {
            model.state[indexer.names[i]] = {sigma_[i]};
        }
        model.bias_state = {sigma_[0]};
    }

protected:
    std::vector<double> sigma_;
};

class ConfidenceWeightedLearner : public ConfidenceLearnerBase {
public:
    explicit ConfidenceWeightedLearner(double eta) : phi_(inverse_normal_cdf(eta)) {}

    bool update(const SparseExample& x) override {
        double m = margin(x);
        double v = confidence_dot(sigma_, x);
        double t = 1.0 + 2.0 * phi_ * m;
        double discriminant = t * t - 8.0 * phi_ * (m - phi_ * v);
        double gamma = (-t + std::sqrt(discriminant)) / (4.0 * phi_ * v);
        double alpha = std::max(gamma, 0.0);
        if (alpha <= 0.0) return false;
        for (const auto& [i, value] : x.coords) {
            w_[i] += alpha * x.y * sigma_[i] * value;
            sigma_[i] = 1.0 / (1.0 / sigma_[i] + 2.0 * alpha * phi_ * value * value);
        }
        return true;
    }

private:
    double phi_;
};

class ArowLearner : public ConfidenceLearnerBase {
public:
    explicit ArowLearner(double r) : r_(r) {}

    bool update(const SparseExample& x) override {
        double m = margin(x);
        if (m >= 1.0) return false;
        double v = confidence_dot(sigma_, x);
        double beta = 1.0 / (v + r_);
        double alpha = (1.0 - m) * beta;
        for (const auto& [i, value] : x.coords) {
            w_[i] += alpha * x.y * sigma_[i] * value;
            double sv = sigma_[i] * value;
            sigma_[i] -= beta * sv * sv;
        }
        return true;
    }

private:
    double r_;
};

class ScwLearner : public ConfidenceLearnerBase {
public:
    ScwLearner(double eta, double c)
        : phi_(inverse_normal_cdf(eta)),
          psi_(1.0 + phi_ * phi_ / 2.0),
          zeta_(1.0 + phi_ * phi_),
          c_(c) {}

    bool update(const SparseExample& x) override {
        double m = margin(x);
        double v = confidence_dot(sigma_, x);
        if (phi_ * std::sqrt(v) - m <= 0.0) return false;
        double alpha = (-m * psi_ + std::sqrt(m * m * std::pow(phi_, 4) / 4.0 +
                                              v * phi_ * phi_ * zeta_)) /
                       (v * zeta_);
        alpha = std::min(c_, std::max(alpha, 0.0));
        if (alpha <= 0.0) return false;
        double avphi = alpha * v * phi_;
        double sqrt_u = (-avphi + std::sqrt(avphi * avphi + 4.0 * v)) / 2.0;
        double beta = alpha * phi_ / (sqrt_u + avphi);
        for (const auto& [i, value] : x.coords) {
            w_[i] += alpha * x.y * sigma_[i] * value;
            double sv = sigma_[i] * value;
            sigma_[i] -= beta * sv * sv;
        }
        return true;
    }

private:
    double phi_, psi_, zeta_, c_;
};

/// Regularized dual averaging with per-coordinate adaptive rates. The weight
/// vector is a closed-form function of the gradient accumulators, so it is
/// materialized lazily on demand.
class AdagradRdaLearner : public OnlineLearner {
public:
    AdagradRdaLearner(double rate, double l1) : rate_(rate), l1_(l1) {}

    void grow(std::size_t size) override {
        if (g_sum_.size() < size) {
            g_sum_.resize(size, 0.0);
            g_sq_.resize(size, 0.0);
            w_.resize(size, 0.0);
        }
    }

    double coordinate(std::size_t i) const {
        double lambda = i == 0 ? 0.0 : l1_;  // bias carries no L1
        double trunc = std::abs(g_sum_[i]) - lambda * static_cast<double>(steps_);
        if (trunc <= 0.0) return 0.0;
        double sign = g_sum_[i] > 0.0 ? 1.0 : -1.0;
        return -sign * rate_ * trunc / (kDelta + std::sqrt(g_sq_[i]));
    }

    double margin(const SparseExample& x) const override {
        double score = 0.0;
        for (const auto& [i, v] : x.coords) score += coordinate(i) * v;
        return x.y * score;
    }

    bool update(const SparseExample& x) override {
        ++steps_;
        bool moved = false;
        if (margin(x) < 1.0) {
            for (const auto& [i, v] : x.coords) {
                double g = -x.y * v;
                g_sum_[i] += g;
                g_sq_[i] += g * g;
            }
            moved = true;
        }
        return moved;
    }

    void finalize() override {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] = coordinate(i);
    }

    const std::vector<double>& weights() const override { return w_; }

    void export_state(const Indexer& indexer, TrainedModel& model) const override {
        for (std::size_t i = 1; i < g_sum_.size(); ++i) {
            model.state[indexer.names[i]] = {g_sum_[i], g_sq_[i]};
        }
        model.bias_state = {g_sum_[0], g_sq_[0], static_cast<double>(steps_)};
    }

private:
    static constexpr double kDelta = 1e-6;
    double rate_, l1_;
    std::uint64_t steps_ = 0;
    std::vector<double> g_sum_, g_sq_, w_;
};

class LogisticLearner : public VectorLearner {
public:
    LogisticLearner(double rate, double l2) : rate_(rate), l2_(l2) {}

    bool update(const SparseExample& x) override {
        double target = x.y > 0 ? 1.0 : 0.0;
        double p = sigmoid(dot(w_, x));
        double g = p - target;
        for (const auto& [i, v] : x.coords) {
            double decay = i == 0 ? 0.0 : l2_ * w_[i];
            w_[i] -= rate_ * (g * v + decay);
        }
        return true;
    }

private:
    double rate_, l2_;
};

std::unique_ptr<OnlineLearner> make_learner(Technique technique,
                                            const Hyperparameters& params) {
    switch (technique) {
        case Technique::perceptron:
            return std::make_unique<PerceptronLearner>();
        case Technique::passive_aggressive:
            return std::make_unique<PassiveAggressiveLearner>(params.pa_c);
        case Technique::confidence_weighted:
            return std::make_unique<ConfidenceWeightedLearner>(params.cw_eta);
        case Technique::arow:
            return std::make_unique<ArowLearner>(params.arow_r);
        case Technique::scw:
            return std::make_unique<ScwLearner>(params.cw_eta, params.scw_c);
        case Technique::adagrad_rda:
            return std::make_unique<AdagradRdaLearner>(params.adagrad_rate,
                                                       params.adagrad_l1);
        case Technique::logistic:
            return std::make_unique<LogisticLearner>(params.logistic_rate,
                                                     params.logistic_l2);
    }
    throw std::invalid_argument("train: unknown technique");
}

}  // namespace

TrainedModel train(Technique technique, const Hyperparameters& params,
                   const std::vector<LabeledExample>& data, const DomainKey& domain) {
    params.validate();
    if (data.empty()) throw std::invalid_argument("train: empty data");

    Indexer indexer;
    std::vector<SparseExample> examples;
    examples.reserve(data.size());
    std::size_t skipped = 0;
    bool has_positive = false;
    bool has_negative = false;
    for (const LabeledExample& example : data) {
        SparseExample sparse;
        if (!convert_example(example, indexer, sparse)) {
            ++skipped;
            continue;
        }
        (sparse.y > 0 ? has_positive : has_negative) = true;
        examples.push_back(std::move(sparse));
    }
    if (examples.empty()) throw std::invalid_argument("train: all examples skipped");
    if (!has_positive || !has_negative) {
        throw std::invalid_argument("train: both classes required");
    }

    auto learner = make_learner(technique, params);
    learner->grow(indexer.names.size());

    TrainedModel model;
    model.technique = technique;
    model.params = params;
    model.domain = domain;
    model.example_count = examples.size();
    model.skipped_examples = skipped;
    model.epochs = params.epochs;
    model.seed = params.shuffle_seed;

    std::vector<std::size_t> order(examples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        Rng rng(derive_seed(params.shuffle_seed, static_cast<std::uint64_t>(epoch)));
        rng.shuffle(order);
        std::size_t updates = 0;
        for (std::size_t i : order) {
            if (learner->update(examples[i])) ++updates;
        }
        model.epoch_updates.push_back(updates);
    }
    learner->finalize();

    const std::vector<double>& w = learner->weights();
    model.bias = w.empty() ? 0.0 : w[0];
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (w[i] != 0.0) model.weights[indexer.names[i]] = w[i];
    }
    learner->export_state(indexer, model);
    return model;
}

std::pair<double, Label> predict(const TrainedModel& model, const FeatureVector& features) {
    double score = model.bias;
    for (const auto& [name, value] : features) {
        auto it = model.weights.find(name);
        if (it != model.weights.end()) score += it->second * value;
    }
    return {score, score > 0.0 ? Label::actionable : Label::non_actionable};
}

namespace {

/// Stratified fold ids (0..k-1) per example, deterministic in the seed.
std::vector<int> stratified_folds(const std::vector<LabeledExample>& data, int k,
                                  std::uint64_t seed) {
    std::vector<std::size_t> positives;
    std::vector<std::size_t> negatives;
    for (std::size_t i = 0; i < data.size(); ++i) {
        (data[i].y > 0 ? positives : negatives).push_back(i);
    }
    if (positives.size() < static_cast<std::size_t>(k) ||
        negatives.size() < static_cast<std::size_t>(k)) {
        throw std::invalid_argument("folds: each class needs at least k examples");
    }
    std::vector<int> fold(data.size(), 0);
    Rng pos_rng(derive_seed(seed, "folds.pos"));
    Rng neg_rng(derive_seed(seed, "folds.neg"));
    pos_rng.shuffle(positives);
    neg_rng.shuffle(negatives);
    for (std::size_t i = 0; i < positives.size(); ++i) {
        fold[positives[i]] = static_cast<int>(i % static_cast<std::size_t>(k));
    }
    for (std::size_t i = 0; i < negatives.size(); ++i) {
        fold[negatives[i]] = static_cast<int>(i % static_cast<std::size_t>(k));
    }
    return fold;
}

}  // namespace

double cross_validate(Technique technique, const Hyperparameters& params,
                      const std::vector<LabeledExample>& data, int k,
                      std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("cross_validate: k must be at least 2");
    std::vector<int> fold = stratified_folds(data, k, seed);
    double f_sum = 0.0;
    for (int f = 0; f < k; ++f) {
        std::vector<LabeledExample> train_part;
        std::vector<const LabeledExample*> eval_part;
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (fold[i] == f) {
                eval_part.push_back(&data[i]);
            } else {
                train_part.push_back(data[i]);
            }
        }
        Hyperparameters fold_params = params;
        fold_params.shuffle_seed = derive_seed(seed, static_cast<std::uint64_t>(f) + 1);
        TrainedModel model = train(technique, fold_params, train_part);
        ConfusionCounts counts;
        for (const LabeledExample* example : eval_part) {
            auto [score, label] = predict(model, example->features);
            counts.add(example->y > 0, label == Label::actionable);
        }
        f_sum += prf_accuracy(counts).f;
    }
    return f_sum / static_cast<double>(k);
}

double fold_scored_f(const TrainedModel& model, const std::vector<LabeledExample>& data,
                     int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("fold_scored_f: k must be at least 2");
    std::vector<int> fold = stratified_folds(data, k, seed);
    double f_sum = 0.0;
    for (int f = 0; f < k; ++f) {
        ConfusionCounts counts;
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (fold[i] != f) continue;
            auto [score, label] = predict(model, data[i].features);
            counts.add(data[i].y > 0, label == Label::actionable);
        }
        f_sum += prf_accuracy(counts).f;
    }
    return f_sum / static_cast<double>(k);
}

double logistic_loss(const std::vector<double>& weights, const std::vector<double>& x,
                     int y) {
    double z = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) z += weights[i] * x[i];
    double m = static_cast<double>(y) * z;
    if (m >= 0.0) {
        return std::log1p(std::exp(-m));
    }
    return -m + std::log1p(std::exp(m));
}

std::vector<double> logistic_gradient(const std::vector<double>& weights,
                                      const std::vector<double>& x, int y) {
    double z = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) z += weights[i] * x[i];
    double factor = -static_cast<double>(y) * sigmoid(-static_cast<double>(y) * z);
    std::vector<double> gradient(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) gradient[i] = factor * x[i];
    return gradient;
}

namespace {

std::string fmt_g17(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

}  // namespace

void save_model(const TrainedModel& model, std::ostream& out) {
    out << "#model\tv1\n";
    out << "technique\t" << to_string(model.technique) << "\n";
    out << "domain\t" << model.domain.machine() << "\n";
    out << "examples\t" << model.example_count << "\n";
    out << "skipped\t" << model.skipped_examples << "\n";
    out << "epochs\t" << model.epochs << "\n";
    out << "seed\t" << model.seed << "\n";
    out << "bias\t" << fmt_g17(model.bias) << "\n";
    const Hyperparameters& p = model.params;
    out << "param\tpa_c\t" << fmt_g17(p.pa_c) << "\n";
    out << "param\tcw_eta\t" << fmt_g17(p.cw_eta) << "\n";
    out << "param\tscw_c\t" << fmt_g17(p.scw_c) << "\n";
    out << "param\tarow_r\t" << fmt_g17(p.arow_r) << "\n";
    out << "param\tlogistic_rate\t" << fmt_g17(p.logistic_rate) << "\n";
    out << "param\tlogistic_l2\t" << fmt_g17(p.logistic_l2) << "\n";
    out << "param\tadagrad_rate\t" << fmt_g17(p.adagrad_rate) << "\n";
    out << "param\tadagrad_l1\t" << fmt_g17(p.adagrad_l1) << "\n";
    out << "param\tepochs\t" << p.epochs << "\n";
    out << "param\tshuffle_seed\t" << p.shuffle_seed << "\n";
    out << "bias_state";
    for (double v : model.bias_state) out << "\t" << fmt_g17(v);
    out << "\n";
    out << "[weights]\n";
    for (const auto& [name, value] : model.weights) {
        out << name << "\t" << fmt_g17(value) << "\n";
    }
    out << "[state]\n";
    for (const auto& [name, values] : model.state) {
        out << name;
        for (double v : values) out << "\t" << fmt_g17(v);
        out << "\n";
    }
    out << "[end]\n";
}

void save_model_file(const TrainedModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_model: cannot open " + path);
    save_model(model, out);
}

TrainedModel load_model(std::istream& in, const std::string& origin) {
    auto fail = [&origin](const std::string& why) -> std::runtime_error {
        return std::runtime_error("load_model: " + origin + ": " + why);
    };
    std::string line;
    if (!std::getline(in, line)) throw fail("empty file");
    if (line != "#model\tv1") {
        if (line.rfind("#model\t", 0) == 0) {
            throw fail("incompatible model version " + line.substr(7));
        }
        throw fail("missing model header");
    }
    TrainedModel model;
    enum class Section { header, weights, state, done };
    Section section = Section::header;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line == "[weights]") { section = Section::weights; continue; }
        if (line == "[state]") { section = Section::state; continue; }
        if (line == "[end]") { section = Section::done; break; }
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t tab = line.find('\t', start);
            if (tab == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
        try {
            if (section == Section::header) {
                const std::string& key = fields[0];
                if (key == "technique") {
                    auto technique = parse_technique(fields.at(1));
                    if (!technique) throw fail("unknown technique " + fields[1]);
                    model.technique = *technique;
                } else if (key == "domain") {
                    auto domain = DomainKey::parse(fields.at(1));
                    if (!domain) throw fail("bad domain " + fields[1]);
                    model.domain = *domain;
                } else if (key == "examples") {
                    model.example_count = std::stoull(fields.at(1));
                } else if (key == "skipped") {
                    model.skipped_examples = std::stoull(fields.at(1));
                } else if (key == "epochs") {
                    model.epochs = std::stoi(fields.at(1));
                } else if (key == "seed") {
                    model.seed = std::stoull(fields.at(1));
                } else if (key == "bias") {
                    model.bias = std::stod(fields.at(1));
                } else if (key == "bias_state") {
                    for (std::size_t i = 1; i < fields.size(); ++i) {
                        model.bias_state.push_back(std::stod(fields[i]));
                    }
                } else if (key == "param") {
                    const std::string& name = fields.at(1);
                    const std::string& value = fields.at(2);
                    Hyperparameters& p = model.params;
                    if (name == "pa_c") p.pa_c = std::stod(value);
                    else if (name == "cw_eta") p.cw_eta = std::stod(value);
                    else if (name == "scw_c") p.scw_c = std::stod(value);
                    else if (name == "arow_r") p.arow_r = std::stod(value);
                    else if (name == "logistic_rate") p.logistic_rate = std::stod(value);
                    else if (name == "logistic_l2") p.logistic_l2 = std::stod(value);
                    else if (name == "adagrad_rate") p.adagrad_rate = std::stod(value);
                    else if (name == "adagrad_l1") p.adagrad_l1 = std::stod(value);
                    else if (name == "epochs") p.epochs = std::stoi(value);
                    else if (name == "shuffle_seed") p.shuffle_seed = std::stoull(value);
                }
            } else if (section == Section::weights) {
                if (fields.size() != 2) throw fail("malformed weight row");
                model.weights[fields[0]] = std::stod(fields[1]);
            } else if (section == Section::state) {
                std::vector<double> values;
                for (std::size_t i = 1; i < fields.size(); ++i) {
                    values.push_back(std::stod(fields[i]));
                }
                model.state[fields[0]] = std::move(values);
            }
        } catch (const std::invalid_argument&) {
            throw fail("malformed numeric field in: " + line);
        } catch (const std::out_of_range&) {
            throw fail("missing field in: " + line);
        }
    }
    if (section != Section::done) throw fail("truncated model (missing [end])");
    return model;
}

TrainedModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_model: cannot open " + path);
    return load_model(in, path);
}

}  // namespace actionability
