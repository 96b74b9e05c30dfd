#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "actionability/domain.hpp"

namespace actionability {

/// 2x2 confusion counts with actionable as the positive class.
struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }

    void add(bool actual_positive, bool predicted_positive) {
        if (actual_positive) {
            predicted_positive ? ++tp : ++fn;
        } else {
            predicted_positive ? ++fp : ++tn;
        }
    }
};

struct ClassifierMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f = 0.0;
    double accuracy = 0.0;
};

/// P, R, F1, accuracy with the 0/0 -> 0 convention. Throws on empty counts.
ClassifierMetrics prf_accuracy(const ConfusionCounts& counts);

struct DomainReport {
    DomainKey domain;
    std::size_t population = 0;  // labeled + unlabeled traffic for weighting
    std::size_t training_size = 0;
    std::size_t eval_size = 0;
    ClassifierMetrics metrics;
};

struct WeightedMetrics {
    double f_weighted = 0.0;
    double accuracy_weighted = 0.0;
};

/// Population-weighted F and accuracy. Throws on an empty report list or a
/// zero population.
WeightedMetrics weighted_aggregate(const std::vector<DomainReport>& reports);

struct EvaluationReport {
    std::vector<DomainReport> domains;
    double f_mean = 0.0;
    double accuracy_mean = 0.0;
    WeightedMetrics weighted;

    static EvaluationReport from_domains(std::vector<DomainReport> domains);
};

/// Plug-in mutual information in bits between a binary feature firing and
/// the binary label, with the 0 log 0 = 0 convention.
double mutual_information(const std::vector<bool>& firings,
                          const std::vector<bool>& labels);

/// Fraction of messages on which the feature fires.
double coverage(const std::vector<bool>& firings);

/// Simple aligned-column table writer used by the report commands.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> header);
    void add_row(std::vector<std::string> row);
    std::string aligned() const;    // padded human-readable layout
    std::string tsv() const;        // machine form

private:
    std::vector<std::vector<std::string>> rows_;
};

std::string format_fixed(double value, int digits);

}  // namespace actionability
