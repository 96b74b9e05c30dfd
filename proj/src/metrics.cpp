#include "actionability/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace actionability {

ClassifierMetrics prf_accuracy(const ConfusionCounts& counts) {
    if (counts.total() == 0) {
        throw std::invalid_argument("prf_accuracy: empty confusion counts");
    }
    ClassifierMetrics metrics;
    double tp = static_cast<double>(counts.tp);
    if (counts.tp + counts.fp > 0) {
        metrics.precision = tp / static_cast<double>(counts.tp + counts.fp);
    }
    if (counts.tp + counts.fn > 0) {
        metrics.recall = tp / static_cast<double>(counts.tp + counts.fn);
    }
    if (metrics.precision + metrics.recall > 0.0) {
        metrics.f = 2.0 * metrics.precision * metrics.recall /
                    (metrics.precision + metrics.recall);
    }
    metrics.accuracy = static_cast<double>(counts.tp + counts.tn) /
                       static_cast<double>(counts.total());
    return metrics;
}

WeightedMetrics weighted_aggregate(const std::vector<DomainReport>& reports) {
    if (reports.empty()) {
        throw std::invalid_argument("weighted_aggregate: no domain reports");
    }
    double weight_sum = 0.0;
    double f_sum = 0.0;
    double accuracy_sum = 0.0;
    for (const DomainReport& report : reports) {
        if (report.population == 0) {
            throw std::invalid_argument("weighted_aggregate: zero population for " +
                                        report.domain.display());
        }
        double weight = static_cast<double>(report.population);
        weight_sum += weight;
        f_sum += weight * report.metrics.f;
        accuracy_sum += weight * report.metrics.accuracy;
    }
    return WeightedMetrics{f_sum / weight_sum, accuracy_sum / weight_sum};
}

EvaluationReport EvaluationReport::from_domains(std::vector<DomainReport> domains) {
    EvaluationReport report;
    report.domains = std::move(domains);
    if (report.domains.empty()) return report;
    double f_sum = 0.0;
    double accuracy_sum = 0.0;
    for (const DomainReport& domain : report.domains) {
        f_sum += domain.metrics.f;
        accuracy_sum += domain.metrics.accuracy;
    }
    report.f_mean = f_sum / static_cast<double>(report.domains.size());
    report.accuracy_mean = accuracy_sum / static_cast<double>(report.domains.size());
    report.weighted = weighted_aggregate(report.domains);
    return report;
}

double mutual_information(const std::vector<bool>& firings,
                          const std::vector<bool>& labels) {
    if (firings.empty() || firings.size() != labels.size()) {
        throw std::invalid_argument("mutual_information: need matched non-empty vectors");
    }
    double joint[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    for (std::size_t i = 0; i < firings.size(); ++i) {
        joint[firings[i] ? 1 : 0][labels[i] ? 1 : 0] += 1.0;
    }
    double n = static_cast<double>(firings.size());
    double pf[2] = {(joint[0][0] + joint[0][1]) / n, (joint[1][0] + joint[1][1]) / n};
    double pa[2] = {(joint[0][0] + joint[1][0]) / n, (joint[0][1] + joint[1][1]) / n};
    double mi = 0.0;
    for (int f = 0; f < 2; ++f) {
        for (int a = 0; a < 2; ++a) {
            double p = joint[f][a] / n;
            if (p > 0.0) {
                mi += p * std::log2(p / (pf[f] * pa[a]));
            }
        }
    }
    return mi;
}

double coverage(const std::vector<bool>& firings) {
    if (firings.empty()) {
        throw std::invalid_argument("coverage: empty firing vector");
    }
    std::size_t fired = 0;
    for (bool f : firings) {
        if (f) ++fired;
    }
    return static_cast<double>(fired) / static_cast<double>(firings.size());
}

TextTable::TextTable(std::vector<std::string> header) {
    rows_.push_back(std::move(header));
}

void TextTable::add_row(std::vector<std::string> row) {
    rows_.push_back(std::move(row));
}

std::string TextTable::aligned() const {
    std::vector<std::size_t> widths;
    for (const auto& row : rows_) {
        if (widths.size() < row.size()) widths.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i) {
            widths[i] = std::max(widths[i], row[i].size());
        }
    }
    std::ostringstream out;
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << row[i];
            if (i + 1 < row.size()) {
                out << std::string(widths[i] - row[i].size() + 2, ' ');
            }
        }
        out << "\n";
    }
    return out.str();
}

std::string TextTable::tsv() const {
    std::ostringstream out;
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << "\t";
            out << row[i];
        }
        out << "\n";
    }
    return out.str();
}

std::string format_fixed(double value, int digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
    return buffer;
}

}  // namespace actionability
