#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "actionability/metrics.hpp"
#include "actionability/rng.hpp"

using namespace actionability;

namespace {

/// Independent oracle: MI via the entropy identity H(F) + H(A) - H(F,A),
/// a different algebraic route than the plug-in sum.
double mi_entropy_oracle(const std::vector<bool>& firings,
                         const std::vector<bool>& labels) {
    auto entropy = [](const std::vector<double>& probs) {
        double h = 0.0;
        for (double p : probs) {
            if (p > 0.0) h -= p * std::log2(p);
        }
        return h;
    };
    double n = static_cast<double>(firings.size());
    double c[2][2] = {{0, 0}, {0, 0}};
    for (std::size_t i = 0; i < firings.size(); ++i) {
        c[firings[i] ? 1 : 0][labels[i] ? 1 : 0] += 1.0;
    }
    std::vector<double> pf = {(c[0][0] + c[0][1]) / n, (c[1][0] + c[1][1]) / n};
    std::vector<double> pa = {(c[0][0] + c[1][0]) / n, (c[0][1] + c[1][1]) / n};
    std::vector<double> pj = {c[0][0] / n, c[0][1] / n, c[1][0] / n, c[1][1] / n};
    return entropy(pf) + entropy(pa) - entropy(pj);
}

}  // namespace

TEST_CASE("precision recall F accuracy from a symmetric confusion") {
    ConfusionCounts counts{8, 2, 8, 2};
    ClassifierMetrics metrics = prf_accuracy(counts);
    CHECK(metrics.precision == doctest::Approx(0.8));
    CHECK(metrics.recall == doctest::Approx(0.8));
    CHECK(metrics.f == doctest::Approx(0.8));
    CHECK(metrics.accuracy == doctest::Approx(0.8));
}

TEST_CASE("a perfect classifier scores one everywhere") {
    ConfusionCounts counts{10, 0, 10, 0};
    ClassifierMetrics metrics = prf_accuracy(counts);
    CHECK(metrics.precision == 1.0);
    CHECK(metrics.recall == 1.0);
    CHECK(metrics.f == 1.0);
    CHECK(metrics.accuracy == 1.0);
}

TEST_CASE("zero denominators resolve to zero") {
    ConfusionCounts counts;
    counts.tn = 5;
    counts.fn = 5;  // positives exist, none predicted
    ClassifierMetrics metrics = prf_accuracy(counts);
    CHECK(metrics.precision == 0.0);
    CHECK(metrics.recall == 0.0);
    CHECK(metrics.f == 0.0);
    CHECK(metrics.accuracy == doctest::Approx(0.5));
}

TEST_CASE("empty confusion counts are an error") {
    CHECK_THROWS_AS(prf_accuracy(ConfusionCounts{}), std::invalid_argument);
}

TEST_CASE("population weighting follows the weighted mean") {
    DomainReport small;
    small.domain = DomainKey{"a", "en", "tw"};
    small.population = 100;
    small.metrics.f = 0.8;
    small.metrics.accuracy = 0.9;
    DomainReport large;
    large.domain = DomainKey{"b", "en", "tw"};
    large.population = 300;
    large.metrics.f = 0.6;
    large.metrics.accuracy = 0.7;
    WeightedMetrics weighted = weighted_aggregate({small, large});
    CHECK(weighted.f_weighted == doctest::Approx(0.65));
    CHECK(weighted.accuracy_weighted == doctest::Approx(0.75));
}

TEST_CASE("single domain weighting is the identity") {
    DomainReport only;
    only.domain = DomainKey{"a", "en", "tw"};
    only.population = 42;
    only.metrics.f = 0.77;
    only.metrics.accuracy = 0.71;
    WeightedMetrics weighted = weighted_aggregate({only});
    CHECK(weighted.f_weighted == doctest::Approx(0.77));
    CHECK(weighted.accuracy_weighted == doctest::Approx(0.71));
}

TEST_CASE("equal populations reduce to the unweighted mean") {
    std::vector<DomainReport> reports(4);
    double f_sum = 0.0;
    Rng rng(5);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        reports[i].domain = DomainKey{"c" + std::to_string(i), "en", "tw"};
        reports[i].population = 50;
        reports[i].metrics.f = rng.real();
        f_sum += reports[i].metrics.f;
    }
    WeightedMetrics weighted = weighted_aggregate(reports);
    CHECK(weighted.f_weighted == doctest::Approx(f_sum / 4.0));
}

TEST_CASE("weighted F lies between the per-domain extremes") {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<DomainReport> reports(2 + rng.below(6));
        double low = 1.0, high = 0.0;
        for (std::size_t i = 0; i < reports.size(); ++i) {
            reports[i].domain = DomainKey{"c" + std::to_string(i), "en", "tw"};
            reports[i].population = 1 + rng.below(1000);
            reports[i].metrics.f = rng.real();
            low = std::min(low, reports[i].metrics.f);
            high = std::max(high, reports[i].metrics.f);
        }
        WeightedMetrics weighted = weighted_aggregate(reports);
        CHECK(weighted.f_weighted >= low - 1e-12);
        CHECK(weighted.f_weighted <= high + 1e-12);
    }
}

TEST_CASE("weighted aggregation rejects bad input") {
    CHECK_THROWS_AS(weighted_aggregate({}), std::invalid_argument);
    DomainReport zero;
    zero.domain = DomainKey{"z", "en", "tw"};
    zero.population = 0;
    CHECK_THROWS_AS(weighted_aggregate({zero}), std::invalid_argument);
}

TEST_CASE("a perfectly predictive feature on balanced labels carries one bit") {
    std::vector<bool> labels, firings;
    for (int i = 0; i < 1000; ++i) {
        bool label = i % 2 == 0;
        labels.push_back(label);
        firings.push_back(label);
    }
    CHECK(mutual_information(firings, labels) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a constant feature carries no information") {
    std::vector<bool> labels, firings;
    for (int i = 0; i < 100; ++i) {
        labels.push_back(i % 2 == 0);
        firings.push_back(true);
    }
    CHECK(mutual_information(firings, labels) == doctest::Approx(0.0));
}

TEST_CASE("the (45,5,5,45) table carries about 0.531 bits") {
    std::vector<bool> firings, labels;
    auto add = [&](bool f, bool a, int count) {
        for (int i = 0; i < count; ++i) {
            firings.push_back(f);
            labels.push_back(a);
        }
    };
    add(true, true, 45);
    add(true, false, 5);
    add(false, true, 5);
    add(false, false, 45);
    double mi = mutual_information(firings, labels);
    // 0.9*log2(1.8) + 0.1*log2(0.2)
    double expected = 0.9 * std::log2(1.8) + 0.1 * std::log2(0.2);
    CHECK(mi == doctest::Approx(expected).epsilon(1e-12));
    CHECK(mi == doctest::Approx(0.5310).epsilon(1e-3));
}

TEST_CASE("plug-in MI equals the entropy-identity oracle") {
    Rng rng(2718);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 50 + rng.below(500);
        std::vector<bool> firings, labels;
        double p_fire = rng.real();
        double p_flip = rng.real() * 0.5;
        for (std::size_t i = 0; i < n; ++i) {
            bool label = rng.real() < 0.5;
            bool fire = rng.real() < p_fire ? label : (rng.real() < p_flip);
            labels.push_back(label);
            firings.push_back(fire);
        }
        double mi = mutual_information(firings, labels);
        CHECK(std::abs(mi - mi_entropy_oracle(firings, labels)) < 1e-12);
        // Symmetry of the arguments.
        CHECK(std::abs(mi - mutual_information(labels, firings)) < 1e-12);
        // Bounds: non-negative, at most 1 bit for binary variables.
        CHECK(mi >= -1e-12);
        CHECK(mi <= 1.0 + 1e-12);
    }
}

TEST_CASE("coverage is the firing fraction") {
    std::vector<bool> firings(10000, false);
    for (std::size_t i = 0; i < 1773; ++i) firings[i] = true;
    CHECK(coverage(firings) == doctest::Approx(0.1773));
    CHECK(coverage(std::vector<bool>(5, false)) == 0.0);
    CHECK(coverage(std::vector<bool>(5, true)) == 1.0);
    CHECK_THROWS_AS(coverage({}), std::invalid_argument);
}

TEST_CASE("text tables align columns and emit tsv") {
    TextTable table({"Name", "Value"});
    table.add_row({"short", "1"});
    table.add_row({"a much longer name", "22"});
    std::string aligned = table.aligned();
    CHECK(aligned.find("Name") != std::string::npos);
    CHECK(table.tsv() == "Name\tValue\nshort\t1\na much longer name\t22\n");
}
