#include "actionability/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "actionability/features.hpp"
#include "actionability/rng.hpp"

namespace actionability {

SelectionConfig RunConfig::selection_config() const {
    SelectionConfig config;
    config.techniques = techniques;
    config.grid = {hyperparameters};
    config.cv_folds = cv_folds;
    config.min_class_size = min_class_size;
    config.lexicon_min_doc_freq = lexicon_min_doc_freq;
    config.seed = seed;
    return config;
}

GlobalResources load_global_resources(const RunConfig& config) {
    GlobalResources resources;
    if (!config.sentiment_path.empty()) {
        resources.sentiment = load_sentiment_lexicon(config.sentiment_path);
    }
    for (const std::string& path : config.emoticon_paths) {
        resources.catalogs.load_file(path);
    }
    if (!config.easy_words_path.empty()) {
        resources.easy_words = load_easy_words(config.easy_words_path);
    }
    return resources;
}

PreparedCorpus prepare_corpus(const LabeledCorpus& raw, const RunConfig& config) {
    PreparedCorpus prepared;
    for (const auto& [domain, indices] : raw.index) {
        prepared.populations[domain] = indices.size();
    }
    if (!config.populations_path.empty()) {
        auto declared = load_populations_file(config.populations_path);
        for (const auto& [domain, population] : declared) {
            prepared.populations[domain] = population;
        }
    }
    prepared.balanced = balance(raw, derive_seed(config.seed, "balance"),
                                &prepared.balance_report);
    SplitResult parts = split(prepared.balanced, config.eval_fraction,
                              derive_seed(config.seed, "split"));
    prepared.train = std::move(parts.train);
    prepared.eval = std::move(parts.eval);
    prepared.train_only_domains = std::move(parts.train_only_domains);
    return prepared;
}

std::map<DomainKey, std::size_t> load_populations_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("populations: cannot open " + path);
    std::map<DomainKey, std::size_t> populations;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw std::runtime_error("populations: " + path + ":" +
                                     std::to_string(line_no) + ": expected domain<TAB>count");
        }
        auto domain = DomainKey::parse(line.substr(0, tab));
        if (!domain) {
            throw std::runtime_error("populations: " + path + ":" +
                                     std::to_string(line_no) + ": bad domain key");
        }
        populations[*domain] = std::stoull(line.substr(tab + 1));
    }
    return populations;
}

void write_populations_file(const std::map<DomainKey, std::size_t>& populations,
                            const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("populations: cannot write " + path);
    for (const auto& [domain, population] : populations) {
        out << domain.machine() << "\t" << population << "\n";
    }
}

SelectionRun run_selection(const PreparedCorpus& prepared,
                           const GlobalResources& resources, const RunConfig& config) {
    SelectionRun run;
    run.registry.version = 1;
    run.registry.stamp = config.stamp;
    SelectionConfig selection = config.selection_config();
    CandidateCache cache;
    for (const auto& [target, indices] : prepared.train.index) {
        ModelCandidateSet candidates;
        try {
            candidates = train_candidates(prepared.train, target, resources, selection,
                                          &cache);
        } catch (const std::runtime_error&) {
            run.skipped_targets.push_back(target);
            continue;
        }
        try {
            SelectedModel selected = select(config.strategy, candidates);
            run.selections.push_back(selected);
            run.registry.models[target] = std::move(selected);
        } catch (const std::runtime_error&) {
            run.skipped_targets.push_back(target);
        }
        run.candidate_sets.push_back(std::move(candidates));
    }
    return run;
}

std::vector<SelectedModel> reselect(const SelectionRun& run, Strategy strategy,
                                    std::vector<DomainKey>* skipped) {
    std::vector<SelectedModel> selections;
    for (const ModelCandidateSet& candidates : run.candidate_sets) {
        try {
            selections.push_back(select(strategy, candidates));
        } catch (const std::runtime_error&) {
            if (skipped) skipped->push_back(candidates.target);
        }
    }
    return selections;
}

EvaluationReport evaluate_selections(const std::vector<SelectedModel>& selections,
                                     const LabeledCorpus& train_corpus,
                                     const LabeledCorpus& eval_corpus,
                                     const std::map<DomainKey, std::size_t>& populations,
                                     const GlobalResources& resources) {
    std::vector<DomainReport> reports;
    for (const SelectedModel& selected : selections) {
        auto eval_it = eval_corpus.index.find(selected.target);
        if (eval_it == eval_corpus.index.end() || eval_it->second.empty()) continue;

        DomainResources domain_resources;
        domain_resources.actionable = *selected.lex_actionable;
        domain_resources.non_actionable = *selected.lex_non_actionable;
        domain_resources.sentiment = &resources.sentiment;
        domain_resources.catalogs = &resources.catalogs;
        domain_resources.easy_words = &resources.easy_words;

        ConfusionCounts counts;
        for (std::size_t i : eval_it->second) {
            const Message& message = eval_corpus.messages[i];
            auto [score, label] = predict(*selected.model, extract(message, domain_resources));
            counts.add(message.label == Label::actionable, label == Label::actionable);
        }

        DomainReport report;
        report.domain = selected.target;
        auto population = populations.find(selected.target);
        report.population =
            population != populations.end() ? population->second : counts.total();
        auto train_it = train_corpus.index.find(selected.target);
        report.training_size =
            train_it != train_corpus.index.end() ? train_it->second.size() : 0;
        report.eval_size = counts.total();
        report.metrics = prf_accuracy(counts);
        reports.push_back(std::move(report));
    }
    std::sort(reports.begin(), reports.end(),
              [](const DomainReport& a, const DomainReport& b) { return a.domain < b.domain; });
    return EvaluationReport::from_domains(std::move(reports));
}

std::string format_evaluation(const EvaluationReport& report, const std::string& title) {
    std::ostringstream out;
    out << title << "\n";
    TextTable table({"Domain", "P", "T", "E", "Prec", "Rec", "F", "A"});
    for (const DomainReport& domain : report.domains) {
        table.add_row({domain.domain.display(), std::to_string(domain.population),
                       std::to_string(domain.training_size), std::to_string(domain.eval_size),
                       format_fixed(domain.metrics.precision, 3),
                       format_fixed(domain.metrics.recall, 3),
                       format_fixed(domain.metrics.f, 3),
                       format_fixed(domain.metrics.accuracy, 3)});
    }
    out << table.aligned();
    out << "\n";
    out << "aggregate F " << format_fixed(report.f_mean, 3) << "  A "
        << format_fixed(report.accuracy_mean, 3) << "  F^W "
        << format_fixed(report.weighted.f_weighted, 3) << "  A^W "
        << format_fixed(report.weighted.accuracy_weighted, 3) << "\n";
    return out.str();
}

std::string evaluation_tsv(const EvaluationReport& report) {
    std::ostringstream out;
    out << "domain\tpopulation\ttrain\teval\tprecision\trecall\tf\taccuracy\n";
    for (const DomainReport& domain : report.domains) {
        out << domain.domain.machine() << "\t" << domain.population << "\t"
            << domain.training_size << "\t" << domain.eval_size << "\t"
            << format_fixed(domain.metrics.precision, 6) << "\t"
            << format_fixed(domain.metrics.recall, 6) << "\t"
            << format_fixed(domain.metrics.f, 6) << "\t"
            << format_fixed(domain.metrics.accuracy, 6) << "\n";
    }
    out << "#aggregate\tF\t" << format_fixed(report.f_mean, 6) << "\tA\t"
        << format_fixed(report.accuracy_mean, 6) << "\tFW\t"
        << format_fixed(report.weighted.f_weighted, 6) << "\tAW\t"
        << format_fixed(report.weighted.accuracy_weighted, 6) << "\n";
    return out.str();
}

std::vector<ClassifiedRow> classify_messages(const ModelRegistry& registry,
                                             const std::vector<Message>& messages,
                                             const GlobalResources& resources) {
    std::vector<ClassifiedRow> rows;
    rows.reserve(messages.size());
    for (const Message& message : messages) {
        ClassifiedRow row;
        row.id = message.id;
        auto it = registry.models.find(message.domain());
        if (it != registry.models.end()) {
            const SelectedModel& selected = it->second;
            DomainResources domain_resources;
            domain_resources.actionable = *selected.lex_actionable;
            domain_resources.non_actionable = *selected.lex_non_actionable;
            domain_resources.sentiment = &resources.sentiment;
            domain_resources.catalogs = &resources.catalogs;
            domain_resources.easy_words = &resources.easy_words;
            auto [score, label] = predict(*selected.model, extract(message, domain_resources));
            row.label = label;
            row.score = score;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<MiReportRow> mi_report(const PreparedCorpus& prepared,
                                   const GlobalResources& resources,
                                   const RunConfig& config) {
    // Per-domain lexicons first, then one firing vector per registry feature.
    std::map<DomainKey, std::pair<Lexicon, Lexicon>> lexicons;
    for (const auto& [domain, indices] : prepared.train.index) {
        auto [count_a, count_n] = prepared.train.class_counts(domain);
        if (count_a == 0 || count_n == 0) continue;
        lexicons[domain] =
            build_lexicons(prepared.train, domain, config.lexicon_min_doc_freq);
    }

    const auto& registry = feature_registry();
    std::vector<std::vector<bool>> firings(registry.size());
    std::vector<bool> labels;
    for (const auto& [domain, lexicon_pair] : lexicons) {
        DomainResources domain_resources;
        domain_resources.actionable = lexicon_pair.first;
        domain_resources.non_actionable = lexicon_pair.second;
        domain_resources.sentiment = &resources.sentiment;
        domain_resources.catalogs = &resources.catalogs;
        domain_resources.easy_words = &resources.easy_words;
        for (std::size_t i : prepared.train.index.at(domain)) {
            const Message& message = prepared.train.messages[i];
            FeatureVector features = extract(message, domain_resources);
            labels.push_back(message.label == Label::actionable);
            for (std::size_t f = 0; f < registry.size(); ++f) {
                firings[f].push_back(feature_value(features, registry[f]) != 0.0);
            }
        }
    }
    if (labels.empty()) {
        throw std::runtime_error("mi_report: no usable training messages");
    }

    std::vector<MiReportRow> rows;
    rows.reserve(registry.size());
    for (std::size_t f = 0; f < registry.size(); ++f) {
        MiReportRow row;
        row.feature = registry[f];
        row.mi_bits = mutual_information(firings[f], labels);
        row.coverage = coverage(firings[f]);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_mi_report(const std::vector<MiReportRow>& rows) {
    std::ostringstream out;
    out << "Mutual Information and Coverage\n";
    TextTable table({"Feature", "MI [1e-3 bits]", "Coverage"});
    for (const MiReportRow& row : rows) {
        table.add_row({row.feature, format_fixed(row.mi_bits * 1000.0, 3),
                       format_fixed(row.coverage * 100.0, 2) + "%"});
    }
    out << table.aligned();
    return out.str();
}

std::string mi_report_tsv(const std::vector<MiReportRow>& rows) {
    std::ostringstream out;
    out << "feature\tmi_bits\tcoverage\n";
    for (const MiReportRow& row : rows) {
        out << row.feature << "\t" << format_fixed(row.mi_bits, 9) << "\t"
            << format_fixed(row.coverage, 6) << "\n";
    }
    return out.str();
}

}  // namespace actionability
