#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "actionability/corpus.hpp"
#include "actionability/metrics.hpp"
#include "actionability/selection.hpp"

namespace actionability {

/// One config drives every command; all paths must resolve at run start and
/// fixed seeds make runs fully deterministic.
struct RunConfig {
    std::string corpus_path;
    std::string sentiment_path;
    std::string easy_words_path;
    std::vector<std::string> emoticon_paths;
    std::string registry_dir = "registry";
    std::string report_dir = "reports";
    std::string populations_path;  // optional domain<TAB>count sidecar

    std::uint64_t seed = 42;
    double eval_fraction = 0.2;
    int cv_folds = 5;
    Strategy strategy = Strategy::D;
    std::vector<Technique> techniques = all_techniques();
    Hyperparameters hyperparameters;
    std::size_t min_class_size = 20;
    std::size_t lexicon_min_doc_freq = 2;
    std::uint64_t stamp = 0;  // recorded in persisted artifacts

    SelectionConfig selection_config() const;
};

GlobalResources load_global_resources(const RunConfig& config);

/// Balanced corpus plus its deterministic train/eval partition, and the
/// pre-balance per-domain populations used for weighting.
struct PreparedCorpus {
    LabeledCorpus balanced;
    LabeledCorpus train;
    LabeledCorpus eval;
    std::map<DomainKey, std::size_t> populations;
    BalanceReport balance_report;
    std::vector<DomainKey> train_only_domains;
};

PreparedCorpus prepare_corpus(const LabeledCorpus& raw, const RunConfig& config);

std::map<DomainKey, std::size_t> load_populations_file(const std::string& path);
void write_populations_file(const std::map<DomainKey, std::size_t>& populations,
                            const std::string& path);

struct SelectionRun {
    ModelRegistry registry;
    std::vector<SelectedModel> selections;
    /// One candidate set per target, reusable for other strategies.
    std::vector<ModelCandidateSet> candidate_sets;
    std::vector<DomainKey> skipped_targets;
};

/// Trains candidates for every fully specified domain in the train split and
/// selects per the strategy. Targets whose candidate set cannot satisfy the
/// strategy are skipped and reported.
SelectionRun run_selection(const PreparedCorpus& prepared,
                           const GlobalResources& resources, const RunConfig& config);

/// Re-selects with a different strategy from already-trained candidates.
std::vector<SelectedModel> reselect(const SelectionRun& run, Strategy strategy,
                                    std::vector<DomainKey>* skipped = nullptr);

/// Held-out evaluation of selected models, one report row per target domain.
EvaluationReport evaluate_selections(const std::vector<SelectedModel>& selections,
                                     const LabeledCorpus& train_corpus,
                                     const LabeledCorpus& eval_corpus,
                                     const std::map<DomainKey, std::size_t>& populations,
                                     const GlobalResources& resources);

std::string format_evaluation(const EvaluationReport& report, const std::string& title);
std::string evaluation_tsv(const EvaluationReport& report);

struct ClassifiedRow {
    std::string id;
    std::optional<Label> label;  // empty when no model covers the domain
    double score = 0.0;
};

/// Scores a message file against the registry. Messages from domains absent
/// from the registry are returned unlabeled and counted by the caller.
std::vector<ClassifiedRow> classify_messages(const ModelRegistry& registry,
                                             const std::vector<Message>& messages,
                                             const GlobalResources& resources);

struct MiReportRow {
    std::string feature;
    double mi_bits = 0.0;
    double coverage = 0.0;
};

/// Table-II-style mutual information and coverage over the train split,
/// using each message's own-domain lexicons.
std::vector<MiReportRow> mi_report(const PreparedCorpus& prepared,
                                   const GlobalResources& resources,
                                   const RunConfig& config);
std::string format_mi_report(const std::vector<MiReportRow>& rows);
std::string mi_report_tsv(const std::vector<MiReportRow>& rows);

}  // namespace actionability
