#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "actionability/corpus.hpp"
#include "actionability/domain.hpp"
#include "actionability/learners.hpp"
#include "actionability/lexicon.hpp"

namespace actionability {

/// The 8 subsets of a fully specified domain's attributes, ordered by
/// descending specificity then fixed (company, language, source) order.
std::vector<DomainKey> enumerate_generalizations(const DomainKey& domain);

struct Candidate {
    DomainKey source;       // the (possibly generalized) training domain
    Technique technique = Technique::logistic;
    std::shared_ptr<const TrainedModel> model;
    std::shared_ptr<const Lexicon> lex_actionable;
    std::shared_ptr<const Lexicon> lex_non_actionable;
    double cv_f = 0.0;      // fold-scored F on the target's training set
    std::size_t training_size = 0;
};

struct ModelCandidateSet {
    DomainKey target;  // fully specified
    std::vector<Candidate> candidates;
    std::size_t target_training_size = 0;
};

enum class Strategy { A, B, C, D };

std::string to_string(Strategy strategy);
std::optional<Strategy> parse_strategy(const std::string& text);

struct SelectedModel {
    DomainKey target;
    DomainKey source;
    Technique technique = Technique::logistic;
    std::shared_ptr<const TrainedModel> model;
    std::shared_ptr<const Lexicon> lex_actionable;
    std::shared_ptr<const Lexicon> lex_non_actionable;
    Strategy strategy = Strategy::D;
    double cv_f = 0.0;
    std::size_t training_size = 0;
};

struct SelectionConfig {
    std::vector<Technique> techniques = all_techniques();
    std::vector<Hyperparameters> grid = {Hyperparameters{}};
    int cv_folds = 5;
    std::size_t min_class_size = 20;  // per-class floor for a candidate domain
    std::size_t lexicon_min_doc_freq = 2;
    std::uint64_t seed = 42;
};

/// Shared lexicon/model/feature work across targets: a generalized domain's
/// lexicons and models do not depend on which target asks for them.
class CandidateCache {
public:
    struct DomainData {
        std::shared_ptr<const Lexicon> lex_actionable;
        std::shared_ptr<const Lexicon> lex_non_actionable;
        std::map<std::pair<Technique, std::size_t>, std::shared_ptr<const TrainedModel>>
            models;
        std::size_t training_size = 0;
        bool usable = false;
    };

    std::map<DomainKey, DomainData> domains;
};

/// Everything train_candidates needs besides the corpus: global sentiment /
/// emoticon / easy-word resources used during feature extraction.
struct GlobalResources {
    SentimentLexicon sentiment;
    EmoticonCatalogs catalogs;
    WordSet easy_words;
};

/// Trains (domain, technique, grid) candidates for one fully specified
/// target over its 8 generalizations, scoring each by fold-averaged F on the
/// target's training messages. Candidate models train on the shared train
/// split, so no target's evaluation messages ever reach them.
ModelCandidateSet train_candidates(const LabeledCorpus& train_corpus,
                                   const DomainKey& target,
                                   const GlobalResources& resources,
                                   const SelectionConfig& config,
                                   CandidateCache* cache = nullptr);

/// A: logistic on the fully specified domain. B: logistic on {}.
/// C: argmax cv_f over logistic candidates. D: argmax over everything.
/// Ties break toward higher specificity, then larger training population,
/// then the fixed technique order. Throws when a required candidate is
/// missing.
SelectedModel select(Strategy strategy, const ModelCandidateSet& candidates);

struct SelectionCensus {
    std::map<std::string, std::size_t> by_category;   // "{c,l,s}" -> count
    std::map<Technique, std::size_t> by_technique;
    std::size_t total = 0;

    std::string format() const;  // aligned tables in Table III/V layout
    std::string tsv() const;
};

SelectionCensus selection_census(const std::vector<SelectedModel>& selections);

struct ModelRegistry {
    std::map<DomainKey, SelectedModel> models;  // keys fully specified
    int version = 1;
    std::uint64_t stamp = 0;
};

/// Writes registry/<version>/ with a hash-carrying manifest and one model
/// file per domain; the directory swap is atomic (build-then-rename).
void persist_registry(const ModelRegistry& registry, const std::string& directory);
ModelRegistry load_registry(const std::string& directory);

}  // namespace actionability
