#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "actionability/domain.hpp"

namespace actionability {

/// Labeled message collection indexed by fully specified domain.
/// Immutable by convention once built; every operation returns a new corpus.
struct LabeledCorpus {
    std::vector<Message> messages;
    /// Fully specified domain -> indices into `messages`, in ingestion order.
    std::map<DomainKey, std::vector<std::size_t>> index;

    std::size_t size() const { return messages.size(); }
    bool empty() const { return messages.empty(); }

    /// Indices of all messages matched by a (possibly generalized) key.
    std::vector<std::size_t> select(const DomainKey& key) const;

    /// Per-label counts within one fully specified domain.
    std::pair<std::size_t, std::size_t> class_counts(const DomainKey& key) const;

    static LabeledCorpus from_messages(std::vector<Message> messages);
};

struct IngestReport {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::map<DomainKey, std::pair<std::size_t, std::size_t>> domain_counts;

    std::string summary() const;
};

/// Reads newline-delimited records (one flat JSON object per line) into a
/// corpus. Malformed records are counted and skipped; duplicate ids keep the
/// first occurrence. Throws when no record survives.
LabeledCorpus ingest(std::istream& records, IngestReport& report);
LabeledCorpus ingest_file(const std::string& path, IngestReport& report);

/// Serializes in the same newline-delimited format ingest reads.
void write_corpus(const LabeledCorpus& corpus, std::ostream& out);
void write_corpus_file(const LabeledCorpus& corpus, const std::string& path);

struct BalanceReport {
    std::vector<DomainKey> dropped_domains;
    std::size_t removed_messages = 0;
};

/// Downsamples the majority class per fully specified domain so both classes
/// have exactly min(|actionable|, |non_actionable|) messages. Domains missing
/// a class entirely are dropped.
LabeledCorpus balance(const LabeledCorpus& corpus, std::uint64_t seed,
                      BalanceReport* report = nullptr);

struct SplitResult {
    LabeledCorpus train;
    LabeledCorpus eval;
    /// Domains routed entirely to train because a (domain,label) cell had
    /// fewer than 2 messages.
    std::vector<DomainKey> train_only_domains;
};

/// Stratified per (domain, label) partition. Every message lands in exactly
/// one side; eval gets round(cell * eval_fraction) clamped to [1, cell-1]
/// messages per cell.
SplitResult split(const LabeledCorpus& corpus, double eval_fraction,
                  std::uint64_t seed);

struct SyntheticDomain {
    DomainKey domain;  // must be fully specified
    std::size_t messages = 0;
    /// Total traffic for population weighting; 0 means "same as messages".
    std::size_t population = 0;
    std::vector<std::string> actionable_keywords;
};

struct SyntheticScenario {
    std::vector<SyntheticDomain> domains;
    /// Keyword pools shared by every fully specified domain a generalized
    /// key matches. This is what lets a sparse domain's siblings carry its
    /// actionable vocabulary.
    std::vector<std::pair<DomainKey, std::vector<std::string>>> shared_keywords;
    /// Filler vocabulary for non-planted slots; empty selects a built-in list.
    std::vector<std::string> background_vocabulary;
    /// Probability that a filler slot draws from planted-keyword/junk noise
    /// instead of the background vocabulary.
    double noise_rate = 0.2;
    double marker_rate = 0.0;
    double emoticon_rate = 0.0;
    std::size_t words_per_message = 8;
    /// How many planted keywords an actionable message draws (capped at half
    /// the word slots, minimum 1).
    std::size_t planted_per_actionable = 1;
};

SyntheticScenario load_scenario_file(const std::string& path);

/// Keyword-bag corpus generator. Every actionable message contains at least
/// one planted keyword applicable to its domain; generation is fully
/// determined by the seed.
LabeledCorpus generate_synthetic(const SyntheticScenario& scenario,
                                 std::uint64_t seed);

/// Per-domain population counts declared by a scenario.
std::map<DomainKey, std::size_t> scenario_populations(const SyntheticScenario& scenario);

}  // namespace actionability
