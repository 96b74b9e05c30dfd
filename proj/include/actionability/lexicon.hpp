#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "actionability/corpus.hpp"
#include "actionability/domain.hpp"

namespace actionability {

/// Per-(domain,label) document-frequency statistics.
struct TermStats {
    DomainKey domain;
    Label label = Label::actionable;
    std::size_t doc_count = 0;
    std::map<std::string, std::size_t> term_doc_counts;
    /// Nearest-rank 95th percentile of the doc counts (ascending sort,
    /// 1-based rank ceil(0.95 * |T|)).
    std::size_t p95_count = 0;

    /// Normalized document frequency n(t) / |M|.
    double ndf(const std::string& term) const;
};

/// One class's keyword lexicon for a domain: strictly positive scores, and a
/// term scores > 0 in at most one label's lexicon per domain.
struct Lexicon {
    DomainKey domain;
    Label label = Label::actionable;
    std::map<std::string, double> scores;
    std::size_t doc_count = 0;   // provenance, carried into the manifest
    std::size_t p95_count = 0;

    double score(const std::string& term) const {
        auto it = scores.find(term);
        return it == scores.end() ? 0.0 : it->second;
    }
};

struct SentimentLexicon {
    std::map<std::string, double> positive;
    std::map<std::string, double> negative;

    double positive_score(const std::string& term) const {
        auto it = positive.find(term);
        return it == positive.end() ? 0.0 : it->second;
    }
    double negative_score(const std::string& term) const {
        auto it = negative.find(term);
        return it == negative.end() ? 0.0 : it->second;
    }
};

/// Counts, for every term, the documents containing it among the corpus
/// messages matching (domain, label). The domain may be generalized; all
/// matching fully specified domains are pooled. Hash/at tokens are indexed
/// both with and without their sigil. Throws when no document matches.
TermStats build_term_stats(const LabeledCorpus& corpus, const DomainKey& domain,
                           Label label);

/// Adjusted document frequency ln(1 + n(t)) / ln(1 + p95_count):
/// 0 at n = 0, exactly 1 at the 95th-percentile count, unclamped above it.
std::map<std::string, double> compute_adf(const TermStats& stats);

/// Eq-style one-class-per-keyword scores: w_a(t) = adf_a(t) - adf_n(t) where
/// positive, zero otherwise (and symmetrically). Zero scores are omitted.
std::pair<Lexicon, Lexicon> compute_keyword_scores(
    const std::map<std::string, double>& adf_actionable,
    const std::map<std::string, double>& adf_non_actionable);

/// Full build for one domain: stats -> adf -> constrained scores, dropping
/// terms seen in fewer than `min_doc_freq` documents of the winning class.
std::pair<Lexicon, Lexicon> build_lexicons(const LabeledCorpus& corpus,
                                           const DomainKey& domain,
                                           std::size_t min_doc_freq = 2);

struct SentimentLoadReport {
    std::size_t rows = 0;
    std::size_t skipped = 0;
};

/// SentiWordNet-3.0 layout: POS, ID, PosScore, NegScore, SynsetTerms, Gloss
/// (tab separated, `#` comments). Scores sum per bare lowercase term across
/// all rows regardless of part of speech.
SentimentLexicon load_sentiment_lexicon(const std::string& path,
                                        SentimentLoadReport* report = nullptr);
SentimentLexicon load_sentiment_lexicon_stream(std::istream& in,
                                               SentimentLoadReport* report = nullptr);

struct RankedTerm {
    std::size_t rank = 0;  // 1-based
    std::string term;
    double score = 0.0;
};

/// Top-k by descending score, ties broken lexicographically.
std::vector<RankedTerm> top_keywords(const std::map<std::string, double>& scores,
                                     std::size_t k);
std::string format_top_keywords(const std::vector<RankedTerm>& ranked);

struct ScatterRow {
    std::string term;
    double adf_actionable = 0.0;
    double adf_non_actionable = 0.0;
};

/// One row per union-vocabulary term: its adf under each label.
std::vector<ScatterRow> export_scatter(
    const std::map<std::string, double>& adf_actionable,
    const std::map<std::string, double>& adf_non_actionable);
std::string format_scatter(const std::vector<ScatterRow>& rows);

void save_lexicon(const Lexicon& lexicon, std::ostream& out, std::uint64_t stamp);
void save_lexicon_file(const Lexicon& lexicon, const std::string& path, std::uint64_t stamp);
Lexicon load_lexicon(std::istream& in);
Lexicon load_lexicon_file(const std::string& path);

}  // namespace actionability
