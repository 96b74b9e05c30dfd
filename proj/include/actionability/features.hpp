#pragma once

#include <map>
#include <string>
#include <vector>

#include "actionability/domain.hpp"
#include "actionability/lexicon.hpp"
#include "actionability/textproc.hpp"

namespace actionability {

/// Sparse named feature map; absent features mean 0.
using FeatureVector = std::map<std::string, double>;

inline double feature_value(const FeatureVector& features, const std::string& name) {
    auto it = features.find(name);
    return it == features.end() ? 0.0 : it->second;
}

namespace feat {

inline constexpr const char* lex_actionable = "lex.actionable";
inline constexpr const char* lex_non_actionable = "lex.non_actionable";
inline constexpr const char* lex_positive = "lex.positive";
inline constexpr const char* lex_negative = "lex.negative";
inline constexpr const char* mark_has_url = "mark.has-url";
inline constexpr const char* read_dale_chall = "read.dale_chall";
inline constexpr const char* read_flesch_kincaid = "read.flesch_kincaid";
inline constexpr const char* emo_has_any = "emo.has_any";
inline constexpr const char* emo_positive = "emo.positive";
inline constexpr const char* emo_negative = "emo.negative";
inline constexpr const char* len_chars_100 = "len.chars_100";
inline constexpr const char* len_chars_1000 = "len.chars_1000";
inline constexpr const char* len_gt10c = "len.gt10c";
inline constexpr const char* len_gt100c = "len.gt100c";
inline constexpr const char* len_gt10w = "len.gt10w";
inline constexpr const char* len_gt100w = "len.gt100w";

/// "mark.?-0", "mark.via-1", ...
std::string marker_name(Marker marker, int ordinal);

}  // namespace feat

/// The full fixed name registry (28 names).
const std::vector<std::string>& feature_registry();

/// Everything feature extraction needs for one classification domain.
/// The two class lexicons must belong to the same domain key.
struct DomainResources {
    Lexicon actionable;
    Lexicon non_actionable;
    const SentimentLexicon* sentiment = nullptr;
    const EmoticonCatalogs* catalogs = nullptr;
    const WordSet* easy_words = nullptr;
};

/// Per-word-scaled lexicon dot products: (tf . w) / word_count for each of
/// the four lexicons. Empty documents produce no features.
FeatureVector lexicon_features(const TokenizedDocument& doc,
                               const DomainResources& resources);

/// Positional marker features for the first two occurrences per marker:
/// 1 - index/length for `@`, index/length otherwise; URLs become the binary
/// mark.has-url.
FeatureVector marker_features(const std::vector<MarkerOccurrence>& markers,
                              std::size_t char_length);

/// Dale-Chall and Flesch-Kincaid, as-printed formulas rescaled to [0,1]
/// (clamp to [0,10]/10 and [0,18]/18). English-only; other languages get
/// no readability features.
FeatureVector readability_features(const ReadabilityCounts& counts,
                                   const std::string& language);

/// Presence plus per-polarity amplitudes: described hits sum sentiment
/// scores over their description words; fallback hits contribute a fixed
/// 0.5 to their polarity. Amplitudes clamp to [0,1].
FeatureVector emoticon_features(const std::vector<EmoticonHit>& hits,
                                const SentimentLexicon& sentiment);

/// chars/100, chars/1000 (uncapped) and the four >10/>100 char/word flags.
FeatureVector length_features(const TokenizedDocument& doc);

/// Union of all feature families for one message.
FeatureVector extract(const Message& message, const DomainResources& resources);

}  // namespace actionability
