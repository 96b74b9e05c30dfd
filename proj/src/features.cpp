#include "actionability/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace actionability {

namespace feat {

std::string marker_name(Marker marker, int ordinal) {
    return "mark." + to_string(marker) + "-" + std::to_string(ordinal);
}

}  // namespace feat

const std::vector<std::string>& feature_registry() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out = {
            feat::lex_actionable, feat::lex_non_actionable,
            feat::lex_positive, feat::lex_negative,
        };
        for (Marker marker : {Marker::question, Marker::exclaim, Marker::rt, Marker::via,
                              Marker::at, Marker::hash}) {
            out.push_back(feat::marker_name(marker, 0));
            out.push_back(feat::marker_name(marker, 1));
        }
        out.push_back(feat::mark_has_url);
        out.push_back(feat::read_dale_chall);
        out.push_back(feat::read_flesch_kincaid);
        out.push_back(feat::emo_has_any);
        out.push_back(feat::emo_positive);
        out.push_back(feat::emo_negative);
        out.push_back(feat::len_chars_100);
        out.push_back(feat::len_chars_1000);
        out.push_back(feat::len_gt10c);
        out.push_back(feat::len_gt100c);
        out.push_back(feat::len_gt10w);
        out.push_back(feat::len_gt100w);
        return out;
    }();
    return names;
}

namespace {

void set_if_nonzero(FeatureVector& features, const std::string& name, double value) {
    if (value != 0.0 && std::isfinite(value)) features[name] = value;
}

double scaled_dot(const TokenizedDocument& doc,
                  const std::map<std::string, double>& weights) {
    if (doc.word_count == 0 || weights.empty()) return 0.0;
    double dot = 0.0;
    for (const auto& [term, count] : doc.term_freq) {
        auto it = weights.find(term);
        if (it != weights.end()) {
            dot += static_cast<double>(count) * it->second;
        }
    }
    return dot / static_cast<double>(doc.word_count);
}

}  // namespace

FeatureVector lexicon_features(const TokenizedDocument& doc,
                               const DomainResources& resources) {
    FeatureVector features;
    if (doc.word_count == 0) return features;
    set_if_nonzero(features, feat::lex_actionable, scaled_dot(doc, resources.actionable.scores));
    set_if_nonzero(features, feat::lex_non_actionable,
                   scaled_dot(doc, resources.non_actionable.scores));
    if (resources.sentiment) {
        set_if_nonzero(features, feat::lex_positive,
                       scaled_dot(doc, resources.sentiment->positive));
        set_if_nonzero(features, feat::lex_negative,
                       scaled_dot(doc, resources.sentiment->negative));
    }
    return features;
}

FeatureVector marker_features(const std::vector<MarkerOccurrence>& markers,
                              std::size_t char_length) {
    FeatureVector features;
    for (const MarkerOccurrence& occurrence : markers) {
        if (occurrence.marker == Marker::url) {
            features[feat::mark_has_url] = 1.0;
            continue;
        }
        if (occurrence.ordinal > 1 || char_length == 0) continue;
        double position = static_cast<double>(occurrence.char_index) /
                          static_cast<double>(char_length);
        double value = occurrence.marker == Marker::at ? 1.0 - position : position;
        set_if_nonzero(features, feat::marker_name(occurrence.marker, occurrence.ordinal),
                       value);
    }
    return features;
}

FeatureVector readability_features(const ReadabilityCounts& counts,
                                   const std::string& language) {
    FeatureVector features;
    if (language != "en" || counts.words == 0) return features;
    double words = static_cast<double>(counts.words);
    double sentences = static_cast<double>(counts.sentences);
    double difficult = static_cast<double>(counts.difficult_words);
    double syllables = static_cast<double>(counts.syllables);

    double dale_chall = 0.159 * (difficult / words) + 0.0496 * (words / sentences);
    double flesch_kincaid =
        0.39 * (words / sentences) + 11.8 * (syllables / words) - 15.59;

    set_if_nonzero(features, feat::read_dale_chall,
                   std::clamp(dale_chall, 0.0, 10.0) / 10.0);
    set_if_nonzero(features, feat::read_flesch_kincaid,
                   std::clamp(flesch_kincaid, 0.0, 18.0) / 18.0);
    return features;
}

FeatureVector emoticon_features(const std::vector<EmoticonHit>& hits,
                                const SentimentLexicon& sentiment) {
    FeatureVector features;
    if (hits.empty()) return features;
    features[feat::emo_has_any] = 1.0;
    double positive = 0.0;
    double negative = 0.0;
    for (const EmoticonHit& hit : hits) {
        if (hit.description) {
            std::istringstream words(*hit.description);
            std::string word;
            while (words >> word) {
                for (char& c : word) {
                    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                }
                positive += sentiment.positive_score(word);
                negative += sentiment.negative_score(word);
            }
        } else if (hit.polarity == Polarity::positive) {
            positive += hit.score;
        } else if (hit.polarity == Polarity::negative) {
            negative += hit.score;
        }
    }
    set_if_nonzero(features, feat::emo_positive, std::clamp(positive, 0.0, 1.0));
    set_if_nonzero(features, feat::emo_negative, std::clamp(negative, 0.0, 1.0));
    return features;
}

FeatureVector length_features(const TokenizedDocument& doc) {
    FeatureVector features;
    double chars = static_cast<double>(doc.char_length);
    set_if_nonzero(features, feat::len_chars_100, chars / 100.0);
    set_if_nonzero(features, feat::len_chars_1000, chars / 1000.0);
    if (doc.char_length > 10) features[feat::len_gt10c] = 1.0;
    if (doc.char_length > 100) features[feat::len_gt100c] = 1.0;
    if (doc.word_count > 10) features[feat::len_gt10w] = 1.0;
    if (doc.word_count > 100) features[feat::len_gt100w] = 1.0;
    return features;
}

FeatureVector extract(const Message& message, const DomainResources& resources) {
    TokenizedDocument doc = tokenize(message.text);
    FeatureVector features = lexicon_features(doc, resources);

    FeatureVector markers = marker_features(extract_markers(message.text), doc.char_length);
    features.insert(markers.begin(), markers.end());

    if (message.language == "en" && resources.easy_words) {
        FeatureVector readability = readability_features(
            readability_counts(message.text, *resources.easy_words), message.language);
        features.insert(readability.begin(), readability.end());
    }

    if (resources.catalogs && resources.sentiment) {
        FeatureVector emoticons = emoticon_features(
            detect_emoticons(message.text, *resources.catalogs), *resources.sentiment);
        features.insert(emoticons.begin(), emoticons.end());
    }

    FeatureVector lengths = length_features(doc);
    features.insert(lengths.begin(), lengths.end());
    return features;
}

}  // namespace actionability
