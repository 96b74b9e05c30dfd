#include <doctest.h>

#include <cmath>
#include <sstream>

#include "actionability/features.hpp"
#include "actionability/rng.hpp"

using namespace actionability;

namespace {

DomainResources empty_resources(const SentimentLexicon& sentiment,
                                const EmoticonCatalogs& catalogs, const WordSet& easy) {
    DomainResources resources;
    resources.sentiment = &sentiment;
    resources.catalogs = &catalogs;
    resources.easy_words = &easy;
    return resources;
}

}  // namespace

TEST_CASE("feature registry has the full fixed name set") {
    const auto& registry = feature_registry();
    CHECK(registry.size() == 28);
    CHECK(std::count(registry.begin(), registry.end(), "mark.?-0") == 1);
    CHECK(std::count(registry.begin(), registry.end(), "mark.via-1") == 1);
    CHECK(std::count(registry.begin(), registry.end(), "mark.has-url") == 1);
}

TEST_CASE("lexicon features are per-word-scaled dot products") {
    TokenizedDocument doc = tokenize("password reset password");
    SentimentLexicon sentiment;
    EmoticonCatalogs catalogs;
    WordSet easy;
    DomainResources resources = empty_resources(sentiment, catalogs, easy);
    resources.actionable.scores = {{"password", 0.5}, {"reset", 0.2}};
    FeatureVector features = lexicon_features(doc, resources);
    CHECK(feature_value(features, feat::lex_actionable) == doctest::Approx(0.4));
    CHECK(feature_value(features, feat::lex_non_actionable) == 0.0);
}

TEST_CASE("no lexicon overlap means a zero feature") {
    TokenizedDocument doc = tokenize("totally unrelated words");
    SentimentLexicon sentiment;
    EmoticonCatalogs catalogs;
    WordSet easy;
    DomainResources resources = empty_resources(sentiment, catalogs, easy);
    resources.actionable.scores = {{"password", 0.5}};
    FeatureVector features = lexicon_features(doc, resources);
    CHECK(feature_value(features, feat::lex_actionable) == 0.0);
}

TEST_CASE("empty documents produce no lexicon features") {
    TokenizedDocument doc = tokenize("");
    SentimentLexicon sentiment;
    EmoticonCatalogs catalogs;
    WordSet easy;
    DomainResources resources = empty_resources(sentiment, catalogs, easy);
    resources.actionable.scores = {{"password", 0.5}};
    CHECK(lexicon_features(doc, resources).empty());
}

TEST_CASE("lexicon features are invariant under token permutation") {
    SentimentLexicon sentiment;
    sentiment.positive = {{"good", 0.3}};
    EmoticonCatalogs catalogs;
    WordSet easy;
    DomainResources resources = empty_resources(sentiment, catalogs, easy);
    resources.actionable.scores = {{"password", 0.5}, {"reset", 0.2}};
    FeatureVector a = lexicon_features(tokenize("password good reset extra"), resources);
    FeatureVector b = lexicon_features(tokenize("extra reset good password"), resources);
    CHECK(a == b);
}

TEST_CASE("mention position counts down, other markers count up") {
    // "@acme help?" has 11 code points; @ at 0, ? at 10.
    std::string text = "@acme help?";
    auto markers = extract_markers(text);
    FeatureVector features = marker_features(markers, 11);
    CHECK(feature_value(features, "mark.@-0") == doctest::Approx(1.0));
    CHECK(feature_value(features, "mark.?-0") == doctest::Approx(10.0 / 11.0));
}

TEST_CASE("hash positions follow the index formula") {
    // '#' at indices 0 and 6 in a 10-character text.
    std::string text = "#abcd #ef!";
    auto markers = extract_markers(text);
    FeatureVector features = marker_features(markers, 10);
    CHECK(features.count("mark.#-0") == 0);  // 0/10 = 0 is an absent feature
    CHECK(feature_value(features, "mark.#-0") == doctest::Approx(0.0));
    CHECK(feature_value(features, "mark.#-1") == doctest::Approx(0.6));
}

TEST_CASE("third and later occurrences are ignored") {
    auto markers = extract_markers("a? b? c? d?");
    FeatureVector features = marker_features(markers, 11);
    CHECK(features.count("mark.?-0") == 1);
    CHECK(features.count("mark.?-1") == 1);
    CHECK(features.count("mark.?-2") == 0);
    CHECK(features.count("mark.?-3") == 0);
}

TEST_CASE("urls are a binary presence feature") {
    auto markers = extract_markers("see https://x.co and http://y.io");
    FeatureVector features = marker_features(markers, 32);
    CHECK(feature_value(features, feat::mark_has_url) == 1.0);
}

TEST_CASE("marker positional values stay in the unit interval") {
    Rng rng(99);
    const std::string alphabet = "ab @#?! rt via";
    for (int trial = 0; trial < 200; ++trial) {
        std::string text;
        for (std::size_t i = 0, n = 1 + rng.below(30); i < n; ++i) {
            text += alphabet[rng.below(alphabet.size())];
        }
        TokenizedDocument doc = tokenize(text);
        FeatureVector features = marker_features(extract_markers(text), doc.char_length);
        for (const auto& [name, value] : features) {
            CHECK(value >= 0.0);
            CHECK(value <= 1.0);
        }
    }
}

TEST_CASE("dale-chall matches the printed formula") {
    ReadabilityCounts counts;
    counts.words = 10;
    counts.sentences = 1;
    counts.difficult_words = 2;
    counts.syllables = 12;
    FeatureVector features = readability_features(counts, "en");
    // 0.159 * 0.2 + 0.0496 * 10 = 0.5278, rescaled by /10.
    CHECK(feature_value(features, feat::read_dale_chall) == doctest::Approx(0.05278));
}

TEST_CASE("flesch-kincaid matches the printed formula") {
    ReadabilityCounts counts;
    counts.words = 10;
    counts.sentences = 1;
    counts.difficult_words = 0;
    counts.syllables = 13;
    FeatureVector features = readability_features(counts, "en");
    // 0.39*10 + 11.8*1.3 - 15.59 = 3.65, rescaled by /18.
    CHECK(feature_value(features, feat::read_flesch_kincaid) ==
          doctest::Approx(3.65 / 18.0));
}

TEST_CASE("readability features are english-only") {
    ReadabilityCounts counts;
    counts.words = 10;
    counts.sentences = 1;
    counts.syllables = 13;
    CHECK(readability_features(counts, "es").empty());
    ReadabilityCounts zero;
    zero.words = 0;
    CHECK(readability_features(zero, "en").empty());
}

TEST_CASE("readability rescaling clamps to the score ranges") {
    ReadabilityCounts counts;
    counts.words = 100;
    counts.sentences = 1;   // absurd 100-word sentence
    counts.difficult_words = 100;
    counts.syllables = 400;
    FeatureVector features = readability_features(counts, "en");
    CHECK(feature_value(features, feat::read_dale_chall) <= 1.0);
    CHECK(feature_value(features, feat::read_flesch_kincaid) <= 1.0);
}

TEST_CASE("no emoticons means no emoticon features") {
    SentimentLexicon sentiment;
    CHECK(emoticon_features({}, sentiment).empty());
}

TEST_CASE("fallback emoticons contribute the fixed amplitude") {
    SentimentLexicon sentiment;
    EmoticonHit hit;
    hit.surface = ":^(";
    hit.kind = EmoticonKind::western;
    hit.polarity = Polarity::negative;
    hit.score = 0.5;
    FeatureVector features = emoticon_features({hit}, sentiment);
    CHECK(feature_value(features, feat::emo_has_any) == 1.0);
    CHECK(feature_value(features, feat::emo_negative) == doctest::Approx(0.5));
    CHECK(feature_value(features, feat::emo_positive) == 0.0);
}

TEST_CASE("described emoticons sum sentiment over description words") {
    SentimentLexicon sentiment;
    sentiment.positive = {{"grinning", 0.4}, {"face", 0.1}};
    EmoticonHit hit;
    hit.surface = "\xF0\x9F\x98\x80";
    hit.kind = EmoticonKind::emoji;
    hit.description = "grinning face";
    hit.polarity = Polarity::neutral;
    FeatureVector features = emoticon_features({hit}, sentiment);
    CHECK(feature_value(features, feat::emo_positive) == doctest::Approx(0.5));
}

TEST_CASE("emoticon amplitudes clamp to one") {
    SentimentLexicon sentiment;
    sentiment.negative = {{"sad", 0.9}, {"face", 0.8}};
    EmoticonHit hit;
    hit.surface = ":(";
    hit.kind = EmoticonKind::western;
    hit.description = "sad face";
    hit.polarity = Polarity::negative;
    FeatureVector features = emoticon_features({hit, hit}, sentiment);
    CHECK(feature_value(features, feat::emo_negative) == doctest::Approx(1.0));
}

TEST_CASE("length features follow the scaled and threshold forms") {
    TokenizedDocument doc;
    doc.char_length = 100;
    doc.word_count = 18;
    FeatureVector features = length_features(doc);
    CHECK(feature_value(features, feat::len_chars_100) == doctest::Approx(1.0));
    CHECK(feature_value(features, feat::len_chars_1000) == doctest::Approx(0.1));
    CHECK(feature_value(features, feat::len_gt10c) == 1.0);
    CHECK(feature_value(features, feat::len_gt100c) == 0.0);
    CHECK(feature_value(features, feat::len_gt10w) == 1.0);
    CHECK(feature_value(features, feat::len_gt100w) == 0.0);
}

TEST_CASE("length features vanish on empty text") {
    TokenizedDocument doc = tokenize("");
    CHECK(length_features(doc).empty());
}

TEST_CASE("char scaling is uncapped") {
    TokenizedDocument doc;
    doc.char_length = 250;
    doc.word_count = 1;
    FeatureVector features = length_features(doc);
    CHECK(feature_value(features, feat::len_chars_100) == doctest::Approx(2.5));
}

TEST_CASE("extract composes families and stays deterministic") {
    SentimentLexicon sentiment;
    sentiment.negative = {{"sad", 0.7}};
    EmoticonCatalogs catalogs;
    std::istringstream western(":(\twestern\tsad face\n");
    catalogs.load_stream(western, "western");
    WordSet easy{"help", "my", "account"};

    DomainResources resources = empty_resources(sentiment, catalogs, easy);
    resources.actionable.scores = {{"help", 0.5}};

    Message message;
    message.id = "1";
    message.text = "help my account please! :(";
    message.company = "acme";
    message.language = "en";
    message.source = Source::tw;
    message.label = Label::actionable;

    FeatureVector first = extract(message, resources);
    FeatureVector second = extract(message, resources);
    CHECK(first == second);
    CHECK(feature_value(first, feat::lex_actionable) > 0.0);
    CHECK(feature_value(first, feat::emo_has_any) == 1.0);
    CHECK(feature_value(first, feat::emo_negative) == doctest::Approx(0.7));
    CHECK(first.count("mark.!-0") == 1);
    CHECK(first.count(feat::read_dale_chall) == 1);
    CHECK(feature_value(first, feat::len_gt10c) == 1.0);

    // Same text under different lexicons changes only lex.* values.
    DomainResources other = resources;
    other.actionable.scores = {{"help", 0.9}};
    FeatureVector third = extract(message, other);
    for (const auto& [name, value] : first) {
        if (name.rfind("lex.", 0) == 0) continue;
        CHECK(feature_value(third, name) == doctest::Approx(value));
    }
    CHECK(feature_value(third, feat::lex_actionable) > feature_value(first, feat::lex_actionable));
}

TEST_CASE("extraction stays finite on hostile unicode") {
    SentimentLexicon sentiment;
    EmoticonCatalogs catalogs;
    WordSet easy;
    DomainResources resources = empty_resources(sentiment, catalogs, easy);
    resources.actionable.scores = {{"help", 0.5}};

    Rng rng(4242);
    for (int trial = 0; trial < 500; ++trial) {
        std::string text;
        std::size_t length = rng.below(80);
        for (std::size_t i = 0; i < length; ++i) {
            switch (rng.below(4)) {
                case 0: text += static_cast<char>(rng.below(128)); break;
                case 1: text += static_cast<char>(rng.below(256)); break;
                case 2: {
                    char32_t pts[] = {0x1F600, 0x200B, 0x200F, 0x0627, 0x05D0, 0xFE0F,
                                      0x2019, 0x3042};
                    text += unicode::encode_utf8(pts[rng.below(8)]);
                    break;
                }
                default: text += ' '; break;
            }
        }
        Message message;
        message.id = "f";
        message.text = text;
        message.company = "acme";
        message.language = "en";
        message.source = Source::tw;
        FeatureVector features = extract(message, resources);
        for (const auto& [name, value] : features) {
            CHECK(std::isfinite(value));
        }
    }
}
