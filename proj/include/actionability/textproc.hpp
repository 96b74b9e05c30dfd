#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace actionability {

struct TokenizedDocument {
    std::vector<std::string> tokens;  // lowercase, whitespace-free
    std::map<std::string, int> term_freq;
    std::size_t char_length = 0;  // unicode scalar count of the original text
    std::size_t word_count = 0;
};

enum class Marker { question, exclaim, via, rt, at, hash, url };

std::string to_string(Marker marker);

struct MarkerOccurrence {
    Marker marker;
    int ordinal = 0;           // 0 = first occurrence of this marker type
    std::size_t char_index = 0;  // code point position in the original text
};

enum class EmoticonKind { western, kaomoji, emoji };
enum class Polarity { positive, negative, neutral, unknown };

struct EmoticonHit {
    std::string surface;
    EmoticonKind kind = EmoticonKind::western;
    std::optional<std::string> description;
    Polarity polarity = Polarity::unknown;
    double score = 0.0;
};

struct CatalogEntry {
    EmoticonKind kind;
    std::string description;
};

/// Surface -> kind + English description tables for western emoticons,
/// kaomoji, and emoji.
struct EmoticonCatalogs {
    std::map<std::string, CatalogEntry> entries;

    void load_file(const std::string& path);
    void load_stream(std::istream& in, const std::string& origin);
    std::size_t size() const { return entries.size(); }
};

struct ReadabilityCounts {
    std::size_t sentences = 1;
    std::size_t words = 0;
    std::size_t difficult_words = 0;
    std::size_t syllables = 0;
};

/// Lowercasing word splitter for short social text. Splits on
/// non-letter/non-digit boundaries but keeps `#tag` and `@handle` whole,
/// keeps apostrophes inside words, folds URLs to a single `url` placeholder
/// token, and drops emoticon-shaped spans from the token stream.
TokenizedDocument tokenize(const std::string& text);

/// Scans for `?` `!` `@` `#` characters, standalone `via`/`rt` words, and
/// URLs. Occurrences are ordered by position; ordinals count per marker type.
std::vector<MarkerOccurrence> extract_markers(const std::string& text);

/// Catalog lookup (longest match first) plus a mouth-character fallback for
/// emoticon-shaped spans the catalogs do not know.
std::vector<EmoticonHit> detect_emoticons(const std::string& text,
                                          const EmoticonCatalogs& catalogs);

using WordSet = std::set<std::string>;

WordSet load_easy_words(const std::string& path);
WordSet load_easy_words_stream(std::istream& in);

/// Sentence/word/difficult-word/syllable counts for the readability scores.
/// Sentences split on runs of `.!?` (minimum 1); words are alphabetic tokens;
/// difficult words are exact lowercase misses against the easy list;
/// syllables use a vowel-run heuristic with a silent trailing `e` rule.
ReadabilityCounts readability_counts(const std::string& text, const WordSet& easy_words);

namespace unicode {

/// Decodes UTF-8; invalid bytes come back as U+FFFD so no input can abort.
std::vector<char32_t> decode_utf8(const std::string& text);
std::string encode_utf8(const std::u32string& points);
std::string encode_utf8(char32_t point);

bool is_word_char(char32_t point);
bool is_emoji(char32_t point);

}  // namespace unicode

}  // namespace actionability
