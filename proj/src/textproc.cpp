#include "actionability/textproc.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace actionability {

namespace unicode {

std::vector<char32_t> decode_utf8(const std::string& text) {
    std::vector<char32_t> points;
    points.reserve(text.size());
    std::size_t i = 0;
    const auto* bytes = reinterpret_cast<const unsigned char*>(text.data());
    while (i < text.size()) {
        unsigned char b = bytes[i];
        char32_t cp = 0xFFFD;
        std::size_t len = 1;
        if (b < 0x80) {
            cp = b;
        } else if ((b & 0xE0) == 0xC0 && i + 1 < text.size() &&
                   (bytes[i + 1] & 0xC0) == 0x80) {
            cp = ((b & 0x1Fu) << 6) | (bytes[i + 1] & 0x3Fu);
            len = 2;
            if (cp < 0x80) cp = 0xFFFD;  // overlong
        } else if ((b & 0xF0) == 0xE0 && i + 2 < text.size() &&
                   (bytes[i + 1] & 0xC0) == 0x80 && (bytes[i + 2] & 0xC0) == 0x80) {
            cp = ((b & 0x0Fu) << 12) | ((bytes[i + 1] & 0x3Fu) << 6) | (bytes[i + 2] & 0x3Fu);
            len = 3;
            if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
        } else if ((b & 0xF8) == 0xF0 && i + 3 < text.size() &&
                   (bytes[i + 1] & 0xC0) == 0x80 && (bytes[i + 2] & 0xC0) == 0x80 &&
                   (bytes[i + 3] & 0xC0) == 0x80) {
            cp = ((b & 0x07u) << 18) | ((bytes[i + 1] & 0x3Fu) << 12) |
                 ((bytes[i + 2] & 0x3Fu) << 6) | (bytes[i + 3] & 0x3Fu);
            len = 4;
            if (cp < 0x10000 || cp > 0x10FFFF) cp = 0xFFFD;
        }
        points.push_back(cp);
        i += len;
    }
    return points;
}

std::string encode_utf8(char32_t point) {
    std::string out;
    if (point < 0x80) {
        out += static_cast<char>(point);
    } else if (point < 0x800) {
        out += static_cast<char>(0xC0 | (point >> 6));
        out += static_cast<char>(0x80 | (point & 0x3F));
    } else if (point < 0x10000) {
        out += static_cast<char>(0xE0 | (point >> 12));
        out += static_cast<char>(0x80 | ((point >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (point & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (point >> 18));
        out += static_cast<char>(0x80 | ((point >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((point >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (point & 0x3F));
    }
    return out;
}

std::string encode_utf8(const std::u32string& points) {
    std::string out;
    for (char32_t point : points) out += encode_utf8(point);
    return out;
}

bool is_emoji(char32_t p) {
    return (p >= 0x1F000 && p <= 0x1FAFF) || (p >= 0x2600 && p <= 0x27BF) ||
           p == 0x2B50 || p == 0x2B55 || p == 0x2B1B || p == 0x2B1C ||
           (p >= 0x2B05 && p <= 0x2B07) || p == 0x2139 || p == 0x3030 ||
           (p >= 0x1FB00 && p <= 0x1FBFF);
}

bool is_word_char(char32_t p) {
    if (p < 0x80) {
        return std::isalnum(static_cast<int>(p)) != 0;
    }
    if (p < 0xC0) return false;            // latin-1 punctuation and controls
    if (p == 0xD7 || p == 0xF7) return false;
    if (p < 0x2000) return true;           // latin ext, greek, cyrillic, semitic, indic, ...
    if (p < 0x2C00) return false;          // general punct, sub/sup, currency, arrows, symbols
    if (p < 0x2E00) return true;
    if (p < 0x3040) return false;          // punct supplement + CJK punct
    if (p < 0xE000) return true;           // CJK, hangul
    if (p < 0xF900) return false;          // private use
    if (p < 0xFE00) return true;
    if (p < 0xFE70) return false;          // variation selectors, small forms
    if (p == 0xFEFF) return false;
    if (p < 0xFF00) return true;
    if (p <= 0xFF0F || (p >= 0xFF1A && p <= 0xFF20) || (p >= 0xFF3B && p <= 0xFF40) ||
        (p >= 0xFF5B && p <= 0xFF65)) {
        return false;                      // fullwidth punctuation
    }
    if (p < 0xFFF0) return true;
    if (p < 0x10000) return false;
    return !is_emoji(p);
}

}  // namespace unicode

namespace {

using unicode::is_emoji;
using unicode::is_word_char;

bool is_space(char32_t p) {
    return p == U' ' || p == U'\t' || p == U'\n' || p == U'\r' || p == 0xA0 ||
           (p >= 0x2000 && p <= 0x200A) || p == 0x3000;
}

char32_t ascii_lower(char32_t p) {
    if (p >= U'A' && p <= U'Z') return p + 32;
    if (p >= 0xC0 && p <= 0xDE && p != 0xD7) return p + 0x20;  // latin-1 capitals
    return p;
}

struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;  // exclusive
    EmoticonKind kind = EmoticonKind::western;
    char32_t mouth = 0;   // western only
};

constexpr char32_t kEyes[] = {U':', U';', U'='};
constexpr char32_t kEyesBoundary[] = {U'8', U'B', U'x', U'X'};
constexpr char32_t kNoses[] = {U'-', U'^', U'o', U'*', U'\''};
constexpr char32_t kMouths[] = {U')', U'(', U']', U'[', U'}', U'{', U'D', U'd', U'P',
                                U'p', U'b', U'O', U'o', U'/', U'\\', U'|', U'*', U's',
                                U'S', U'3', U'c', U'C', U'<', U'>', U'@', U'$'};
constexpr char32_t kKaomojiFace[] = {U'_', U'^', U'~', U'*', U';', U'-', U'<', U'>',
                                     U'=', U'+', U'|', U'@', U'\'', U'"', U'`', U'.'};

template <typename T, std::size_t N>
bool contains(const T (&list)[N], T value) {
    return std::find(std::begin(list), std::end(list), value) != std::end(list);
}

bool match_western(const std::vector<char32_t>& pts, std::size_t i, Span& span) {
    char32_t eyes = pts[i];
    bool letter_eyes = contains(kEyesBoundary, eyes);
    if (!contains(kEyes, eyes) && !letter_eyes) return false;
    if (letter_eyes && i > 0 && !is_space(pts[i - 1])) return false;
    std::size_t j = i + 1;
    if (!letter_eyes && j < pts.size() && pts[j] == U'\'') ++j;  // tears ":'("
    std::size_t after_nose = j;
    if (j < pts.size() && contains(kNoses, pts[j])) after_nose = j + 1;
    // Prefer the nose+mouth parse, fall back to mouth right after the eyes.
    for (std::size_t m : {after_nose, j}) {
        if (m >= pts.size() || m == i) continue;
        if (!contains(kMouths, pts[m])) continue;
        char32_t mouth = pts[m];
        // Letter eyes (x, 8, B) need a symbol nose or mouth; an all-alphanumeric
        // span like "xd" is a word, not a shape match. Catalogs still list it.
        if (letter_eyes && is_word_char(mouth) &&
            !(m > j && !is_word_char(pts[j]))) {
            continue;
        }
        std::size_t end = m + 1;
        while (end < pts.size() && pts[end] == mouth) ++end;  // ":)))"
        if (end < pts.size() && is_word_char(pts[end])) continue;
        // Reject bare eyes+letter pairs glued to a preceding word ("word:d").
        if (i > 0 && is_word_char(pts[i - 1]) && is_word_char(mouth) && m == i + 1) continue;
        span = Span{i, end, EmoticonKind::western, mouth};
        return true;
    }
    return false;
}

bool match_kaomoji(const std::vector<char32_t>& pts, std::size_t i, Span& span) {
    if (pts[i] != U'(') return false;
    std::size_t close = i + 2;
    std::size_t limit = std::min(pts.size(), i + 11);
    while (close < limit && pts[close] != U')') ++close;
    if (close >= limit || close >= pts.size() || pts[close] != U')') return false;
    bool has_face_char = false;
    std::size_t alnum_run = 0;
    for (std::size_t k = i + 1; k < close; ++k) {
        char32_t p = pts[k];
        if (is_space(p)) return false;
        if (contains(kKaomojiFace, p)) has_face_char = true;
        if (p < 0x80 && std::isalnum(static_cast<int>(p))) {
            if (++alnum_run > 2) return false;
        } else {
            alnum_run = 0;
        }
    }
    if (!has_face_char) return false;
    span = Span{i, close + 1, EmoticonKind::kaomoji, 0};
    return true;
}

bool match_emoji(const std::vector<char32_t>& pts, std::size_t i, Span& span) {
    if (!is_emoji(pts[i])) return false;
    std::size_t end = i + 1;
    while (end < pts.size()) {
        char32_t p = pts[end];
        if (is_emoji(p) || (p >= 0xFE00 && p <= 0xFE0F)) {
            ++end;
        } else if (p == 0x200D && end + 1 < pts.size() && is_emoji(pts[end + 1])) {
            end += 2;
        } else {
            break;
        }
    }
    span = Span{i, end, EmoticonKind::emoji, 0};
    return true;
}

bool match_emoticon_shape(const std::vector<char32_t>& pts, std::size_t i, Span& span) {
    return match_kaomoji(pts, i, span) || match_western(pts, i, span) ||
           match_emoji(pts, i, span);
}

bool url_starts_at(const std::vector<char32_t>& pts, std::size_t i) {
    if (i > 0 && is_word_char(pts[i - 1])) return false;
    static const std::u32string schemes[] = {U"http://", U"https://", U"www."};
    for (const auto& scheme : schemes) {
        if (i + scheme.size() > pts.size()) continue;
        bool match = true;
        for (std::size_t k = 0; k < scheme.size(); ++k) {
            if (ascii_lower(pts[i + k]) != scheme[k]) {
                match = false;
                break;
            }
        }
        if (match) return true;
    }
    return false;
}

std::vector<std::pair<std::size_t, std::size_t>> url_spans(const std::vector<char32_t>& pts) {
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    std::size_t i = 0;
    while (i < pts.size()) {
        if (url_starts_at(pts, i)) {
            std::size_t end = i;
            while (end < pts.size() && !is_space(pts[end])) ++end;
            spans.emplace_back(i, end);
            i = end;
        } else {
            ++i;
        }
    }
    return spans;
}

char32_t fold_apostrophe(char32_t p) { return p == 0x2019 ? U'\'' : p; }

Polarity mouth_polarity(char32_t mouth) {
    switch (mouth) {
        case U')': case U']': case U'D': case U'd':
            return Polarity::positive;
        case U'(': case U'[': case U'/': case U'\\':
            return Polarity::negative;
        default:
            return Polarity::unknown;
    }
}

}  // namespace

std::string to_string(Marker marker) {
    switch (marker) {
        case Marker::question: return "?";
        case Marker::exclaim: return "!";
        case Marker::via: return "via";
        case Marker::rt: return "rt";
        case Marker::at: return "@";
        case Marker::hash: return "#";
        case Marker::url: return "url";
    }
    return "?";
}

TokenizedDocument tokenize(const std::string& text) {
    TokenizedDocument doc;
    std::vector<char32_t> pts = unicode::decode_utf8(text);
    doc.char_length = pts.size();

    auto urls = url_spans(pts);
    std::size_t url_at = 0;

    std::u32string buffer;
    auto flush = [&doc, &buffer]() {
        if (buffer.empty()) return;
        // A sigil or apostrophe with nothing behind it is not a token.
        bool has_word = std::any_of(buffer.begin(), buffer.end(),
                                    [](char32_t p) { return is_word_char(p); });
        if (has_word) {
            std::string token = unicode::encode_utf8(buffer);
            doc.tokens.push_back(token);
            ++doc.term_freq[token];
        }
        buffer.clear();
    };

    std::size_t i = 0;
    while (i < pts.size()) {
        if (url_at < urls.size() && i == urls[url_at].first) {
            flush();
            doc.tokens.emplace_back("url");
            ++doc.term_freq["url"];
            i = urls[url_at].second;
            ++url_at;
            continue;
        }
        Span span;
        if (buffer.empty() && match_emoticon_shape(pts, i, span)) {
            i = span.end;
            continue;
        }
        char32_t p = fold_apostrophe(pts[i]);
        if (is_word_char(p)) {
            buffer += ascii_lower(p);
            ++i;
        } else if ((p == U'#' || p == U'@') && buffer.empty() && i + 1 < pts.size() &&
                   is_word_char(pts[i + 1])) {
            buffer += p;
            ++i;
        } else if (p == U'\'' && !buffer.empty() && i + 1 < pts.size() &&
                   is_word_char(pts[i + 1])) {
            buffer += p;
            ++i;
        } else {
            flush();
            ++i;
        }
    }
    flush();
    doc.word_count = doc.tokens.size();
    return doc;
}

std::vector<MarkerOccurrence> extract_markers(const std::string& text) {
    std::vector<char32_t> pts = unicode::decode_utf8(text);
    auto urls = url_spans(pts);
    auto in_url = [&urls](std::size_t i) {
        for (const auto& [b, e] : urls) {
            if (i >= b && i < e) return true;
        }
        return false;
    };

    std::vector<std::pair<std::size_t, Marker>> raw;
    for (const auto& [b, e] : urls) raw.emplace_back(b, Marker::url);

    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (in_url(i)) continue;
        switch (pts[i]) {
            case U'?': raw.emplace_back(i, Marker::question); break;
            case U'!': raw.emplace_back(i, Marker::exclaim); break;
            case U'@': raw.emplace_back(i, Marker::at); break;
            case U'#': raw.emplace_back(i, Marker::hash); break;
            default: break;
        }
    }

    // Standalone word matches for via/rt.
    std::size_t i = 0;
    while (i < pts.size()) {
        if (!is_word_char(pts[i]) || in_url(i)) {
            ++i;
            continue;
        }
        std::size_t start = i;
        std::u32string word;
        while (i < pts.size() && is_word_char(pts[i])) {
            word += ascii_lower(pts[i]);
            ++i;
        }
        if (word == U"via") raw.emplace_back(start, Marker::via);
        if (word == U"rt") raw.emplace_back(start, Marker::rt);
    }

    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first
                                  : static_cast<int>(a.second) < static_cast<int>(b.second);
    });

    std::vector<MarkerOccurrence> out;
    std::map<Marker, int> ordinals;
    for (const auto& [index, marker] : raw) {
        out.push_back(MarkerOccurrence{marker, ordinals[marker]++, index});
    }
    return out;
}

void EmoticonCatalogs::load_stream(std::istream& in, const std::string& origin) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t2 == std::string::npos) {
            throw std::runtime_error("emoticon catalog " + origin + ":" +
                                     std::to_string(line_no) + ": expected 3 tab-separated fields");
        }
        std::string surface = line.substr(0, t1);
        std::string kind_text = line.substr(t1 + 1, t2 - t1 - 1);
        std::string description = line.substr(t2 + 1);
        EmoticonKind kind;
        if (kind_text == "western") {
            kind = EmoticonKind::western;
        } else if (kind_text == "kaomoji") {
            kind = EmoticonKind::kaomoji;
        } else if (kind_text == "emoji") {
            kind = EmoticonKind::emoji;
        } else {
            throw std::runtime_error("emoticon catalog " + origin + ":" +
                                     std::to_string(line_no) + ": unknown kind " + kind_text);
        }
        entries[surface] = CatalogEntry{kind, description};
    }
}

void EmoticonCatalogs::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("emoticon catalog: cannot open " + path);
    load_stream(in, path);
}

std::vector<EmoticonHit> detect_emoticons(const std::string& text,
                                          const EmoticonCatalogs& catalogs) {
    std::vector<char32_t> pts = unicode::decode_utf8(text);
    auto urls = url_spans(pts);
    auto in_url = [&urls](std::size_t i) {
        for (const auto& [b, e] : urls) {
            if (i >= b && i < e) return true;
        }
        return false;
    };

    // Index catalog surfaces by first code point, longest first.
    std::map<char32_t, std::vector<std::pair<std::u32string, const CatalogEntry*>>> by_head;
    for (const auto& [surface, entry] : catalogs.entries) {
        std::vector<char32_t> spts = unicode::decode_utf8(surface);
        if (spts.empty()) continue;
        by_head[spts[0]].emplace_back(std::u32string(spts.begin(), spts.end()), &entry);
    }
    for (auto& [head, list] : by_head) {
        std::sort(list.begin(), list.end(),
                  [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
    }

    std::vector<EmoticonHit> hits;
    std::size_t i = 0;
    while (i < pts.size()) {
        if (in_url(i)) {
            ++i;
            continue;
        }
        // Catalog lookup, longest surface first.
        auto head = by_head.find(pts[i]);
        bool matched = false;
        if (head != by_head.end()) {
            for (const auto& [surface, entry] : head->second) {
                if (i + surface.size() > pts.size()) continue;
                if (!std::equal(surface.begin(), surface.end(), pts.begin() + i)) continue;
                if (is_word_char(surface.front()) && i > 0 && is_word_char(pts[i - 1])) continue;
                std::size_t end = i + surface.size();
                if (is_word_char(surface.back()) && end < pts.size() && is_word_char(pts[end])) {
                    continue;
                }
                EmoticonHit hit;
                hit.surface = unicode::encode_utf8(std::u32string(surface));
                hit.kind = entry->kind;
                hit.description = entry->description;
                hit.polarity = Polarity::neutral;
                if (entry->kind == EmoticonKind::western) {
                    Span span;
                    if (match_western(pts, i, span)) {
                        Polarity p = mouth_polarity(span.mouth);
                        if (p != Polarity::unknown) hit.polarity = p;
                    }
                }
                hits.push_back(std::move(hit));
                i = end;
                matched = true;
                break;
            }
        }
        if (matched) continue;
        Span span;
        if (match_emoticon_shape(pts, i, span)) {
            EmoticonHit hit;
            hit.surface = unicode::encode_utf8(
                std::u32string(pts.begin() + span.begin, pts.begin() + span.end));
            hit.kind = span.kind;
            hit.polarity = span.kind == EmoticonKind::western ? mouth_polarity(span.mouth)
                                                              : Polarity::unknown;
            if (hit.polarity == Polarity::positive || hit.polarity == Polarity::negative) {
                hit.score = 0.5;  // fixed fallback amplitude
            }
            hits.push_back(std::move(hit));
            i = span.end;
            continue;
        }
        ++i;
    }
    return hits;
}

WordSet load_easy_words_stream(std::istream& in) {
    WordSet words;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        std::string word = line.substr(begin, end - begin + 1);
        for (char& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        words.insert(word);
    }
    return words;
}

WordSet load_easy_words(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("easy words: cannot open " + path);
    return load_easy_words_stream(in);
}

ReadabilityCounts readability_counts(const std::string& text, const WordSet& easy_words) {
    std::vector<char32_t> pts = unicode::decode_utf8(text);
    ReadabilityCounts counts;

    // Sentences: segments between runs of .!? that contain any alphanumeric.
    std::size_t sentences = 0;
    bool segment_has_content = false;
    for (char32_t p : pts) {
        if (p == U'.' || p == U'!' || p == U'?') {
            if (segment_has_content) ++sentences;
            segment_has_content = false;
        } else if (is_word_char(p)) {
            segment_has_content = true;
        }
    }
    if (segment_has_content) ++sentences;
    counts.sentences = std::max<std::size_t>(sentences, 1);

    // Words: alphabetic runs, apostrophes allowed inside.
    std::size_t i = 0;
    while (i < pts.size()) {
        char32_t p = fold_apostrophe(pts[i]);
        bool alpha = is_word_char(p) && !(p >= U'0' && p <= U'9');
        if (!alpha) {
            ++i;
            continue;
        }
        std::u32string word;
        while (i < pts.size()) {
            char32_t q = fold_apostrophe(pts[i]);
            if (is_word_char(q) && !(q >= U'0' && q <= U'9')) {
                word += ascii_lower(q);
                ++i;
            } else if (q == U'\'' && i + 1 < pts.size() &&
                       is_word_char(fold_apostrophe(pts[i + 1]))) {
                word += q;
                ++i;
            } else {
                break;
            }
        }
        ++counts.words;
        std::string folded = unicode::encode_utf8(word);
        if (!easy_words.count(folded)) ++counts.difficult_words;

        // Syllables: maximal vowel runs, silent trailing e unless that
        // would leave zero, minimum one per word.
        auto is_vowel = [](char32_t c) {
            return c == U'a' || c == U'e' || c == U'i' || c == U'o' || c == U'u' || c == U'y';
        };
        std::size_t runs = 0;
        bool in_run = false;
        for (char32_t c : word) {
            if (is_vowel(c)) {
                if (!in_run) ++runs;
                in_run = true;
            } else {
                in_run = false;
            }
        }
        if (runs >= 2 && !word.empty() && word.back() == U'e') --runs;
        counts.syllables += std::max<std::size_t>(runs, 1);
    }
    return counts;
}

}  // namespace actionability
