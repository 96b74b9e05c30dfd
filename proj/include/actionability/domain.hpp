#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace actionability {

enum class Label { actionable, non_actionable };

enum class Source { tw, fb };

std::string to_string(Label label);
std::string to_string(Source source);
std::optional<Label> parse_label(const std::string& text);
std::optional<Source> parse_source(const std::string& text);

/// A (possibly generalized) domain: any subset of {company, language, source}.
/// Absent attributes mean "pooled over all values of that attribute".
struct DomainKey {
    std::optional<std::string> company;
    std::optional<std::string> language;
    std::optional<std::string> source;

    bool fully_specified() const {
        return company.has_value() && language.has_value() && source.has_value();
    }

    /// Number of present attributes, 0..3.
    int specificity() const {
        return (company ? 1 : 0) + (language ? 1 : 0) + (source ? 1 : 0);
    }

    /// True when every attribute present here matches `full`.
    /// A generalized key matches all fully specified keys it spans.
    bool matches(const DomainKey& full) const;

    /// Attribute-subset relation: present attributes form a subset of
    /// `other`'s and agree on values. Membership test for P(other).
    bool subset_of(const DomainKey& other) const;

    /// Category name by present attributes: "{c,l,s}", "{c,l}", ..., "{}".
    std::string category() const;

    /// Display form, e.g. "{acme,en,tw}" or "{acme,*,tw}".
    std::string display() const;

    /// Machine form "company,language,source" with "-" for absent parts.
    std::string machine() const;
    static std::optional<DomainKey> parse(const std::string& text);

    /// Filename-safe encoding (percent-escapes anything outside [a-z0-9]).
    std::string url_safe() const;

    friend auto operator<=>(const DomainKey&, const DomainKey&) = default;
    friend bool operator==(const DomainKey&, const DomainKey&) = default;
};

struct DomainKeyHash {
    std::size_t operator()(const DomainKey& key) const;
};

struct Message {
    std::string id;
    std::string text;
    std::string company;
    std::string language;
    Source source = Source::tw;
    Label label = Label::non_actionable;
    std::optional<std::int64_t> ts;

    DomainKey domain() const {
        return DomainKey{company, language, to_string(source)};
    }
};

}  // namespace actionability
