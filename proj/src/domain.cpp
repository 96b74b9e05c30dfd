#include "actionability/domain.hpp"

#include <array>
#include <sstream>

namespace actionability {

std::string to_string(Label label) {
    return label == Label::actionable ? "actionable" : "non_actionable";
}

std::string to_string(Source source) {
    return source == Source::tw ? "tw" : "fb";
}

std::optional<Label> parse_label(const std::string& text) {
    if (text == "actionable") return Label::actionable;
    if (text == "non_actionable") return Label::non_actionable;
    return std::nullopt;
}

std::optional<Source> parse_source(const std::string& text) {
    if (text == "tw") return Source::tw;
    if (text == "fb") return Source::fb;
    return std::nullopt;
}

bool DomainKey::matches(const DomainKey& full) const {
    if (company && company != full.company) return false;
    if (language && language != full.language) return false;
    if (source && source != full.source) return false;
    return true;
}

bool DomainKey::subset_of(const DomainKey& other) const {
    if (company && company != other.company) return false;
    if (language && language != other.language) return false;
    if (source && source != other.source) return false;
    return true;
}

std::string DomainKey::category() const {
    std::string out = "{";
    const char* sep = "";
    if (company) { out += sep; out += "c"; sep = ","; }
    if (language) { out += sep; out += "l"; sep = ","; }
    if (source) { out += sep; out += "s"; sep = ","; }
    out += "}";
    return out;
}

std::string DomainKey::display() const {
    std::string out = "{";
    out += company ? *company : "*";
    out += ",";
    out += language ? *language : "*";
    out += ",";
    out += source ? *source : "*";
    out += "}";
    return out;
}

std::string DomainKey::machine() const {
    std::string out = company ? *company : "-";
    out += ",";
    out += language ? *language : "-";
    out += ",";
    out += source ? *source : "-";
    return out;
}

std::optional<DomainKey> DomainKey::parse(const std::string& text) {
    std::array<std::string, 3> parts;
    std::size_t field = 0;
    for (char c : text) {
        if (c == ',') {
            if (++field >= parts.size()) return std::nullopt;
        } else {
            parts[field] += c;
        }
    }
    if (field != 2) return std::nullopt;
    DomainKey key;
    if (!parts[0].empty() && parts[0] != "-") key.company = parts[0];
    if (!parts[1].empty() && parts[1] != "-") key.language = parts[1];
    if (!parts[2].empty() && parts[2] != "-") key.source = parts[2];
    return key;
}

namespace {

void append_url_safe(std::string& out, const std::optional<std::string>& part) {
    if (!part) {
        out += '-';
        return;
    }
    static const char hex[] = "0123456789ABCDEF";
    for (unsigned char c : *part) {
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 0xF];
        }
    }
}

}  // namespace

std::string DomainKey::url_safe() const {
    std::string out;
    append_url_safe(out, company);
    out += "__";
    append_url_safe(out, language);
    out += "__";
    append_url_safe(out, source);
    return out;
}

std::size_t DomainKeyHash::operator()(const DomainKey& key) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const std::optional<std::string>& part) {
        h ^= part ? 0x9Eull : 0x3Cull;
        h *= 1099511628211ull;
        if (part) {
            for (unsigned char c : *part) {
                h ^= c;
                h *= 1099511628211ull;
            }
        }
    };
    mix(key.company);
    mix(key.language);
    mix(key.source);
    return static_cast<std::size_t>(h);
}

}  // namespace actionability
