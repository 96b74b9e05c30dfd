#include "actionability/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "actionability/textproc.hpp"

namespace actionability {

namespace {

std::string format_score(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

}  // namespace

double TermStats::ndf(const std::string& term) const {
    if (doc_count == 0) return 0.0;
    auto it = term_doc_counts.find(term);
    if (it == term_doc_counts.end()) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(doc_count);
}

TermStats build_term_stats(const LabeledCorpus& corpus, const DomainKey& domain,
                           Label label) {
    TermStats stats;
    stats.domain = domain;
    stats.label = label;
    for (std::size_t i : corpus.select(domain)) {
        const Message& message = corpus.messages[i];
        if (message.label != label) continue;
        ++stats.doc_count;
        TokenizedDocument doc = tokenize(message.text);
        std::set<std::string> terms;
        for (const auto& [term, count] : doc.term_freq) {
            terms.insert(term);
            // Table-I-style bare forms alongside the sigiled token.
            if (term.size() > 1 && (term[0] == '#' || term[0] == '@')) {
                terms.insert(term.substr(1));
            }
        }
        for (const std::string& term : terms) {
            ++stats.term_doc_counts[term];
        }
    }
    if (stats.doc_count == 0) {
        throw std::runtime_error("build_term_stats: no documents for " + domain.display() +
                                 " / " + to_string(label));
    }
    if (!stats.term_doc_counts.empty()) {
        std::vector<std::size_t> counts;
        counts.reserve(stats.term_doc_counts.size());
        for (const auto& [term, count] : stats.term_doc_counts) {
            counts.push_back(count);
        }
        std::sort(counts.begin(), counts.end());
        std::size_t rank = static_cast<std::size_t>(
            std::ceil(0.95 * static_cast<double>(counts.size())));
        rank = std::max<std::size_t>(rank, 1);
        stats.p95_count = counts[rank - 1];
    }
    return stats;
}

std::map<std::string, double> compute_adf(const TermStats& stats) {
    if (stats.term_doc_counts.empty()) {
        throw std::runtime_error("compute_adf: empty term stats for " + stats.domain.display());
    }
    if (stats.p95_count == 0) {
        throw std::runtime_error("compute_adf: degenerate stats (p95 = 0) for " +
                                 stats.domain.display());
    }
    double denom = std::log1p(static_cast<double>(stats.p95_count));
    std::map<std::string, double> adf;
    for (const auto& [term, count] : stats.term_doc_counts) {
        adf[term] = std::log1p(static_cast<double>(count)) / denom;
    }
    return adf;
}

std::pair<Lexicon, Lexicon> compute_keyword_scores(
    const std::map<std::string, double>& adf_actionable,
    const std::map<std::string, double>& adf_non_actionable) {
    Lexicon actionable;
    actionable.label = Label::actionable;
    Lexicon non_actionable;
    non_actionable.label = Label::non_actionable;
    auto value = [](const std::map<std::string, double>& m, const std::string& term) {
        auto it = m.find(term);
        return it == m.end() ? 0.0 : it->second;
    };
    std::set<std::string> vocabulary;
    for (const auto& [term, score] : adf_actionable) vocabulary.insert(term);
    for (const auto& [term, score] : adf_non_actionable) vocabulary.insert(term);
    for (const std::string& term : vocabulary) {
        double a = value(adf_actionable, term);
        double n = value(adf_non_actionable, term);
        if (a > n) {
            actionable.scores[term] = a - n;
        } else if (n > a) {
            non_actionable.scores[term] = n - a;
        }
        // Ambivalent keywords (a == n) land in neither lexicon.
    }
    return {std::move(actionable), std::move(non_actionable)};
}

std::pair<Lexicon, Lexicon> build_lexicons(const LabeledCorpus& corpus,
                                           const DomainKey& domain,
                                           std::size_t min_doc_freq) {
    TermStats stats_a = build_term_stats(corpus, domain, Label::actionable);
    TermStats stats_n = build_term_stats(corpus, domain, Label::non_actionable);
    auto adf_a = compute_adf(stats_a);
    auto adf_n = compute_adf(stats_n);
    auto [lex_a, lex_n] = compute_keyword_scores(adf_a, adf_n);

    // Hapax floor: a term must be seen in at least min_doc_freq documents of
    // the class whose lexicon it would enter.
    auto apply_floor = [min_doc_freq](Lexicon& lexicon, const TermStats& stats) {
        for (auto it = lexicon.scores.begin(); it != lexicon.scores.end();) {
            auto count = stats.term_doc_counts.find(it->first);
            std::size_t n = count == stats.term_doc_counts.end() ? 0 : count->second;
            if (n < min_doc_freq) {
                it = lexicon.scores.erase(it);
            } else {
                ++it;
            }
        }
    };
    apply_floor(lex_a, stats_a);
    apply_floor(lex_n, stats_n);

    lex_a.domain = domain;
    lex_a.doc_count = stats_a.doc_count;
    lex_a.p95_count = stats_a.p95_count;
    lex_n.domain = domain;
    lex_n.doc_count = stats_n.doc_count;
    lex_n.p95_count = stats_n.p95_count;
    return {std::move(lex_a), std::move(lex_n)};
}

SentimentLexicon load_sentiment_lexicon_stream(std::istream& in,
                                               SentimentLoadReport* report) {
    SentimentLexicon lexicon;
    SentimentLoadReport local;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (fields.size() < 5) {
            std::size_t tab = line.find('\t', start);
            if (tab == std::string::npos) break;
            fields.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
        if (fields.size() < 5) {
            ++local.skipped;
            continue;
        }
        double pos_score = 0.0;
        double neg_score = 0.0;
        try {
            pos_score = std::stod(fields[2]);
            neg_score = std::stod(fields[3]);
        } catch (const std::exception&) {
            ++local.skipped;
            continue;
        }
        ++local.rows;
        std::istringstream terms(fields[4]);
        std::string term;
        while (terms >> term) {
            std::size_t hash = term.rfind('#');
            if (hash != std::string::npos) term.resize(hash);
            if (term.empty()) continue;
            for (char& c : term) {
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            }
            if (pos_score != 0.0) lexicon.positive[term] += pos_score;
            if (neg_score != 0.0) lexicon.negative[term] += neg_score;
        }
    }
    if (lexicon.positive.empty() && lexicon.negative.empty()) {
        throw std::runtime_error("sentiment lexicon: no usable rows");
    }
    if (report) *report = local;
    return lexicon;
}

SentimentLexicon load_sentiment_lexicon(const std::string& path,
                                        SentimentLoadReport* report) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("sentiment lexicon: cannot open " + path);
    return load_sentiment_lexicon_stream(in, report);
}

std::vector<RankedTerm> top_keywords(const std::map<std::string, double>& scores,
                                     std::size_t k) {
    std::vector<std::pair<std::string, double>> items(scores.begin(), scores.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    if (items.size() > k) items.resize(k);
    std::vector<RankedTerm> ranked;
    ranked.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        ranked.push_back(RankedTerm{i + 1, items[i].first, items[i].second});
    }
    return ranked;
}

std::string format_top_keywords(const std::vector<RankedTerm>& ranked) {
    std::ostringstream out;
    for (const RankedTerm& row : ranked) {
        out << row.rank << "\t" << row.term << "\t" << format_score(row.score) << "\n";
    }
    return out.str();
}

std::vector<ScatterRow> export_scatter(
    const std::map<std::string, double>& adf_actionable,
    const std::map<std::string, double>& adf_non_actionable) {
    std::set<std::string> vocabulary;
    for (const auto& [term, score] : adf_actionable) vocabulary.insert(term);
    for (const auto& [term, score] : adf_non_actionable) vocabulary.insert(term);
    auto value = [](const std::map<std::string, double>& m, const std::string& term) {
        auto it = m.find(term);
        return it == m.end() ? 0.0 : it->second;
    };
    std::vector<ScatterRow> rows;
    rows.reserve(vocabulary.size());
    for (const std::string& term : vocabulary) {
        rows.push_back(ScatterRow{term, value(adf_actionable, term),
                                  value(adf_non_actionable, term)});
    }
    return rows;
}

std::string format_scatter(const std::vector<ScatterRow>& rows) {
    std::ostringstream out;
    for (const ScatterRow& row : rows) {
        out << row.term << "\t" << format_score(row.adf_actionable) << "\t"
            << format_score(row.adf_non_actionable) << "\n";
    }
    return out.str();
}

void save_lexicon(const Lexicon& lexicon, std::ostream& out, std::uint64_t stamp) {
    out << "#lexicon\tdomain=" << lexicon.domain.machine() << "\tlabel="
        << to_string(lexicon.label) << "\tdoc_count=" << lexicon.doc_count
        << "\tp95_count=" << lexicon.p95_count << "\tstamp=" << stamp << "\n";
    std::vector<std::pair<std::string, double>> items(lexicon.scores.begin(),
                                                      lexicon.scores.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    for (const auto& [term, score] : items) {
        out << term << "\t" << format_score(score) << "\n";
    }
}

void save_lexicon_file(const Lexicon& lexicon, const std::string& path,
                       std::uint64_t stamp) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_lexicon: cannot open " + path);
    save_lexicon(lexicon, out, stamp);
}

Lexicon load_lexicon(std::istream& in) {
    Lexicon lexicon;
    std::string line;
    if (!std::getline(in, line) || line.rfind("#lexicon\t", 0) != 0) {
        throw std::runtime_error("load_lexicon: missing manifest line");
    }
    std::istringstream manifest(line);
    std::string field;
    while (std::getline(manifest, field, '\t')) {
        std::size_t eq = field.find('=');
        if (eq == std::string::npos) continue;
        std::string key = field.substr(0, eq);
        std::string value = field.substr(eq + 1);
        if (key == "domain") {
            auto parsed = DomainKey::parse(value);
            if (!parsed) throw std::runtime_error("load_lexicon: bad domain " + value);
            lexicon.domain = *parsed;
        } else if (key == "label") {
            auto parsed = parse_label(value);
            if (!parsed) throw std::runtime_error("load_lexicon: bad label " + value);
            lexicon.label = *parsed;
        } else if (key == "doc_count") {
            lexicon.doc_count = std::stoull(value);
        } else if (key == "p95_count") {
            lexicon.p95_count = std::stoull(value);
        }
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw std::runtime_error("load_lexicon: malformed row: " + line);
        }
        lexicon.scores[line.substr(0, tab)] = std::stod(line.substr(tab + 1));
    }
    return lexicon;
}

Lexicon load_lexicon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_lexicon: cannot open " + path);
    return load_lexicon(in);
}

}  // namespace actionability
