#include "actionability/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "actionability/rng.hpp"

namespace actionability {

namespace {

std::string lower_trim(std::string value) {
    std::size_t begin = value.find_first_not_of(" \t\r\n");
    std::size_t end = value.find_last_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    value = value.substr(begin, end - begin + 1);
    for (char& c : value) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return value;
}

bool parse_record(const std::string& line, Message& out) {
    nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
    if (!record.is_object()) return false;
    for (const char* key : {"id", "text", "company", "language", "source", "label"}) {
        if (!record.contains(key) || !record[key].is_string()) return false;
    }
    out.id = record["id"].get<std::string>();
    out.text = record["text"].get<std::string>();
    out.company = lower_trim(record["company"].get<std::string>());
    out.language = lower_trim(record["language"].get<std::string>());
    auto source = parse_source(lower_trim(record["source"].get<std::string>()));
    auto label = parse_label(lower_trim(record["label"].get<std::string>()));
    if (!source || !label) return false;
    out.source = *source;
    out.label = *label;
    out.ts.reset();
    if (record.contains("ts")) {
        if (!record["ts"].is_number_integer()) return false;
        out.ts = record["ts"].get<std::int64_t>();
    }
    if (out.id.empty() || out.text.empty() || out.company.empty() || out.language.empty()) {
        return false;
    }
    return true;
}

}  // namespace

std::vector<std::size_t> LabeledCorpus::select(const DomainKey& key) const {
    std::vector<std::size_t> out;
    for (const auto& [domain, indices] : index) {
        if (key.matches(domain)) {
            out.insert(out.end(), indices.begin(), indices.end());
        }
    }
    return out;
}

std::pair<std::size_t, std::size_t> LabeledCorpus::class_counts(const DomainKey& key) const {
    std::pair<std::size_t, std::size_t> counts{0, 0};
    auto it = index.find(key);
    if (it == index.end()) return counts;
    for (std::size_t i : it->second) {
        if (messages[i].label == Label::actionable) {
            ++counts.first;
        } else {
            ++counts.second;
        }
    }
    return counts;
}

LabeledCorpus LabeledCorpus::from_messages(std::vector<Message> messages) {
    LabeledCorpus corpus;
    corpus.messages = std::move(messages);
    for (std::size_t i = 0; i < corpus.messages.size(); ++i) {
        corpus.index[corpus.messages[i].domain()].push_back(i);
    }
    return corpus;
}

std::string IngestReport::summary() const {
    std::ostringstream out;
    out << "accepted\t" << accepted << "\n";
    out << "rejected\t" << rejected << "\n";
    out << "domains\t" << domain_counts.size() << "\n";
    for (const auto& [domain, counts] : domain_counts) {
        out << domain.machine() << "\t" << (counts.first + counts.second) << "\t"
            << counts.first << "\t" << counts.second << "\n";
    }
    return out.str();
}

LabeledCorpus ingest(std::istream& records, IngestReport& report) {
    report = IngestReport{};
    std::vector<Message> messages;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    while (std::getline(records, line)) {
        if (line.empty()) continue;
        Message message;
        if (!parse_record(line, message)) {
            ++report.rejected;
            continue;
        }
        if (!seen_ids.insert(message.id).second) {
            ++report.rejected;  // duplicate id, first occurrence wins
            continue;
        }
        ++report.accepted;
        messages.push_back(std::move(message));
    }
    if (messages.empty()) {
        throw std::runtime_error("ingest: no valid records");
    }
    LabeledCorpus corpus = LabeledCorpus::from_messages(std::move(messages));
    for (const auto& [domain, indices] : corpus.index) {
        report.domain_counts[domain] = corpus.class_counts(domain);
    }
    return corpus;
}

LabeledCorpus ingest_file(const std::string& path, IngestReport& report) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ingest: cannot open " + path);
    return ingest(in, report);
}

void write_corpus(const LabeledCorpus& corpus, std::ostream& out) {
    for (const Message& message : corpus.messages) {
        nlohmann::json record{
            {"id", message.id},
            {"text", message.text},
            {"company", message.company},
            {"language", message.language},
            {"source", to_string(message.source)},
            {"label", to_string(message.label)},
        };
        if (message.ts) record["ts"] = *message.ts;
        out << record.dump() << "\n";
    }
}

void write_corpus_file(const LabeledCorpus& corpus, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_corpus: cannot open " + path);
    write_corpus(corpus, out);
}

LabeledCorpus balance(const LabeledCorpus& corpus, std::uint64_t seed,
                      BalanceReport* report) {
    std::set<std::size_t> keep;
    BalanceReport local;
    for (const auto& [domain, indices] : corpus.index) {
        std::vector<std::size_t> actionable;
        std::vector<std::size_t> non_actionable;
        for (std::size_t i : indices) {
            (corpus.messages[i].label == Label::actionable ? actionable : non_actionable)
                .push_back(i);
        }
        if (actionable.empty() || non_actionable.empty()) {
            local.dropped_domains.push_back(domain);
            local.removed_messages += indices.size();
            continue;
        }
        std::size_t target = std::min(actionable.size(), non_actionable.size());
        Rng rng(derive_seed(seed, domain.machine()));
        for (auto* side : {&actionable, &non_actionable}) {
            if (side->size() > target) {
                rng.shuffle(*side);
                local.removed_messages += side->size() - target;
                side->resize(target);
            }
        }
        keep.insert(actionable.begin(), actionable.end());
        keep.insert(non_actionable.begin(), non_actionable.end());
    }
    std::vector<Message> kept;
    kept.reserve(keep.size());
    for (std::size_t i : keep) {
        kept.push_back(corpus.messages[i]);
    }
    if (report) *report = std::move(local);
    return LabeledCorpus::from_messages(std::move(kept));
}

SplitResult split(const LabeledCorpus& corpus, double eval_fraction,
                  std::uint64_t seed) {
    if (!(eval_fraction > 0.0 && eval_fraction < 1.0)) {
        throw std::invalid_argument("split: eval_fraction must lie in (0,1)");
    }
    SplitResult result;
    std::set<std::size_t> eval_set;
    for (const auto& [domain, indices] : corpus.index) {
        std::vector<std::size_t> cells[2];
        for (std::size_t i : indices) {
            cells[corpus.messages[i].label == Label::actionable ? 0 : 1].push_back(i);
        }
        if (cells[0].size() < 2 || cells[1].size() < 2) {
            result.train_only_domains.push_back(domain);
            continue;
        }
        for (int c = 0; c < 2; ++c) {
            auto& cell = cells[c];
            Rng rng(derive_seed(seed, domain.machine() + "#" + std::to_string(c)));
            rng.shuffle(cell);
            auto want = static_cast<std::size_t>(
                std::llround(static_cast<double>(cell.size()) * eval_fraction));
            want = std::clamp<std::size_t>(want, 1, cell.size() - 1);
            eval_set.insert(cell.begin(), cell.begin() + static_cast<std::ptrdiff_t>(want));
        }
    }
    std::vector<Message> train_messages;
    std::vector<Message> eval_messages;
    for (std::size_t i = 0; i < corpus.messages.size(); ++i) {
        (eval_set.count(i) ? eval_messages : train_messages).push_back(corpus.messages[i]);
    }
    result.train = LabeledCorpus::from_messages(std::move(train_messages));
    result.eval = LabeledCorpus::from_messages(std::move(eval_messages));
    return result;
}

namespace {

const std::vector<std::string>& default_background() {
    static const std::vector<std::string> words = {
        "the", "a", "to", "and", "of", "in", "is", "it", "you", "that", "was",
        "for", "on", "are", "with", "they", "at", "this", "have", "from", "one",
        "had", "word", "not", "what", "all", "were", "when", "your", "can",
        "said", "there", "use", "each", "which", "she", "how", "their", "will",
        "other", "about", "out", "many", "then", "them", "these", "some", "her",
        "would", "make", "like", "him", "into", "time", "has", "look", "two",
        "more", "write", "see", "number", "way", "could", "people", "than",
        "first", "water", "been", "call", "who", "oil", "its", "now", "find",
        "long", "down", "day", "did", "get", "come", "made", "may", "part",
    };
    return words;
}

std::string junk_word(Rng& rng) {
    std::string word = "zq";
    for (int i = 0; i < 4; ++i) {
        word += static_cast<char>('a' + rng.below(26));
    }
    return word;
}

}  // namespace

SyntheticScenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("scenario: cannot open " + path);
    nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw std::runtime_error("scenario: invalid JSON in " + path);
    }
    SyntheticScenario scenario;
    scenario.noise_rate = doc.value("noise_rate", 0.2);
    scenario.marker_rate = doc.value("marker_rate", 0.0);
    scenario.emoticon_rate = doc.value("emoticon_rate", 0.0);
    scenario.words_per_message = doc.value("words_per_message", std::size_t{8});
    scenario.planted_per_actionable = doc.value("planted_per_actionable", std::size_t{1});
    if (doc.contains("background_vocabulary")) {
        scenario.background_vocabulary =
            doc["background_vocabulary"].get<std::vector<std::string>>();
    }
    for (const auto& entry : doc.value("domains", nlohmann::json::array())) {
        SyntheticDomain domain;
        auto key = DomainKey::parse(entry.at("domain").get<std::string>());
        if (!key || !key->fully_specified()) {
            throw std::runtime_error("scenario: domains[].domain must be fully specified");
        }
        domain.domain = *key;
        domain.messages = entry.at("messages").get<std::size_t>();
        domain.population = entry.value("population", std::size_t{0});
        if (entry.contains("actionable_keywords")) {
            domain.actionable_keywords =
                entry["actionable_keywords"].get<std::vector<std::string>>();
        }
        scenario.domains.push_back(std::move(domain));
    }
    if (doc.contains("shared_keywords")) {
        for (auto it = doc["shared_keywords"].begin(); it != doc["shared_keywords"].end(); ++it) {
            auto key = DomainKey::parse(it.key());
            if (!key) throw std::runtime_error("scenario: bad shared_keywords key " + it.key());
            scenario.shared_keywords.emplace_back(
                *key, it.value().get<std::vector<std::string>>());
        }
    }
    return scenario;
}

LabeledCorpus generate_synthetic(const SyntheticScenario& scenario,
                                 std::uint64_t seed) {
    const auto& background = scenario.background_vocabulary.empty()
                                 ? default_background()
                                 : scenario.background_vocabulary;
    static const std::vector<std::string> emoticons = {":)", ":(", ":D", ":-("};

    std::vector<Message> messages;
    std::size_t domain_ordinal = 0;
    for (const SyntheticDomain& spec : scenario.domains) {
        if (!spec.domain.fully_specified()) {
            throw std::invalid_argument("generate_synthetic: domain not fully specified: " +
                                        spec.domain.display());
        }
        std::vector<std::string> planted = spec.actionable_keywords;
        for (const auto& [key, pool] : scenario.shared_keywords) {
            if (key.matches(spec.domain)) {
                planted.insert(planted.end(), pool.begin(), pool.end());
            }
        }
        if (planted.empty()) {
            throw std::invalid_argument("generate_synthetic: empty keyword pool for " +
                                        spec.domain.display());
        }
        Rng rng(derive_seed(seed, spec.domain.machine()));
        for (std::size_t i = 0; i < spec.messages; ++i) {
            bool actionable = i < (spec.messages + 1) / 2;
            std::vector<std::string> words;
            std::size_t slots = std::max<std::size_t>(scenario.words_per_message, 2);
            if (actionable) {
                std::size_t want = std::clamp<std::size_t>(scenario.planted_per_actionable,
                                                           1, std::max<std::size_t>(slots / 2, 1));
                for (std::size_t k = 0; k < want; ++k) {
                    words.push_back(planted[rng.below(planted.size())]);
                }
            }
            while (words.size() < slots) {
                if (rng.real() < scenario.noise_rate) {
                    // Noise slot: planted keywords leak into either class.
                    if (rng.below(2) == 0) {
                        words.push_back(planted[rng.below(planted.size())]);
                    } else {
                        words.push_back(junk_word(rng));
                    }
                } else {
                    words.push_back(background[rng.below(background.size())]);
                }
            }
            rng.shuffle(words);
            std::string text;
            if (rng.real() < scenario.marker_rate) {
                static const std::vector<std::string> prefixes = {"@user", "#topic", "rt",
                                                                  "via", "http://x.example"};
                text += prefixes[rng.below(prefixes.size())];
                text += " ";
            }
            for (std::size_t w = 0; w < words.size(); ++w) {
                if (w) text += " ";
                text += words[w];
            }
            if (rng.real() < scenario.marker_rate) {
                text += rng.below(2) == 0 ? "?" : "!";
            }
            if (rng.real() < scenario.emoticon_rate) {
                text += " " + emoticons[rng.below(emoticons.size())];
            }
            Message message;
            message.id = "s" + std::to_string(domain_ordinal) + "-" + std::to_string(i);
            message.text = std::move(text);
            message.company = *spec.domain.company;
            message.language = *spec.domain.language;
            message.source = *parse_source(*spec.domain.source);
            message.label = actionable ? Label::actionable : Label::non_actionable;
            messages.push_back(std::move(message));
        }
        ++domain_ordinal;
    }
    return LabeledCorpus::from_messages(std::move(messages));
}

std::map<DomainKey, std::size_t> scenario_populations(const SyntheticScenario& scenario) {
    std::map<DomainKey, std::size_t> populations;
    for (const SyntheticDomain& spec : scenario.domains) {
        populations[spec.domain] = spec.population ? spec.population : spec.messages;
    }
    return populations;
}

}  // namespace actionability
