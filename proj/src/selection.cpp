#include "actionability/selection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "actionability/features.hpp"
#include "actionability/metrics.hpp"
#include "actionability/rng.hpp"

namespace fs = std::filesystem;

namespace actionability {

std::vector<DomainKey> enumerate_generalizations(const DomainKey& domain) {
    if (!domain.fully_specified()) {
        throw std::invalid_argument("enumerate_generalizations: domain must be fully "
                                    "specified, got " + domain.display());
    }
    // Masks in descending specificity, fixed (c, l, s) order within a level.
    static const int masks[] = {0b111, 0b110, 0b101, 0b011, 0b100, 0b010, 0b001, 0b000};
    std::vector<DomainKey> out;
    out.reserve(8);
    for (int mask : masks) {
        DomainKey key;
        if (mask & 0b100) key.company = domain.company;
        if (mask & 0b010) key.language = domain.language;
        if (mask & 0b001) key.source = domain.source;
        out.push_back(std::move(key));
    }
    return out;
}

std::string to_string(Strategy strategy) {
    switch (strategy) {
        case Strategy::A: return "A";
        case Strategy::B: return "B";
        case Strategy::C: return "C";
        case Strategy::D: return "D";
    }
    return "D";
}

std::optional<Strategy> parse_strategy(const std::string& text) {
    if (text == "A") return Strategy::A;
    if (text == "B") return Strategy::B;
    if (text == "C") return Strategy::C;
    if (text == "D") return Strategy::D;
    return std::nullopt;
}

namespace {

std::vector<LabeledExample> extract_examples(const LabeledCorpus& corpus,
                                             const std::vector<std::size_t>& indices,
                                             const DomainResources& resources) {
    std::vector<LabeledExample> examples;
    examples.reserve(indices.size());
    for (std::size_t i : indices) {
        const Message& message = corpus.messages[i];
        examples.push_back(
            LabeledExample::from(extract(message, resources), message.label));
    }
    return examples;
}

}  // namespace

ModelCandidateSet train_candidates(const LabeledCorpus& train_corpus,
                                   const DomainKey& target,
                                   const GlobalResources& resources,
                                   const SelectionConfig& config,
                                   CandidateCache* cache) {
    if (!target.fully_specified()) {
        throw std::invalid_argument("train_candidates: target must be fully specified");
    }
    std::vector<std::size_t> target_indices = train_corpus.select(target);
    if (target_indices.empty()) {
        throw std::runtime_error("train_candidates: no training data for " +
                                 target.display());
    }

    ModelCandidateSet result;
    result.target = target;
    result.target_training_size = target_indices.size();

    CandidateCache local_cache;
    CandidateCache& shared = cache ? *cache : local_cache;

    std::uint64_t fold_seed = derive_seed(config.seed, "folds:" + target.machine());

    for (const DomainKey& source : enumerate_generalizations(target)) {
        auto [it, inserted] = shared.domains.try_emplace(source);
        CandidateCache::DomainData& data = it->second;
        if (inserted) {
            std::vector<std::size_t> pool = train_corpus.select(source);
            std::size_t actionable = 0;
            for (std::size_t i : pool) {
                if (train_corpus.messages[i].label == Label::actionable) ++actionable;
            }
            std::size_t non_actionable = pool.size() - actionable;
            if (actionable >= config.min_class_size &&
                non_actionable >= config.min_class_size) {
                auto [lex_a, lex_n] =
                    build_lexicons(train_corpus, source, config.lexicon_min_doc_freq);
                data.lex_actionable = std::make_shared<Lexicon>(std::move(lex_a));
                data.lex_non_actionable = std::make_shared<Lexicon>(std::move(lex_n));
                data.training_size = pool.size();

                DomainResources source_resources;
                source_resources.actionable = *data.lex_actionable;
                source_resources.non_actionable = *data.lex_non_actionable;
                source_resources.sentiment = &resources.sentiment;
                source_resources.catalogs = &resources.catalogs;
                source_resources.easy_words = &resources.easy_words;
                std::vector<LabeledExample> pool_examples =
                    extract_examples(train_corpus, pool, source_resources);

                for (Technique technique : config.techniques) {
                    for (std::size_t g = 0; g < config.grid.size(); ++g) {
                        Hyperparameters params = config.grid[g];
                        params.shuffle_seed = derive_seed(
                            config.seed, "train:" + source.machine() + ":" +
                                             to_string(technique) + ":" + std::to_string(g));
                        TrainedModel model =
                            train(technique, params, pool_examples, source);
                        data.models[{technique, g}] =
                            std::make_shared<TrainedModel>(std::move(model));
                    }
                }
                data.usable = true;
            }
        }
        if (!data.usable) continue;

        DomainResources source_resources;
        source_resources.actionable = *data.lex_actionable;
        source_resources.non_actionable = *data.lex_non_actionable;
        source_resources.sentiment = &resources.sentiment;
        source_resources.catalogs = &resources.catalogs;
        source_resources.easy_words = &resources.easy_words;
        std::vector<LabeledExample> target_examples =
            extract_examples(train_corpus, target_indices, source_resources);

        for (const auto& [key, model] : data.models) {
            Candidate candidate;
            candidate.source = source;
            candidate.technique = key.first;
            candidate.model = model;
            candidate.lex_actionable = data.lex_actionable;
            candidate.lex_non_actionable = data.lex_non_actionable;
            candidate.training_size = data.training_size;
            candidate.cv_f =
                fold_scored_f(*model, target_examples, config.cv_folds, fold_seed);
            result.candidates.push_back(std::move(candidate));
        }
    }

    if (result.candidates.empty()) {
        throw std::runtime_error("train_candidates: no generalized domain of " +
                                 target.display() + " meets the minimum training size");
    }
    return result;
}

namespace {

int technique_order(Technique technique) {
    const auto& order = all_techniques();
    return static_cast<int>(
        std::find(order.begin(), order.end(), technique) - order.begin());
}

bool candidate_preferred(const Candidate& a, const Candidate& b) {
    if (a.cv_f != b.cv_f) return a.cv_f > b.cv_f;
    if (a.source.specificity() != b.source.specificity()) {
        return a.source.specificity() > b.source.specificity();
    }
    if (a.training_size != b.training_size) return a.training_size > b.training_size;
    if (technique_order(a.technique) != technique_order(b.technique)) {
        return technique_order(a.technique) < technique_order(b.technique);
    }
    return a.source.machine() < b.source.machine();
}

}  // namespace

SelectedModel select(Strategy strategy, const ModelCandidateSet& candidates) {
    if (candidates.candidates.empty()) {
        throw std::runtime_error("select: empty candidate set for " +
                                 candidates.target.display());
    }
    DomainKey global;  // {}
    const Candidate* best = nullptr;
    for (const Candidate& candidate : candidates.candidates) {
        bool eligible = false;
        switch (strategy) {
            case Strategy::A:
                eligible = candidate.technique == Technique::logistic &&
                           candidate.source == candidates.target;
                break;
            case Strategy::B:
                eligible = candidate.technique == Technique::logistic &&
                           candidate.source == global;
                break;
            case Strategy::C:
                eligible = candidate.technique == Technique::logistic;
                break;
            case Strategy::D:
                eligible = true;
                break;
        }
        if (!eligible) continue;
        if (!best || candidate_preferred(candidate, *best)) best = &candidate;
    }
    if (!best) {
        throw std::runtime_error("select: strategy " + to_string(strategy) +
                                 " unavailable for " + candidates.target.display() +
                                 " (required candidate missing)");
    }
    SelectedModel selected;
    selected.target = candidates.target;
    selected.source = best->source;
    selected.technique = best->technique;
    selected.model = best->model;
    selected.lex_actionable = best->lex_actionable;
    selected.lex_non_actionable = best->lex_non_actionable;
    selected.strategy = strategy;
    selected.cv_f = best->cv_f;
    selected.training_size = best->training_size;
    return selected;
}

SelectionCensus selection_census(const std::vector<SelectedModel>& selections) {
    if (selections.empty()) {
        throw std::invalid_argument("selection_census: no selections");
    }
    SelectionCensus census;
    census.total = selections.size();
    for (const SelectedModel& selected : selections) {
        ++census.by_category[selected.source.category()];
        ++census.by_technique[selected.technique];
    }
    return census;
}

namespace {

const std::vector<std::string>& category_order() {
    static const std::vector<std::string> order = {
        "{c,l,s}", "{c,l}", "{c,s}", "{l,s}", "{c}", "{l}", "{s}", "{}",
    };
    return order;
}

std::string percent(std::size_t count, std::size_t total) {
    return format_fixed(100.0 * static_cast<double>(count) /
                        static_cast<double>(total), 1) + "%";
}

}  // namespace

std::string SelectionCensus::format() const {
    std::ostringstream out;
    out << "Domain Specificity Selection Comparison\n";
    TextTable domains({"Domain Category", "Times Selected", "Percent Selected"});
    std::vector<std::pair<std::string, std::size_t>> rows;
    for (const std::string& category : category_order()) {
        auto it = by_category.find(category);
        rows.emplace_back(category, it == by_category.end() ? 0 : it->second);
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (const auto& [category, count] : rows) {
        domains.add_row({category, std::to_string(count), percent(count, total)});
    }
    out << domains.aligned() << "\n";

    out << "Model Technique Selection Comparison\n";
    TextTable techniques({"Model Strategy", "Times Selected", "Percent Selected"});
    std::vector<std::pair<Technique, std::size_t>> trows;
    for (Technique technique : all_techniques()) {
        auto it = by_technique.find(technique);
        trows.emplace_back(technique, it == by_technique.end() ? 0 : it->second);
    }
    std::stable_sort(trows.begin(), trows.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (const auto& [technique, count] : trows) {
        techniques.add_row({display_name(technique), std::to_string(count),
                            percent(count, total)});
    }
    out << techniques.aligned();
    return out.str();
}

std::string SelectionCensus::tsv() const {
    std::ostringstream out;
    for (const std::string& category : category_order()) {
        auto it = by_category.find(category);
        std::size_t count = it == by_category.end() ? 0 : it->second;
        out << "category\t" << category << "\t" << count << "\n";
    }
    for (Technique technique : all_techniques()) {
        auto it = by_technique.find(technique);
        std::size_t count = it == by_technique.end() ? 0 : it->second;
        out << "technique\t" << to_string(technique) << "\t" << count << "\n";
    }
    return out.str();
}

namespace {

std::uint64_t fnv1a64_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("registry: cannot open " + path.string());
    std::uint64_t h = 1469598103934665603ull;
    char buffer[4096];
    while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buffer[i]);
            h *= 1099511628211ull;
        }
        if (!in) break;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buffer[24];
    std::snprintf(buffer, sizeof(buffer), "%016llx",
                  static_cast<unsigned long long>(value));
    return buffer;
}

std::string fmt_g17(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void save_selected(const SelectedModel& selected, const fs::path& path,
                   std::uint64_t stamp) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("registry: cannot write " + path.string());
    out << "#selected\tv1\n";
    out << "target\t" << selected.target.machine() << "\n";
    out << "strategy\t" << to_string(selected.strategy) << "\n";
    out << "cv_f\t" << fmt_g17(selected.cv_f) << "\n";
    out << "training_size\t" << selected.training_size << "\n";
    save_model(*selected.model, out);
    out << "[lexicon]\n";
    save_lexicon(*selected.lex_actionable, out, stamp);
    out << "[lexicon]\n";
    save_lexicon(*selected.lex_non_actionable, out, stamp);
    out << "[endfile]\n";
}

SelectedModel load_selected(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("registry: cannot open " + path.string());
    auto fail = [&path](const std::string& why) -> std::runtime_error {
        return std::runtime_error("registry: " + path.string() + ": " + why);
    };
    std::string line;
    if (!std::getline(in, line) || line != "#selected\tv1") {
        throw fail("missing selected-model header");
    }
    SelectedModel selected;
    while (std::getline(in, line)) {
        if (line == "#model\tv1") break;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) throw fail("malformed header row: " + line);
        std::string key = line.substr(0, tab);
        std::string value = line.substr(tab + 1);
        if (key == "target") {
            auto target = DomainKey::parse(value);
            if (!target) throw fail("bad target " + value);
            selected.target = *target;
        } else if (key == "strategy") {
            auto strategy = parse_strategy(value);
            if (!strategy) throw fail("bad strategy " + value);
            selected.strategy = *strategy;
        } else if (key == "cv_f") {
            selected.cv_f = std::stod(value);
        } else if (key == "training_size") {
            selected.training_size = std::stoull(value);
        }
    }
    if (!in) throw fail("truncated before model section");

    // load_model expects the header line it just consumed; re-feed the rest.
    std::ostringstream rest;
    rest << "#model\tv1\n" << in.rdbuf();
    std::istringstream model_in(rest.str());
    TrainedModel model = load_model(model_in, path.string());
    selected.model = std::make_shared<TrainedModel>(std::move(model));
    selected.source = selected.model->domain;
    selected.technique = selected.model->technique;

    std::vector<std::string> lexicon_blocks;
    std::string current;
    bool in_lexicon = false;
    bool terminated = false;
    while (std::getline(model_in, line)) {
        if (line == "[lexicon]") {
            if (in_lexicon) lexicon_blocks.push_back(current);
            current.clear();
            in_lexicon = true;
            continue;
        }
        if (line == "[endfile]") {
            if (in_lexicon) lexicon_blocks.push_back(current);
            terminated = true;
            break;
        }
        if (in_lexicon) current += line + "\n";
    }
    if (!terminated) throw fail("truncated lexicon section");
    if (lexicon_blocks.size() != 2) throw fail("expected 2 embedded lexicons");
    std::istringstream lex_a(lexicon_blocks[0]);
    std::istringstream lex_n(lexicon_blocks[1]);
    selected.lex_actionable = std::make_shared<Lexicon>(load_lexicon(lex_a));
    selected.lex_non_actionable = std::make_shared<Lexicon>(load_lexicon(lex_n));
    return selected;
}

}  // namespace

void persist_registry(const ModelRegistry& registry, const std::string& directory) {
    fs::path base(directory);
    fs::create_directories(base);
    fs::path final_dir = base / ("v" + std::to_string(registry.version));
    fs::path tmp_dir = base / ("v" + std::to_string(registry.version) + ".tmp");
    fs::remove_all(tmp_dir);
    fs::create_directories(tmp_dir);

    std::vector<std::pair<std::string, std::string>> manifest_rows;
    for (const auto& [target, selected] : registry.models) {
        std::string filename = target.url_safe() + ".model";
        save_selected(selected, tmp_dir / filename, registry.stamp);
        manifest_rows.emplace_back(target.machine(), filename);
    }

    std::ofstream manifest(tmp_dir / "manifest");
    if (!manifest) {
        throw std::runtime_error("registry: cannot write manifest in " + tmp_dir.string());
    }
    manifest << "#registry\tv1\n";
    manifest << "version\t" << registry.version << "\n";
    manifest << "stamp\t" << registry.stamp << "\n";
    manifest << "models\t" << manifest_rows.size() << "\n";
    for (const auto& [key, filename] : manifest_rows) {
        manifest << key << "\t" << filename << "\t"
                 << hex64(fnv1a64_file(tmp_dir / filename)) << "\n";
    }
    manifest.close();

    // Swap in the finished directory; readers see old or new, never a mix.
    fs::remove_all(final_dir);
    fs::rename(tmp_dir, final_dir);
}

ModelRegistry load_registry(const std::string& directory) {
    fs::path base(directory);
    fs::path dir;
    // Pick the highest version directory present.
    int best_version = -1;
    if (fs::exists(base)) {
        for (const auto& entry : fs::directory_iterator(base)) {
            if (!entry.is_directory()) continue;
            std::string name = entry.path().filename().string();
            if (name.size() > 1 && name[0] == 'v' &&
                name.find_first_not_of("0123456789", 1) == std::string::npos) {
                int version = std::stoi(name.substr(1));
                if (version > best_version) {
                    best_version = version;
                    dir = entry.path();
                }
            }
        }
    }
    if (best_version < 0) {
        throw std::runtime_error("registry: no version directory under " + directory);
    }

    std::ifstream manifest(dir / "manifest");
    if (!manifest) {
        throw std::runtime_error("registry: missing manifest in " + dir.string());
    }
    std::string line;
    if (!std::getline(manifest, line) || line.rfind("#registry\t", 0) != 0) {
        throw std::runtime_error("registry: corrupt manifest header in " + dir.string());
    }
    if (line != "#registry\tv1") {
        throw std::runtime_error("registry: incompatible manifest format " +
                                 line.substr(10) + " in " + dir.string());
    }

    ModelRegistry registry;
    std::size_t declared_models = 0;
    while (std::getline(manifest, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t tab = line.find('\t', start);
            if (tab == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
        if (fields[0] == "version") {
            registry.version = std::stoi(fields.at(1));
            if (registry.version != 1) {
                throw std::runtime_error("registry: incompatible version " + fields[1]);
            }
        } else if (fields[0] == "stamp") {
            registry.stamp = std::stoull(fields.at(1));
        } else if (fields[0] == "models") {
            declared_models = std::stoull(fields.at(1));
        } else if (fields.size() == 3) {
            auto target = DomainKey::parse(fields[0]);
            if (!target || !target->fully_specified()) {
                throw std::runtime_error("registry: bad manifest key " + fields[0]);
            }
            fs::path model_path = dir / fields[1];
            std::uint64_t expected = std::stoull(fields[2], nullptr, 16);
            if (!fs::exists(model_path)) {
                throw std::runtime_error("registry: missing model file " +
                                         model_path.string());
            }
            if (fnv1a64_file(model_path) != expected) {
                throw std::runtime_error("registry: hash mismatch for " +
                                         model_path.string());
            }
            registry.models[*target] = load_selected(model_path);
        } else {
            throw std::runtime_error("registry: malformed manifest row: " + line);
        }
    }
    if (registry.models.size() != declared_models) {
        throw std::runtime_error("registry: manifest declares " +
                                 std::to_string(declared_models) + " models, found " +
                                 std::to_string(registry.models.size()));
    }
    return registry;
}

}  // namespace actionability
